//
// Copyright 2026 The draftrev Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Minimal submissions for each worker-scoring criterion: one that triggers
// it and a close neighbor that does not.

#pragma once

#include <string>
#include <vector>

#include "draftrev/lexicon.h"
#include "draftrev/quality.h"

namespace draftrev::testing {

// Three distinct English answers, all ending with ".", no mask, far from the
// MT output. Triggers exactly all_terminal and all_english (score 2).
inline quality::WorkerSubmission BaselineSubmission() {
  quality::WorkerSubmission s;
  s.worker_id = "w";
  s.answers = {"We propose a new model for this task.",
               "Our results show a clear gain over the baseline.",
               "The method works well on long documents."};
  s.seconds_worked = 300;
  // No character in common with any answer, longer than all of them.
  s.mt_references = {std::string(60, '#'), std::string(60, '#'),
                     std::string(60, '#')};
  return s;
}

inline Dictionary WorkerEnglish() {
  Dictionary d;
  for (const char* w :
       {"we", "propose", "a", "new", "model", "for", "this", "task", "our",
        "results", "show", "clear", "gain", "over", "the", "baseline",
        "method", "works", "well", "on", "long", "documents", "it", "is",
        "good", "very", "and", "data", "many", "words", "here", "used"}) {
    d.Add(w);
  }
  return d;
}

// Text with its first d characters replaced by '%', a character that
// never occurs in the answers, so the distance is exactly d.
inline std::string AtDistance(const std::string& text, std::size_t d) {
  std::string out = text;
  for (std::size_t i = 0; i < d && i < out.size(); ++i) out[i] = '%';
  return out;
}

struct CriterionCase {
  std::string id;
  quality::WorkerSubmission triggering;
  quality::WorkerSubmission neighbor;
};

inline std::vector<CriterionCase> CriterionCases() {
  namespace c = quality::criteria;
  const auto base = BaselineSubmission();
  std::vector<CriterionCase> cases;
  const auto add = [&](std::string_view id, auto&& trigger, auto&& keep) {
    CriterionCase k{std::string(id), base, base};
    trigger(k.triggering);
    keep(k.neighbor);
    cases.push_back(std::move(k));
  };
  using Sub = quality::WorkerSubmission;

  add(c::kTime, [](Sub& s) { s.seconds_worked = 119; },
      [](Sub& s) { s.seconds_worked = 121; });
  add(c::kAllShort,
      [](Sub& s) { s.answers = {"We propose models.", "Results show gains.", "Method works well."}; },
      [](Sub& s) { s.answers = {"We propose new models.", "Results show gains.", "Method works well."}; });
  add(c::kNoTerminal,
      [](Sub& s) {
        for (auto& a : s.answers) a.pop_back();
      },
      [](Sub& s) {
        s.answers[1].pop_back();
        s.answers[2].pop_back();
      });
  add(c::kIdentical, [](Sub& s) { s.answers[1] = s.answers[0]; },
      [](Sub& s) { s.answers[1] = s.answers[0] + " It is good."; });
  add(c::kJapanese, [](Sub& s) { s.answers[2] = "The method works well on long の documents."; },
      [](Sub& s) { s.answers[2] = "The method works well on long documents ."; });
  add(c::kNoEnglish,
      [](Sub& s) {
        s.answers = {"Xqz vrb plk nnt grz.", "Qwv zzt brk pln mmr.", "Jjk vvp trq wwx ssd."};
      },
      [](Sub& s) {
        s.answers = {"Xqz vrb plk nnt grz.", "Qwv zzt brk pln mmr.", "The method works well on long documents."};
      });
  add(c::kSomeShort, [](Sub& s) { s.answers[0] = "We propose models."; },
      [](Sub& s) { s.answers[0] = "We propose new models."; });
  add(c::kFewTypes, [](Sub& s) { s.answers[0] = "model data words data."; },
      [](Sub& s) { s.answers[0] = "model data words here."; });
  add(c::kLd20To30,
      [](Sub& s) { s.mt_references[0] = AtDistance(s.answers[0], 25); },
      [](Sub& s) { s.mt_references[0] = AtDistance(s.answers[0], 31); });
  add(c::kLd10To20,
      [](Sub& s) { s.mt_references[0] = AtDistance(s.answers[0], 15); },
      [](Sub& s) { s.mt_references[0] = AtDistance(s.answers[0], 20); });
  add(c::kLdLe10,
      [](Sub& s) { s.mt_references[0] = AtDistance(s.answers[0], 10); },
      [](Sub& s) { s.mt_references[0] = AtDistance(s.answers[0], 11); });
  add(c::kAllTerminal, [](Sub& s) { s.answers[2].back() = '?'; },
      [](Sub& s) { s.answers[2].pop_back(); });
  add(c::kHasMask, [](Sub& s) { s.answers[1] = "Our results show a <*> over the baseline."; },
      [](Sub& s) { s.answers[1] = "Our results show a < * > over the baseline."; });
  add(c::kAllEnglish, [](Sub&) {},
      [](Sub& s) { s.answers[2] = "Xqz vrb plk nnt grz."; });
  return cases;
}

// Composite examples: expected (score, accepted).
inline quality::WorkerSubmission ScoreThreeExample() {
  auto s = BaselineSubmission();
  s.answers[1] = "Our results show a <*> over the baseline.";
  return s;
}

inline quality::WorkerSubmission ScoreZeroExample() {
  auto s = BaselineSubmission();
  s.mt_references[0] = AtDistance(s.answers[0], 15);
  s.mt_references[1] = AtDistance(s.answers[1], 25);
  return s;
}

}  // namespace draftrev::testing
