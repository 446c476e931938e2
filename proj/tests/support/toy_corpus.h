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

// Small synthetic corpora with enough structure for language-model tests.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "draftrev/random.h"

namespace draftrev::testing {

// Sentences from a tiny academic-sounding grammar.
inline std::vector<std::string> ToyCorpus(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> kSubj = {
      "the model",   "our method",   "the proposed system", "this approach",
      "the baseline", "a simple parser", "the network",      "we"};
  static const std::vector<std::string> kVerb = {
      "improves", "reduces", "predicts", "learns", "outperforms", "uses",
      "generates", "evaluates", "requires", "achieves"};
  static const std::vector<std::string> kObj = {
      "the accuracy",     "the error rate",  "new sentences",
      "the training data", "long documents", "the final results",
      "a large corpus",   "the bleu scores", "strong performance"};
  static const std::vector<std::string> kTail = {
      "",
      "on the test set",
      "in all cases",
      "with fewer parameters",
      "for each language",
      "by a large margin",
      "when the data is noisy",
      "as shown in the table"};
  Rng rng(seed);
  const auto pick = [&](const std::vector<std::string>& xs) -> const std::string& {
    return xs[rng.Below(xs.size())];
  };
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = pick(kSubj) + " " + pick(kVerb) + " " + pick(kObj);
    const auto& tail = pick(kTail);
    if (!tail.empty()) s += " " + tail;
    s += " .";
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
    out.push_back(std::move(s));
  }
  return out;
}

// Fixed-length sentences of distinct pseudo-words, for noising statistics.
inline std::vector<std::string> UniformCorpus(std::size_t sentences,
                                              std::size_t length,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(sentences);
  for (std::size_t i = 0; i < sentences; ++i) {
    std::string s;
    for (std::size_t t = 0; t < length; ++t) {
      if (t) s += ' ';
      s += "w" + std::to_string(rng.Below(5000));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace draftrev::testing
