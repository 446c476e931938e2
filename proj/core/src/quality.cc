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

#include "draftrev/quality.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "draftrev/error.h"
#include "draftrev/levenshtein.h"
#include "draftrev/text.h"

namespace draftrev::quality {

namespace {

std::string MatchCase(const std::string& original, std::string replacement) {
  const auto is_upper = [](char c) { return c >= 'A' && c <= 'Z'; };
  const auto is_lower = [](char c) { return c >= 'a' && c <= 'z'; };
  const bool all_upper =
      original.size() > 1 && std::none_of(original.begin(), original.end(), is_lower);
  if (all_upper) {
    for (char& c : replacement) {
      if (is_lower(c)) c = static_cast<char>(c - 'a' + 'A');
    }
  } else if (!original.empty() && is_upper(original[0]) && !replacement.empty() &&
             is_lower(replacement[0])) {
    replacement[0] = static_cast<char>(replacement[0] - 'a' + 'A');
  }
  return replacement;
}

}  // namespace

SpellChecker::SpellChecker(const Dictionary& dictionary) {
  if (dictionary.empty()) throw ConfigError("spell-check dictionary is empty");
  for (const auto& [word, freq] : dictionary.entries()) {
    if (!IsAlphabeticToken(word)) continue;
    const auto id = static_cast<std::uint32_t>(words_.size());
    words_.push_back(word);
    freqs_.push_back(freq);
    known_.emplace(word, id);
    for (const auto& d : Deletes(word)) index_[d].push_back(id);
  }
}

std::vector<std::string> SpellChecker::Deletes(const std::string& word) {
  std::set<std::string> out{word};
  for (int round = 0; round < kMaxDistance; ++round) {
    std::set<std::string> next;
    for (const auto& w : out) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::string d = w;
        d.erase(i, 1);
        next.insert(std::move(d));
      }
    }
    out.insert(next.begin(), next.end());
  }
  return {out.begin(), out.end()};
}

std::optional<std::string> SpellChecker::Suggest(std::string_view token) const {
  const std::string lower = ToLowerAscii(token);
  if (known_.contains(lower)) return std::nullopt;
  // best candidate per distance: (freq desc, word asc)
  std::array<std::optional<std::uint32_t>, kMaxDistance + 1> best;
  std::set<std::uint32_t> seen;
  for (const auto& d : Deletes(lower)) {
    auto it = index_.find(d);
    if (it == index_.end()) continue;
    for (std::uint32_t id : it->second) {
      if (!seen.insert(id).second) continue;
      const auto& cand = words_[id];
      const auto lhs = std::string_view(lower);
      const auto rhs = std::string_view(cand);
      const std::size_t dist = EditDistance<char>(
          std::span<const char>(lhs.data(), lhs.size()),
          std::span<const char>(rhs.data(), rhs.size()));
      if (dist == 0 || dist > kMaxDistance) continue;
      auto& slot = best[dist];
      if (!slot || freqs_[id] > freqs_[*slot] ||
          (freqs_[id] == freqs_[*slot] && cand < words_[*slot])) {
        slot = id;
      }
    }
  }
  for (std::size_t dist = 1; dist <= kMaxDistance; ++dist) {
    if (best[dist]) return MatchCase(std::string(token), words_[*best[dist]]);
  }
  return std::nullopt;
}

SpellCheckResult SpellChecker::Check(const Sentence& s) const {
  SpellCheckResult result;
  std::vector<std::string> tokens = s.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (!IsAlphabeticToken(tok)) continue;
    if (auto fix = Suggest(tok)) {
      result.corrections.push_back({i, tok, *fix});
      tokens[i] = *fix;
    }
  }
  result.corrected_text = Join(tokens);
  return result;
}

SpellCheckResult SpellCheck(const Sentence& s, const Dictionary& dictionary) {
  return SpellChecker(dictionary).Check(s);
}

std::string ApplyCorrections(const Sentence& s,
                             std::span<const Correction> corrections) {
  std::vector<std::string> tokens = s.tokens();
  for (const auto& c : corrections) {
    if (c.index >= tokens.size() || tokens[c.index] != c.original) {
      throw DataError("correction does not match the sentence");
    }
    tokens[c.index] = c.replacement;
  }
  return Join(tokens);
}

void FilterConfig::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
  if (stopwords.contains(mask_token)) {
    throw ConfigError("the mask token must not be a stopword");
  }
}

std::vector<std::string> ContentTokenSet(const Sentence& s,
                                         const FilterConfig& cfg) {
  std::set<std::string> out;
  for (const auto& tok : s.tokens()) {
    if (tok == cfg.mask_token) continue;
    if (cfg.drop_punctuation && IsPunctuationToken(tok)) continue;
    std::string lower = ToLowerAscii(tok);
    if (cfg.stopwords.contains(lower)) continue;
    out.insert(std::move(lower));
  }
  return {out.begin(), out.end()};
}

std::optional<double> OverlapCoefficient(const Sentence& x, const Sentence& y,
                                         const FilterConfig& cfg) {
  const auto ux = ContentTokenSet(x, cfg);
  const auto uy = ContentTokenSet(y, cfg);
  if (ux.empty() || uy.empty()) return std::nullopt;
  std::vector<std::string> common;
  std::set_intersection(ux.begin(), ux.end(), uy.begin(), uy.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) /
         static_cast<double>(std::min(ux.size(), uy.size()));
}

PairFilterResult FilterPairs(std::span<const DraftPair> pairs,
                             const FilterConfig& cfg,
                             const Dictionary& dictionary) {
  cfg.Validate();
  std::optional<SpellChecker> checker;
  if (!dictionary.empty()) checker.emplace(dictionary);
  PairFilterResult result;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pair = pairs[i];
    const Sentence checked =
        checker ? Sentence(checker->Check(pair.draft()).corrected_text)
                : pair.draft();
    const auto coef = OverlapCoefficient(checked, pair.reference(), cfg);
    if (!coef) {
      result.removed.push_back({pair, "undefined_overlap", std::nullopt});
      result.removed_index.push_back(i);
    } else if (*coef < cfg.alpha) {
      result.removed.push_back({pair, "low_overlap", coef});
      result.removed_index.push_back(i);
    } else {
      result.kept.push_back(pair);
      result.kept_index.push_back(i);
    }
  }
  return result;
}

bool ContainsJapanese(std::string_view text) {
  const auto cps = DecodeUtf8(text);
  if (!cps) return false;
  return std::any_of(cps->begin(), cps->end(), [](char32_t cp) {
    return IsHiragana(cp) || IsKatakana(cp) || IsCjkIdeograph(cp);
  });
}

bool IsEnglish(std::string_view text, const Dictionary& dictionary,
               double threshold) {
  if (!IsValidUtf8(text) || ContainsJapanese(text)) return false;
  std::size_t alpha = 0;
  std::size_t hits = 0;
  for (const auto& tok : Tokenize(text)) {
    if (!IsAlphabeticToken(tok)) continue;
    ++alpha;
    if (dictionary.Contains(tok)) ++hits;
  }
  if (alpha == 0) return false;
  return static_cast<double>(hits) >= threshold * static_cast<double>(alpha);
}

bool WorkerVerdict::Triggered(std::string_view id) const {
  return std::any_of(triggered.begin(), triggered.end(),
                     [&](const TriggeredCriterion& t) { return t.id == id; });
}

std::size_t CountWords(std::string_view answer) {
  if (!IsValidUtf8(answer)) return 0;
  const auto tokens = Tokenize(answer);
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(),
                    [](const std::string& t) { return IsWordToken(t); }));
}

std::size_t CountWordTypes(std::string_view answer) {
  if (!IsValidUtf8(answer)) return 0;
  std::set<std::string> types;
  for (const auto& tok : Tokenize(answer)) {
    if (IsWordToken(tok)) types.insert(ToLowerAscii(tok));
  }
  return types.size();
}

bool EndsWithTerminal(std::string_view answer) {
  const std::string trimmed = CollapseWhitespace(answer);
  return !trimmed.empty() && (trimmed.back() == '.' || trimmed.back() == '?');
}

WorkerVerdict ScoreWorker(const WorkerSubmission& sub,
                          const Dictionary& english,
                          const WorkerScoringConfig& cfg) {
  WorkerVerdict v;
  const auto reject = [&](std::string_view id, std::optional<std::size_t> ans =
                                                   std::nullopt) {
    v.triggered.push_back({std::string(id), true, 0.0, ans});
  };
  const auto points = [&](std::string_view id, double delta,
                          std::optional<std::size_t> ans = std::nullopt) {
    v.triggered.push_back({std::string(id), false, delta, ans});
    v.score += delta;
  };

  const auto& a = sub.answers;
  std::array<std::size_t, 3> words{};
  std::array<std::size_t, 3> types{};
  std::array<bool, 3> terminal{};
  std::array<bool, 3> english_ok{};
  std::array<std::size_t, 3> ld{};
  for (std::size_t i = 0; i < 3; ++i) {
    words[i] = CountWords(a[i]);
    types[i] = CountWordTypes(a[i]);
    terminal[i] = EndsWithTerminal(a[i]);
    english_ok[i] = IsEnglish(a[i], english, cfg.english_threshold);
    ld[i] = LevenshteinChars(a[i], sub.mt_references[i]);
  }
  const auto any = [](const std::array<bool, 3>& xs) {
    return xs[0] || xs[1] || xs[2];
  };
  const auto all = [](const std::array<bool, 3>& xs) {
    return xs[0] && xs[1] && xs[2];
  };
  std::array<bool, 3> short_answer{};
  std::array<bool, 3> few_types{};
  std::array<bool, 3> japanese{};
  std::array<bool, 3> has_mask{};
  for (std::size_t i = 0; i < 3; ++i) {
    short_answer[i] = words[i] < cfg.min_words;
    few_types[i] = types[i] < cfg.min_types;
    japanese[i] = ContainsJapanese(a[i]);
    has_mask[i] = a[i].find(kMaskToken) != std::string::npos;
  }
  bool identical = false;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      identical |= CollapseWhitespace(a[i]) == CollapseWhitespace(a[j]);
    }
  }

  if (sub.seconds_worked < cfg.min_seconds) reject(criteria::kTime);
  if (all(short_answer)) reject(criteria::kAllShort);
  if (!any(terminal)) reject(criteria::kNoTerminal);
  if (identical) reject(criteria::kIdentical);
  if (any(japanese)) reject(criteria::kJapanese);
  if (!any(english_ok)) reject(criteria::kNoEnglish);
  if (any(short_answer)) points(criteria::kSomeShort, -2.0);
  if (any(few_types)) points(criteria::kFewTypes, -2.0);
  // Band edges: <= 10 rejects, (10, 20) -> -1.5, [20, 30] -> -0.5.
  for (std::size_t i = 0; i < 3; ++i) {
    if (ld[i] >= 20 && ld[i] <= 30) points(criteria::kLd20To30, -0.5, i);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (ld[i] > 10 && ld[i] < 20) points(criteria::kLd10To20, -1.5, i);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (ld[i] <= 10) reject(criteria::kLdLe10, i);
  }
  if (all(terminal)) points(criteria::kAllTerminal, 1.0);
  if (any(has_mask)) points(criteria::kHasMask, 1.0);
  if (all(english_ok)) points(criteria::kAllEnglish, 1.0);

  const bool rejected =
      std::any_of(v.triggered.begin(), v.triggered.end(),
                  [](const TriggeredCriterion& t) { return t.reject; });
  v.accepted = !rejected && v.score >= 0.0;
  return v;
}

}  // namespace draftrev::quality
