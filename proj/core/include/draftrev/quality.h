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

// Crowdwork quality control: worker scoring, spell checking, language
// heuristics and the unigram overlap filter for draft/reference pairs.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "draftrev/corpus.h"
#include "draftrev/lexicon.h"

namespace draftrev::quality {

// ---------------------------------------------------------------------------
// Spell checking

struct Correction {
  std::size_t index = 0;  // token position
  std::string original;
  std::string replacement;
};

struct SpellCheckResult {
  std::string corrected_text;  // corrected tokens joined by single spaces
  std::vector<Correction> corrections;
};

// Dictionary index for edit-distance lookups. Candidates within distance 2
// are found through shared deletion variants and then verified exactly.
class SpellChecker {
 public:
  static constexpr int kMaxDistance = 2;

  // Throws ConfigError if the dictionary is empty.
  explicit SpellChecker(const Dictionary& dictionary);

  // Best replacement for an unknown word, nullopt if the word is known or
  // nothing lies within kMaxDistance.
  std::optional<std::string> Suggest(std::string_view token) const;
  SpellCheckResult Check(const Sentence& s) const;

 private:
  static std::vector<std::string> Deletes(const std::string& word);

  std::vector<std::string> words_;
  std::vector<std::uint64_t> freqs_;
  std::unordered_map<std::string, std::uint32_t> known_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> index_;
};

// Replaces every alphabetic token missing from `dictionary` with the most
// frequent dictionary word at edit distance 1, or failing that 2 (ties go
// to the alphabetically first). Capitalization of the original is carried
// over. Mask tokens, numbers and punctuation are never touched. Throws
// ConfigError if the dictionary is empty.
SpellCheckResult SpellCheck(const Sentence& s, const Dictionary& dictionary);

// Applies `corrections` to the tokens of `s` and joins them.
std::string ApplyCorrections(const Sentence& s,
                             std::span<const Correction> corrections);

// ---------------------------------------------------------------------------
// Pair filter

struct FilterConfig {
  double alpha = 0.4;
  StopwordSet stopwords = DefaultStopwords();
  std::string mask_token = "<*>";
  // Also leave punctuation-only tokens out of U(.).
  bool drop_punctuation = true;

  void Validate() const;
};

// U(s): lowercased tokens minus stopwords, the mask token and (optionally)
// punctuation.
std::vector<std::string> ContentTokenSet(const Sentence& s,
                                         const FilterConfig& cfg);

// |U(x) & U(y)| / min(|U(x)|, |U(y)|). nullopt when either set is empty.
std::optional<double> OverlapCoefficient(const Sentence& x, const Sentence& y,
                                         const FilterConfig& cfg);

struct RemovedPair {
  DraftPair pair;
  std::string reason;  // "low_overlap" or "undefined_overlap"
  std::optional<double> coefficient;
};

struct PairFilterResult {
  std::vector<DraftPair> kept;
  std::vector<std::size_t> kept_index;
  std::vector<RemovedPair> removed;
  std::vector<std::size_t> removed_index;
};

// Removes a pair iff the overlap coefficient of the spell-checked draft
// and the reference is below alpha or undefined. With an empty dictionary
// the drafts are used as-is.
PairFilterResult FilterPairs(std::span<const DraftPair> pairs,
                             const FilterConfig& cfg,
                             const Dictionary& dictionary);

// ---------------------------------------------------------------------------
// Language heuristics

// Any Hiragana, Katakana or CJK Unified Ideograph character.
bool ContainsJapanese(std::string_view text);

// At least `threshold` of the alphabetic tokens (mask excluded) are in the
// dictionary, and no Japanese characters occur.
bool IsEnglish(std::string_view text, const Dictionary& dictionary,
               double threshold = 0.5);

// ---------------------------------------------------------------------------
// Worker scoring

struct WorkerSubmission {
  std::string worker_id;
  std::array<std::string, 3> answers;
  long long seconds_worked = 0;
  std::array<std::string, 3> mt_references;
};

// Stable criterion identifiers, in evaluation order.
namespace criteria {
inline constexpr std::string_view kTime = "T2.time";
inline constexpr std::string_view kAllShort = "T2.all_short";
inline constexpr std::string_view kNoTerminal = "T2.no_terminal";
inline constexpr std::string_view kIdentical = "T2.identical";
inline constexpr std::string_view kJapanese = "T2.japanese";
inline constexpr std::string_view kNoEnglish = "T2.no_english";
inline constexpr std::string_view kSomeShort = "T2.some_short";
inline constexpr std::string_view kFewTypes = "T2.few_types";
inline constexpr std::string_view kLd20To30 = "T2.ld_20_30";
inline constexpr std::string_view kLd10To20 = "T2.ld_10_20";
inline constexpr std::string_view kLdLe10 = "T2.ld_le_10";
inline constexpr std::string_view kAllTerminal = "T2.all_terminal";
inline constexpr std::string_view kHasMask = "T2.has_mask";
inline constexpr std::string_view kAllEnglish = "T2.all_english";
}  // namespace criteria

struct TriggeredCriterion {
  std::string id;
  bool reject = false;
  double points = 0.0;  // 0 for reject criteria
  // Answer index for per-answer criteria.
  std::optional<std::size_t> answer;
};

struct WorkerVerdict {
  double score = 0.0;
  bool accepted = false;
  std::vector<TriggeredCriterion> triggered;

  bool Triggered(std::string_view id) const;
};

struct WorkerScoringConfig {
  long long min_seconds = 120;
  std::size_t min_words = 4;
  std::size_t min_types = 4;
  double english_threshold = 0.5;
};

// Number of tokens containing a letter or digit.
std::size_t CountWords(std::string_view answer);
// Distinct lowercased word tokens.
std::size_t CountWordTypes(std::string_view answer);
bool EndsWithTerminal(std::string_view answer);

// Evaluates every criterion; accepted iff nothing rejects and score >= 0.
WorkerVerdict ScoreWorker(const WorkerSubmission& sub,
                          const Dictionary& english,
                          const WorkerScoringConfig& cfg = {});

}  // namespace draftrev::quality
