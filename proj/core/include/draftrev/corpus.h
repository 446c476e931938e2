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

// Sentences, draft/reference pairs, tokenization, and the corpus selection
// filters.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "draftrev/error.h"

namespace draftrev {

// Splits on whitespace, then detaches leading and trailing punctuation
// characters into single-character tokens. The mask token "<*>" is always
// kept whole, even when glued to a word ("word<*>" -> [word, <*>]).
//
// Tokenization is a fixed point: Tokenize(Join(Tokenize(t))) == Tokenize(t).
std::vector<std::string> Tokenize(std::string_view text);

// Immutable text plus its tokens and character length.
class Sentence {
 public:
  Sentence() = default;
  // Throws DataError if `text` is not valid UTF-8.
  explicit Sentence(std::string text);

  // Builds a sentence whose text is the tokens joined by single spaces.
  static Sentence FromTokens(std::span<const std::string> tokens);

  const std::string& text() const { return text_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  // Unicode scalar values in text().
  std::size_t char_len() const { return char_len_; }
  bool empty() const { return tokens_.empty(); }

  friend bool operator==(const Sentence& a, const Sentence& b) {
    return a.text_ == b.text_;
  }

 private:
  std::string text_;
  std::vector<std::string> tokens_;
  std::size_t char_len_ = 0;
};

class DraftPair {
 public:
  // Throws DataError if the reference contains the mask token.
  DraftPair(Sentence draft, Sentence reference);

  const Sentence& draft() const { return draft_; }
  const Sentence& reference() const { return reference_; }
  bool has_mask() const { return has_mask_; }

 private:
  Sentence draft_;
  Sentence reference_;
  bool has_mask_ = false;
};

// Names accepted in CorpusFilterConfig::forbidden_char_classes.
//   "math"     Unicode math operator/arrow/letterlike blocks, ± × ÷ and the
//              ASCII symbols = < > ^ \ | ~ { } _
//   "greek"    Greek and Greek Extended blocks
//   "url"      http(s)://, ftp://, www. and bare host.tld patterns
//   "citation" bracketed numeric citations ([12], [3, 4]), "et al.",
//              parenthesized author-year ((Smith, 2018)), and the
//              placeholder tokens CITATION / @cite / <cite>
//   "special"  control characters, private-use area, U+FFFD, geometric
//              shapes and bullets
inline const std::set<std::string>& DefaultForbiddenCharClasses() {
  static const std::set<std::string> kClasses = {"math", "greek", "url",
                                                 "citation", "special"};
  return kClasses;
}

struct CorpusFilterConfig {
  std::size_t min_chars = 70;
  std::size_t max_chars = 120;
  std::set<std::string> forbidden_char_classes = DefaultForbiddenCharClasses();
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 35;
  double min_alpha_ratio = 0.5;

  // Throws ConfigError on inverted ranges, out-of-range ratio, or unknown
  // class names.
  void Validate() const;
};

// Names of the forbidden classes that `s` triggers (empty if clean).
std::vector<std::string> ForbiddenClassesIn(
    const Sentence& s, const std::set<std::string>& classes);

// Fraction of non-whitespace characters that are alphabetic (0 for text
// without any non-whitespace character).
double AlphabeticRatio(const Sentence& s);

bool PassesFinalFilter(const Sentence& s, const CorpusFilterConfig& cfg);
bool PassesTrainingFilter(const Sentence& s, const CorpusFilterConfig& cfg,
                          const std::unordered_set<std::string>& exclusion);

// Keeps sentences of min_chars..max_chars characters with no forbidden
// character class. Order is preserved.
std::vector<Sentence> FilterFinalSentences(std::span<const Sentence> sentences,
                                           const CorpusFilterConfig& cfg);

// Keeps sentences of min_tokens..max_tokens tokens whose alphabetic ratio is
// at least min_alpha_ratio and whose normalized text is not in `exclusion`.
// Entries of `exclusion` must already be normalized (NormalizeForLookup).
std::vector<Sentence> FilterTrainingSentences(
    std::span<const Sentence> sentences, const CorpusFilterConfig& cfg,
    const std::unordered_set<std::string>& exclusion);

struct SentenceReadResult {
  std::vector<Sentence> sentences;
  // Line number (1-based) of each sentence in the source.
  std::vector<std::size_t> lines;
  std::vector<RecordError> errors;
};

// One sentence per line. Lines that are not valid UTF-8 become record
// errors. Blank lines are skipped unless `keep_blank` is set, in which case
// they become empty sentences (for line-aligned files).
SentenceReadResult ReadSentences(std::istream& in, bool keep_blank = false);
SentenceReadResult ReadSentenceFile(const std::filesystem::path& path,
                                    bool keep_blank = false);

enum class PairFormat { kTsv, kJsonl };

PairFormat ParsePairFormat(std::string_view name);
// Picks kJsonl for *.jsonl / *.json, kTsv otherwise.
PairFormat GuessPairFormat(const std::filesystem::path& path);

struct PairLoadResult {
  std::vector<DraftPair> pairs;
  std::vector<RecordError> errors;
};

PairLoadResult ReadPairs(std::istream& in, PairFormat format);
// Throws IoError if the file cannot be opened.
PairLoadResult LoadPairs(const std::filesystem::path& path, PairFormat format);

void WritePairTsv(std::ostream& out, std::span<const DraftPair> pairs);

}  // namespace draftrev
