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

// Sentence- and corpus-level evaluation measures.

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "draftrev/corpus.h"
#include "draftrev/levenshtein.h"
#include "draftrev/lexicon.h"

namespace draftrev {
namespace lm {
class NGramModel;
}  // namespace lm

namespace metrics {

using ::draftrev::LevenshteinChars;

// ---------------------------------------------------------------------------
// BLEU

struct BleuConfig {
  int max_order = 4;
  // Replaces a zero match count when forming the modified precision.
  double epsilon = 1e-9;
};

// Sufficient statistics; summing them over records gives corpus BLEU.
struct BleuStats {
  std::vector<std::size_t> matches;  // clipped, per order
  std::vector<std::size_t> totals;   // hypothesis n-grams, per order
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  explicit BleuStats(int max_order = 4)
      : matches(static_cast<std::size_t>(max_order), 0),
        totals(static_cast<std::size_t>(max_order), 0) {}
  BleuStats& operator+=(const BleuStats& other);
};

BleuStats CollectBleuStats(std::span<const std::string> hyp,
                           std::span<const std::string> ref, int max_order = 4);

// Geometric mean of the modified precisions times the brevity penalty.
// Orders with no hypothesis n-grams at all are left out of the mean. In
// [0, 1].
double BleuFromStats(const BleuStats& stats, const BleuConfig& cfg = {});

// Throws DataError on empty or unequal-length inputs.
double CorpusBleu(std::span<const Sentence> hypotheses,
                  std::span<const Sentence> references,
                  const BleuConfig& cfg = {});
double SentenceBleu(const Sentence& hypothesis, const Sentence& reference,
                    const BleuConfig& cfg = {});

// ---------------------------------------------------------------------------
// ROUGE-L

inline constexpr double kRougeBeta = 1.2;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  std::size_t lcs = 0;
  // Set when either side is empty; f is 0 by convention.
  bool degenerate = false;
};

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b);

// F = (1 + b^2) P R / (R + b^2 P) over the token LCS.
RougeScore RougeL(const Sentence& hypothesis, const Sentence& reference,
                  double beta = kRougeBeta);

// ---------------------------------------------------------------------------
// Edits

enum class EditType {
  kInsertion,
  kDeletion,
  kSubstitution,
  kOrthography,
  kSpelling,
  kPunctuation,
  kOther,
};

inline constexpr std::array<EditType, 7> kAllEditTypes = {
    EditType::kInsertion,   EditType::kDeletion, EditType::kSubstitution,
    EditType::kOrthography, EditType::kSpelling, EditType::kPunctuation,
    EditType::kOther};

std::string_view EditTypeName(EditType t);
EditType ParseEditType(std::string_view name);

struct EditSpan {
  std::size_t start = 0;  // source token range [start, end)
  std::size_t end = 0;
  std::vector<std::string> replacement;
  EditType type = EditType::kOther;

  // Identity used for matching: range and replacement, not the type.
  bool SameEdit(const EditSpan& other) const {
    return start == other.start && end == other.end &&
           replacement == other.replacement;
  }
};

// Classifies a span given the replaced source tokens.
EditType ClassifyEdit(std::span<const std::string> source_side,
                      std::span<const std::string> target_side,
                      const Dictionary& dictionary);

// Unit-cost token alignment (no transpositions); maximal runs of non-match
// operations become spans. Ties prefer substitution, then deletion.
std::vector<EditSpan> ExtractEdits(const Sentence& source,
                                   const Sentence& target,
                                   const Dictionary& dictionary);

// Rebuilds the target tokens. Spans must be sorted and disjoint.
std::vector<std::string> ApplyEdits(std::span<const std::string> source,
                                    std::span<const EditSpan> edits);

struct EditCounts {
  std::size_t matched = 0;
  std::size_t hypothesis = 0;
  std::size_t gold = 0;

  EditCounts& operator+=(const EditCounts& o) {
    matched += o.matched;
    hypothesis += o.hypothesis;
    gold += o.gold;
    return *this;
  }
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

inline constexpr double kEditBeta = 0.5;

// P = 1 if no hypothesis edits and no gold edits, 0 if only gold edits;
// R = 1 if no gold edits.
Prf PrfFromCounts(const EditCounts& counts, double beta = kEditBeta);

EditCounts CountEditMatches(const Sentence& source, const Sentence& hypothesis,
                            const Sentence& reference,
                            const Dictionary& dictionary);
Prf EditPrf(const Sentence& source, const Sentence& hypothesis,
            const Sentence& reference, const Dictionary& dictionary);

// ---------------------------------------------------------------------------
// Grammaticality

enum class GrammarRule {
  kDuplicateWord,
  kArticleAgreement,
  kInitialCapital,
  kUnbalancedBracket,
  kTerminalPunctuation,
};

std::string_view GrammarRuleName(GrammarRule r);
GrammarRule ParseGrammarRule(std::string_view name);
const std::set<GrammarRule>& AllGrammarRules();

struct DetectedError {
  GrammarRule rule;
  std::size_t token = 0;  // position the error is attached to
};

class ErrorDetector {
 public:
  virtual ~ErrorDetector() = default;
  virtual std::vector<DetectedError> Detect(const Sentence& s) const = 0;
  std::size_t CountErrors(const Sentence& s) const { return Detect(s).size(); }
};

// Small rule set:
//   duplicate_word        adjacent identical words (case-insensitive)
//   article_agreement     "a" before a vowel onset, "an" before a consonant
//   initial_capital       first word starts with a lowercase letter
//   unbalanced_bracket    each unmatched ( [ { ) ] }, plus an odd number of "
//   terminal_punctuation  no . ? ! at the end (closing brackets and quotes
//                         are skipped)
class RuleBasedDetector final : public ErrorDetector {
 public:
  explicit RuleBasedDetector(std::set<GrammarRule> rules = AllGrammarRules());
  std::vector<DetectedError> Detect(const Sentence& s) const override;
  const std::set<GrammarRule>& rules() const { return rules_; }

 private:
  std::set<GrammarRule> rules_;
};

// max(0, 1 - errors / tokens). Throws DataError if tokens == 0.
double GrammaticalityFromCounts(std::size_t errors, std::size_t tokens);
double Grammaticality(const Sentence& s, const ErrorDetector& detector);

// ---------------------------------------------------------------------------
// Readability and style

// Vowel groups (y included); a silent final "e" is dropped unless the word
// ends in consonant + "le" or in "ee"; at least 1.
std::size_t CountSyllables(std::string_view word);

// Tokens with a letter or digit; the mask is not a word.
std::vector<std::string> WordTokens(const Sentence& s);

// Single-sentence Flesch Reading Ease. Throws DataError without words.
double FleschReadingEase(const Sentence& s);

bool IsBeForm(std::string_view lower);
bool IsAdverb(std::string_view lower);
bool IsPastParticiple(std::string_view lower);

// A be-form followed within two tokens by a past participle, adverbs
// skipped.
bool HasPassiveVoice(const Sentence& s);

inline constexpr std::size_t kRepetitionWindow = 5;

// Some non-stopword word recurs within `window` positions. Throws
// ConfigError for window 0.
bool HasWordRepetition(const Sentence& s, std::size_t window = kRepetitionWindow,
                       const StopwordSet& stopwords = DefaultStopwords());

// ---------------------------------------------------------------------------
// Corpus evaluation

struct EvalConfig {
  BleuConfig bleu;
  double rouge_beta = kRougeBeta;
  std::size_t repetition_window = kRepetitionWindow;
  std::set<GrammarRule> grammar_rules = AllGrammarRules();
  // Spell-correct hypotheses before edit matching.
  bool spellcheck_hypotheses = false;
};

struct PairRecord {
  double bleu = 0.0;  // sentence level
  BleuStats bleu_stats;
  RougeScore rouge_l;
  std::size_t levenshtein_char = 0;  // hypothesis vs reference
  std::optional<double> grammaticality;
  std::optional<double> fre;
  std::optional<double> ppl;
  bool passive = false;
  bool repetition = false;
  EditCounts edits;
  Prf edit_prf;
};

struct EvalAggregates {
  double corpus_bleu = 0.0;
  double mean_rouge_l = 0.0;
  Prf edit_prf;
  double mean_grammaticality = 0.0;
  double mean_fre = 0.0;
  std::optional<double> mean_ppl;
  double passive_fraction = 0.0;
  double repetition_fraction = 0.0;
  double mean_levenshtein_char = 0.0;
  // Records left out of the grammaticality / FRE / PPL means.
  std::size_t skipped_grammaticality = 0;
  std::size_t skipped_fre = 0;
  std::size_t skipped_ppl = 0;
};

struct EvalReport {
  std::vector<PairRecord> records;
  EvalAggregates aggregates;
};

// `dictionary` drives edit typing and optional hypothesis spell checking;
// `lm` may be null. Work is split over `jobs` threads; aggregation runs in
// record order, so the report does not depend on `jobs`.
EvalReport Evaluate(std::span<const Sentence> sources,
                    std::span<const Sentence> hypotheses,
                    std::span<const Sentence> references,
                    const Dictionary& dictionary, const lm::NGramModel* lm,
                    const EvalConfig& cfg = {}, std::size_t jobs = 1);

// Recomputes every aggregate from the records, in record order.
EvalAggregates AggregateRecords(std::span<const PairRecord> records,
                                const BleuConfig& bleu = {});

}  // namespace metrics
}  // namespace draftrev
