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

// Dataset profiling over draft/reference pairs.

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "draftrev/corpus.h"
#include "draftrev/lexicon.h"
#include "draftrev/metrics.h"

namespace draftrev {
namespace lm {
class NGramModel;
}  // namespace lm

namespace analysis {

struct DatasetStats {
  std::size_t pair_count = 0;
  double pct_with_mask = 0.0;  // [0, 100]
  double pct_changed = 0.0;    // [0, 100]
  double mean_char_levenshtein = 0.0;
};

// Throws DataError on an empty input.
DatasetStats ComputeDatasetStats(std::span<const DraftPair> pairs,
                                 std::size_t jobs = 1);

struct SideProfile {
  std::size_t sentences = 0;
  double mean_fre = 0.0;
  double passive_pct = 0.0;
  double repetition_pct = 0.0;
  std::optional<double> mean_ppl;
  // Sentences without words; left out of the FRE mean.
  std::size_t skipped = 0;
};

struct LinguisticProfile {
  SideProfile draft;
  SideProfile reference;
};

// `lm` may be null, in which case no PPL is reported.
LinguisticProfile ComputeLinguisticProfile(
    std::span<const DraftPair> pairs, const lm::NGramModel* lm,
    std::size_t jobs = 1,
    std::size_t repetition_window = metrics::kRepetitionWindow);

struct EditTypeHistogram {
  std::array<std::size_t, metrics::kAllEditTypes.size()> counts{};
  std::size_t total = 0;

  // Fractions summing to 1; all zero when there are no edits.
  std::array<double, metrics::kAllEditTypes.size()> Fractions() const;
};

EditTypeHistogram EditTypeDistribution(std::span<const DraftPair> pairs,
                                       const Dictionary& dictionary,
                                       std::size_t jobs = 1);

// KL(p || q) in nats, after adding `epsilon` to every cell and
// renormalizing. Throws ConfigError on size mismatch.
double KlDivergence(std::span<const double> p, std::span<const double> q,
                    double epsilon = 1e-9);

struct TermContrast {
  std::string term;  // a token or two tokens joined by a space
  double draft_per10k = 0.0;
  double reference_per10k = 0.0;
  double log_ratio = 0.0;  // ln((draft + eps) / (reference + eps))
};

struct TermContrastResult {
  std::vector<TermContrast> draft_side;      // log_ratio > 0, largest first
  std::vector<TermContrast> reference_side;  // log_ratio < 0, smallest first
};

// Unigrams and bigrams of lowercased tokens (punctuation and the mask left
// out; bigrams never span a removed token). Frequencies are per 10,000
// unigram tokens of each side. Ties are broken by term.
TermContrastResult CharacteristicTerms(std::span<const DraftPair> pairs,
                                       std::size_t top_k, double epsilon = 1.0);

// Header "term, draft_per10k, ref_per10k, log_ratio", then the draft side
// followed by the reference side.
void WriteTermsTsv(std::ostream& out, const TermContrastResult& terms);

}  // namespace analysis
}  // namespace draftrev
