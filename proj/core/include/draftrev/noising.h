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

// Heuristic noising of clean sentences into synthetic drafts. A sentence
// goes through four stages in a fixed order:
//
//   delete  -> each token dropped with probability delete_p
//   replace -> each token swapped for a frequent word with probability
//              replace_p
//   permute -> local shuffle, every token moves fewer than shuffle_k places
//   mask    -> up to mask_fraction_max of the tokens are covered by "<*>"
//              spans

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "draftrev/corpus.h"
#include "draftrev/random.h"

namespace draftrev::noising {

enum class ReplacementSampling { kUniform, kCountWeighted };

ReplacementSampling ParseReplacementSampling(std::string_view name);
std::string_view ReplacementSamplingName(ReplacementSampling s);

struct NoiseConfig {
  double delete_p = 0.1;
  double replace_p = 0.1;
  // Words must occur strictly more often than this to be used as
  // replacements.
  std::uint64_t replace_vocab_min_count = 10000;
  std::size_t shuffle_k = 3;
  double mask_fraction_max = 0.5;
  std::uint64_t seed = kDefaultSeed;
  ReplacementSampling replace_sampling = ReplacementSampling::kUniform;

  // Throws ConfigError.
  void Validate() const;
};

// Words eligible as replacements, with their corpus counts.
class ReplacementVocab {
 public:
  ReplacementVocab() = default;

  // Keeps the words whose count exceeds `min_count`.
  static ReplacementVocab FromCounts(
      const std::map<std::string, std::uint64_t>& counts,
      std::uint64_t min_count);
  // Counts tokens of the given sentences, then applies FromCounts.
  static ReplacementVocab FromSentences(std::span<const Sentence> sentences,
                                        std::uint64_t min_count);

  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t min_count() const { return min_count_; }

  const std::string& Sample(Rng& rng, ReplacementSampling mode) const;

 private:
  std::vector<std::string> words_;  // sorted
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> cumulative_;
  std::uint64_t min_count_ = 0;
};

// Drops each token independently with probability p. If every token is
// drawn for deletion, one of them (chosen uniformly) survives.
std::vector<std::string> DeleteTokens(std::span<const std::string> tokens,
                                      double p, Rng& rng);

// Replaces each token independently with probability p by a vocabulary
// word. Throws ConfigError if p > 0 and the vocabulary is empty.
std::vector<std::string> ReplaceTokens(
    std::span<const std::string> tokens, double p,
    const ReplacementVocab& vocab, Rng& rng,
    ReplacementSampling mode = ReplacementSampling::kUniform);

// Gives index i the key i + u_i, u_i ~ U[0, k), and stably sorts by key.
// Every token ends up fewer than k positions from where it started.
std::vector<std::string> PermuteTokens(std::span<const std::string> tokens,
                                       std::size_t k, Rng& rng);

// Half-open range of positions in the sequence handed to the mask stage.
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - start; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct MaskResult {
  std::vector<std::string> tokens;
  // Spans in the order they were sampled.
  std::vector<TokenSpan> spans;
  // Target number of masked tokens, floor(len * r).
  std::size_t target = 0;
  // Tokens actually covered by spans; equals target.
  std::size_t masked = 0;
};

// Replaces each span with a single "<*>". Spans must be disjoint and in
// range; their order does not matter.
std::vector<std::string> ApplyMaskSpans(std::span<const std::string> tokens,
                                        std::span<const TokenSpan> spans);

// Draws r ~ U(0, mask_fraction_max) and masks m = floor(len * r) tokens:
// while fewer than m are masked, draws a span length n from {1..m-c} and a
// uniformly placed run of n still-unmasked tokens (falling back to the
// longest run left when no run of n exists), and covers it.
MaskResult MaskSpans(std::span<const std::string> tokens,
                     double mask_fraction_max, Rng& rng);

// Full pipeline for record `index`; the random stream depends only on
// (cfg.seed, index).
DraftPair NoiseSentence(const Sentence& s, const NoiseConfig& cfg,
                        const ReplacementVocab& vocab, std::uint64_t index);

// Per-stage bookkeeping, mainly for statistics and tests.
struct NoiseTrace {
  std::size_t original_tokens = 0;
  std::size_t after_delete = 0;
  std::size_t replaced = 0;
  std::size_t mask_input_tokens = 0;
  std::size_t masked_tokens = 0;
  std::size_t mask_spans = 0;
};

DraftPair NoiseSentence(const Sentence& s, const NoiseConfig& cfg,
                        const ReplacementVocab& vocab, std::uint64_t index,
                        NoiseTrace* trace);

// Noises every sentence (record index = position) using `jobs` threads.
// The result does not depend on `jobs`.
std::vector<DraftPair> NoiseCorpus(std::span<const Sentence> sentences,
                                   const NoiseConfig& cfg,
                                   const ReplacementVocab& vocab,
                                   std::size_t jobs = 1);

}  // namespace draftrev::noising
