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

#include "draftrev/noising.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "draftrev/error.h"
#include "draftrev/parallel.h"
#include "draftrev/text.h"

namespace draftrev::noising {

namespace {

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<std::string> ReplaceTokensCounted(
    std::span<const std::string> tokens, double p,
    const ReplacementVocab& vocab, Rng& rng, ReplacementSampling mode,
    std::size_t* replaced) {
  if (p > 0.0 && vocab.empty()) {
    throw ConfigError("replacement vocabulary is empty but replace_p > 0");
  }
  std::vector<std::string> out(tokens.begin(), tokens.end());
  std::size_t n = 0;
  for (auto& tok : out) {
    if (rng.Bernoulli(p)) {
      tok = vocab.Sample(rng, mode);
      ++n;
    }
  }
  if (replaced) *replaced = n;
  return out;
}

// Start positions of every run of `n` unmasked positions.
std::vector<std::size_t> FeasibleStarts(const std::vector<bool>& masked,
                                        std::size_t n) {
  std::vector<std::size_t> starts;
  std::size_t run = 0;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    run = masked[i] ? 0 : run + 1;
    if (run >= n) starts.push_back(i + 1 - n);
  }
  return starts;
}

std::size_t LongestUnmaskedRun(const std::vector<bool>& masked) {
  std::size_t best = 0;
  std::size_t run = 0;
  for (bool m : masked) {
    run = m ? 0 : run + 1;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace

ReplacementSampling ParseReplacementSampling(std::string_view name) {
  if (name == "uniform") return ReplacementSampling::kUniform;
  if (name == "count" || name == "count-weighted") {
    return ReplacementSampling::kCountWeighted;
  }
  throw ConfigError("unknown replacement sampling: " + std::string(name));
}

std::string_view ReplacementSamplingName(ReplacementSampling s) {
  return s == ReplacementSampling::kUniform ? "uniform" : "count-weighted";
}

void NoiseConfig::Validate() const {
  if (!IsProbability(delete_p)) throw ConfigError("delete_p must be in [0, 1]");
  if (!IsProbability(replace_p)) {
    throw ConfigError("replace_p must be in [0, 1]");
  }
  if (!IsProbability(mask_fraction_max)) {
    throw ConfigError("mask_fraction_max must be in [0, 1]");
  }
}

ReplacementVocab ReplacementVocab::FromCounts(
    const std::map<std::string, std::uint64_t>& counts,
    std::uint64_t min_count) {
  ReplacementVocab v;
  v.min_count_ = min_count;
  std::uint64_t running = 0;
  for (const auto& [word, count] : counts) {
    if (count <= min_count || IsMaskToken(word)) continue;
    v.words_.push_back(word);
    v.counts_.push_back(count);
    running += count;
    v.cumulative_.push_back(running);
  }
  return v;
}

ReplacementVocab ReplacementVocab::FromSentences(
    std::span<const Sentence> sentences, std::uint64_t min_count) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& s : sentences) {
    for (const auto& tok : s.tokens()) ++counts[tok];
  }
  return FromCounts(counts, min_count);
}

const std::string& ReplacementVocab::Sample(Rng& rng,
                                            ReplacementSampling mode) const {
  if (words_.empty()) throw ConfigError("replacement vocabulary is empty");
  if (mode == ReplacementSampling::kUniform) return words_[rng.Below(size())];
  const std::uint64_t target = rng.Below(cumulative_.back());
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  return words_[static_cast<std::size_t>(it - cumulative_.begin())];
}

std::vector<std::string> DeleteTokens(std::span<const std::string> tokens,
                                      double p, Rng& rng) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (!rng.Bernoulli(p)) out.push_back(tok);
  }
  if (out.empty() && !tokens.empty()) {
    out.push_back(tokens[rng.Below(tokens.size())]);
  }
  return out;
}

std::vector<std::string> ReplaceTokens(std::span<const std::string> tokens,
                                       double p, const ReplacementVocab& vocab,
                                       Rng& rng, ReplacementSampling mode) {
  return ReplaceTokensCounted(tokens, p, vocab, rng, mode, nullptr);
}

std::vector<std::string> PermuteTokens(std::span<const std::string> tokens,
                                       std::size_t k, Rng& rng) {
  std::vector<double> keys(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    keys[i] = static_cast<double>(i) +
              (k == 0 ? 0.0 : rng.Uniform(0.0, static_cast<double>(k)));
  }
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (std::size_t i : order) out.push_back(tokens[i]);
  return out;
}

std::vector<std::string> ApplyMaskSpans(std::span<const std::string> tokens,
                                        std::span<const TokenSpan> spans) {
  std::vector<TokenSpan> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const TokenSpan& a, const TokenSpan& b) { return a.start < b.start; });
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (const auto& span : sorted) {
    if (span.start < pos || span.end > tokens.size() || span.start >= span.end) {
      throw ConfigError("mask spans must be non-empty, disjoint and in range");
    }
    out.insert(out.end(), tokens.begin() + pos, tokens.begin() + span.start);
    out.emplace_back(kMaskToken);
    pos = span.end;
  }
  out.insert(out.end(), tokens.begin() + pos, tokens.end());
  return out;
}

MaskResult MaskSpans(std::span<const std::string> tokens,
                     double mask_fraction_max, Rng& rng) {
  MaskResult result;
  const double r = rng.Uniform(0.0, mask_fraction_max);
  result.target = static_cast<std::size_t>(
      std::floor(static_cast<double>(tokens.size()) * r));
  std::vector<bool> masked(tokens.size(), false);
  std::size_t covered = 0;
  while (covered < result.target) {
    std::size_t n = static_cast<std::size_t>(
        rng.Between(1, static_cast<std::int64_t>(result.target - covered)));
    auto starts = FeasibleStarts(masked, n);
    if (starts.empty()) {
      n = LongestUnmaskedRun(masked);
      starts = FeasibleStarts(masked, n);
    }
    const std::size_t s = starts[rng.Below(starts.size())];
    std::fill(masked.begin() + s, masked.begin() + s + n, true);
    result.spans.push_back({s, s + n});
    covered += n;
  }
  result.masked = covered;
  result.tokens = ApplyMaskSpans(tokens, result.spans);
  return result;
}

DraftPair NoiseSentence(const Sentence& s, const NoiseConfig& cfg,
                        const ReplacementVocab& vocab, std::uint64_t index,
                        NoiseTrace* trace) {
  Rng rng = Rng::ForRecord(cfg.seed, index);
  const auto& original = s.tokens();
  auto tokens = DeleteTokens(original, cfg.delete_p, rng);
  const std::size_t after_delete = tokens.size();
  std::size_t replaced = 0;
  tokens = ReplaceTokensCounted(tokens, cfg.replace_p, vocab, rng,
                                cfg.replace_sampling, &replaced);
  tokens = PermuteTokens(tokens, cfg.shuffle_k, rng);
  const std::size_t mask_input = tokens.size();
  MaskResult masked = MaskSpans(tokens, cfg.mask_fraction_max, rng);
  if (trace) {
    trace->original_tokens = original.size();
    trace->after_delete = after_delete;
    trace->replaced = replaced;
    trace->mask_input_tokens = mask_input;
    trace->masked_tokens = masked.masked;
    trace->mask_spans = masked.spans.size();
  }
  return DraftPair(Sentence::FromTokens(masked.tokens), s);
}

DraftPair NoiseSentence(const Sentence& s, const NoiseConfig& cfg,
                        const ReplacementVocab& vocab, std::uint64_t index) {
  return NoiseSentence(s, cfg, vocab, index, nullptr);
}

std::vector<DraftPair> NoiseCorpus(std::span<const Sentence> sentences,
                                   const NoiseConfig& cfg,
                                   const ReplacementVocab& vocab,
                                   std::size_t jobs) {
  cfg.Validate();
  if (cfg.replace_p > 0.0 && vocab.empty()) {
    throw ConfigError("replacement vocabulary is empty but replace_p > 0");
  }
  std::vector<std::optional<DraftPair>> slots(sentences.size());
  ParallelFor(sentences.size(), jobs, [&](std::size_t i) {
    slots[i].emplace(NoiseSentence(sentences[i], cfg, vocab, i));
  });
  std::vector<DraftPair> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace draftrev::noising
