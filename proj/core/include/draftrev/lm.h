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

// Backoff n-gram language model: training, scoring, ARPA I/O.
//
// Probabilities are stored the ARPA way: every stored n-gram carries its
// log10 conditional probability, and every stored context carries a log10
// backoff weight. Scoring uses the longest stored suffix:
//
//   log P(w | h) = log p(h w)                      if h w is stored
//                = log bow(h) + log P(w | h')      otherwise (h' drops the
//                                                  oldest word of h)

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace draftrev {

class Sentence;

namespace lm {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

// Log10 value ARPA files use for "probability zero" (the <s> unigram).
inline constexpr double kLogZero = -99.0;

using WordId = std::uint32_t;
inline constexpr WordId kUnkId = 0;
inline constexpr WordId kBosId = 1;
inline constexpr WordId kEosId = 2;

enum class Smoothing { kInterpolatedKneserNey, kAddK };

Smoothing ParseSmoothing(std::string_view name);
std::string_view SmoothingName(Smoothing s);

struct TrainOptions {
  int order = 5;
  Smoothing smoothing = Smoothing::kInterpolatedKneserNey;
  // Pseudo-count for add-k. Must be positive.
  double add_k = 1.0;
  // Lower bound on P(<unk>). The unigram distribution is renormalized after
  // the floor is applied, so the normalization invariant still holds.
  double unk_floor = 1e-7;
};

struct NGramEntry {
  double log_prob = 0.0;
  double log_backoff = 0.0;
};

struct NGramHash {
  std::size_t operator()(const std::vector<WordId>& ids) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (WordId id : ids) {
      h ^= id;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using NGramTable =
    std::unordered_map<std::vector<WordId>, NGramEntry, NGramHash>;

class NGramModel {
 public:
  // Trains on the sentences' tokens. Throws ConfigError for order < 1 or
  // an invalid add_k, and DataError for an empty corpus.
  static NGramModel Train(std::span<const Sentence> corpus,
                          const TrainOptions& options = {});
  static NGramModel Train(std::span<const std::vector<std::string>> corpus,
                          const TrainOptions& options = {});

  // Parses the ARPA backoff format. Throws DataError naming the offending
  // section for malformed input or count mismatches.
  static NGramModel ReadArpa(std::istream& in);
  static NGramModel LoadArpa(const std::filesystem::path& path);

  // Entries are written sorted by word string so output is byte-stable.
  // Numbers use the shortest representation that round-trips exactly.
  void WriteArpa(std::ostream& out) const;
  void SaveArpa(const std::filesystem::path& path) const;

  int order() const { return order_; }
  std::size_t vocab_size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  // kUnkId for out-of-vocabulary words.
  WordId Id(std::string_view word) const;

  // log10 P(word | context); `context` is oldest-first and may be longer
  // than order-1 (only the most recent words are used).
  double LogProb(std::span<const WordId> context, WordId word) const;

  // Sum of log10 P over the tokens plus the end-of-sentence event.
  double SentenceLogProb(std::span<const std::string> tokens) const;
  double SentenceLogProb(const Sentence& s) const;

  // 10^(-logprob / (tokens + 1)); the start marker is not counted.
  double Perplexity(std::span<const std::string> tokens) const;
  double Perplexity(const Sentence& s) const;

  // Stored n-grams of the given order (1-based).
  const NGramTable& table(int n) const { return tables_.at(n - 1); }

  // For each stored context h (orders 1..order-1) computes
  //   sum_{w stored after h} p(w|h) + bow(h) * (1 - sum_{w stored after h}
  //   P(w|h'))
  // and returns the largest absolute deviation from 1. Unigrams are checked
  // as a whole distribution. `max_contexts` bounds the work (0 = all).
  double MaxNormalizationError(std::size_t max_contexts = 0) const;

 private:
  NGramModel() = default;

  WordId Intern(std::string_view word);
  const NGramEntry* Find(std::span<const WordId> ngram) const;

  int order_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
  std::vector<NGramTable> tables_;
};

}  // namespace lm
}  // namespace draftrev
