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

#include "draftrev/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "draftrev/error.h"
#include "draftrev/levenshtein.h"
#include "draftrev/lm.h"
#include "draftrev/parallel.h"
#include "draftrev/text.h"

namespace draftrev::analysis {

namespace {

struct SentenceMeasures {
  std::optional<double> fre;
  bool passive = false;
  bool repetition = false;
  std::optional<double> ppl;
};

SentenceMeasures Measure(const Sentence& s, const lm::NGramModel* lm,
                         std::size_t window) {
  SentenceMeasures m;
  if (!metrics::WordTokens(s).empty()) m.fre = metrics::FleschReadingEase(s);
  m.passive = metrics::HasPassiveVoice(s);
  m.repetition = metrics::HasWordRepetition(s, window);
  if (lm != nullptr) m.ppl = lm->Perplexity(s);
  return m;
}

SideProfile Summarize(const std::vector<SentenceMeasures>& ms) {
  SideProfile p;
  p.sentences = ms.size();
  double fre_sum = 0.0;
  double ppl_sum = 0.0;
  std::size_t fre_n = 0;
  std::size_t ppl_n = 0;
  std::size_t passive = 0;
  std::size_t repetition = 0;
  for (const auto& m : ms) {
    if (m.fre) {
      fre_sum += *m.fre;
      ++fre_n;
    } else {
      ++p.skipped;
    }
    if (m.ppl) {
      ppl_sum += *m.ppl;
      ++ppl_n;
    }
    passive += m.passive ? 1 : 0;
    repetition += m.repetition ? 1 : 0;
  }
  if (fre_n > 0) p.mean_fre = fre_sum / static_cast<double>(fre_n);
  if (ppl_n > 0) p.mean_ppl = ppl_sum / static_cast<double>(ppl_n);
  if (!ms.empty()) {
    const double n = static_cast<double>(ms.size());
    p.passive_pct = 100.0 * static_cast<double>(passive) / n;
    p.repetition_pct = 100.0 * static_cast<double>(repetition) / n;
  }
  return p;
}

// Per-side term counts; n-gram keys use a single space as separator.
struct TermCounts {
  std::map<std::string, std::size_t> counts;
  std::size_t unigrams = 0;
};

TermCounts CountTerms(std::span<const DraftPair> pairs, bool draft) {
  TermCounts tc;
  for (const auto& pair : pairs) {
    const auto& tokens = (draft ? pair.draft() : pair.reference()).tokens();
    std::optional<std::string> prev;
    for (const auto& tok : tokens) {
      if (IsMaskToken(tok) || IsPunctuationToken(tok)) {
        prev.reset();
        continue;
      }
      std::string w = ToLowerAscii(tok);
      ++tc.counts[w];
      ++tc.unigrams;
      if (prev) ++tc.counts[*prev + " " + w];
      prev = std::move(w);
    }
  }
  return tc;
}

double Per10k(std::size_t count, std::size_t total) {
  return total == 0 ? 0.0
                    : 1e4 * static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

DatasetStats ComputeDatasetStats(std::span<const DraftPair> pairs,
                                 std::size_t jobs) {
  if (pairs.empty()) throw DataError("dataset statistics need at least one pair");
  std::vector<std::size_t> distance(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](std::size_t i) {
    distance[i] = LevenshteinChars(pairs[i].draft().text(),
                                   pairs[i].reference().text());
  });
  std::size_t masked = 0;
  std::size_t changed = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    masked += pairs[i].has_mask() ? 1 : 0;
    changed += pairs[i].draft().text() != pairs[i].reference().text() ? 1 : 0;
    sum += static_cast<double>(distance[i]);
  }
  const double n = static_cast<double>(pairs.size());
  DatasetStats s;
  s.pair_count = pairs.size();
  s.pct_with_mask = 100.0 * static_cast<double>(masked) / n;
  s.pct_changed = 100.0 * static_cast<double>(changed) / n;
  s.mean_char_levenshtein = sum / n;
  return s;
}

LinguisticProfile ComputeLinguisticProfile(std::span<const DraftPair> pairs,
                                           const lm::NGramModel* lm,
                                           std::size_t jobs,
                                           std::size_t repetition_window) {
  if (pairs.empty()) throw DataError("a profile needs at least one pair");
  std::vector<SentenceMeasures> drafts(pairs.size());
  std::vector<SentenceMeasures> refs(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](std::size_t i) {
    drafts[i] = Measure(pairs[i].draft(), lm, repetition_window);
    refs[i] = Measure(pairs[i].reference(), lm, repetition_window);
  });
  return {Summarize(drafts), Summarize(refs)};
}

std::array<double, metrics::kAllEditTypes.size()>
EditTypeHistogram::Fractions() const {
  std::array<double, metrics::kAllEditTypes.size()> out{};
  if (total == 0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

EditTypeHistogram EditTypeDistribution(std::span<const DraftPair> pairs,
                                       const Dictionary& dictionary,
                                       std::size_t jobs) {
  if (pairs.empty()) throw DataError("edit distribution needs at least one pair");
  std::vector<std::vector<metrics::EditSpan>> edits(pairs.size());
  ParallelFor(pairs.size(), jobs, [&](std::size_t i) {
    edits[i] = metrics::ExtractEdits(pairs[i].draft(), pairs[i].reference(),
                                     dictionary);
  });
  EditTypeHistogram h;
  for (const auto& list : edits) {
    for (const auto& e : list) {
      ++h.counts[static_cast<std::size_t>(e.type)];
      ++h.total;
    }
  }
  return h;
}

double KlDivergence(std::span<const double> p, std::span<const double> q,
                    double epsilon) {
  if (p.size() != q.size() || p.empty()) {
    throw ConfigError("KL divergence needs two distributions of equal size");
  }
  if (!(epsilon > 0.0)) throw ConfigError("KL epsilon must be positive");
  double p_total = 0.0;
  double q_total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p_total += p[i] + epsilon;
    q_total += q[i] + epsilon;
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = (p[i] + epsilon) / p_total;
    const double qi = (q[i] + epsilon) / q_total;
    kl += pi * std::log(pi / qi);
  }
  return kl;
}

TermContrastResult CharacteristicTerms(std::span<const DraftPair> pairs,
                                       std::size_t top_k, double epsilon) {
  if (pairs.empty()) throw DataError("term contrast needs at least one pair");
  if (top_k < 1) throw ConfigError("top_k must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const TermCounts d = CountTerms(pairs, true);
  const TermCounts r = CountTerms(pairs, false);
  std::map<std::string, TermContrast> all;
  const auto touch = [&](const std::string& term) -> TermContrast& {
    auto& t = all[term];
    t.term = term;
    return t;
  };
  for (const auto& [term, c] : d.counts) {
    touch(term).draft_per10k = Per10k(c, d.unigrams);
  }
  for (const auto& [term, c] : r.counts) {
    touch(term).reference_per10k = Per10k(c, r.unigrams);
  }
  TermContrastResult out;
  for (auto& [term, t] : all) {
    t.log_ratio =
        std::log((t.draft_per10k + epsilon) / (t.reference_per10k + epsilon));
    if (t.log_ratio > 0.0) {
      out.draft_side.push_back(t);
    } else if (t.log_ratio < 0.0) {
      out.reference_side.push_back(t);
    }
  }
  const auto take = [top_k](std::vector<TermContrast>& v, bool descending) {
    std::stable_sort(v.begin(), v.end(),
                     [descending](const TermContrast& a, const TermContrast& b) {
                       if (a.log_ratio != b.log_ratio) {
                         return descending ? a.log_ratio > b.log_ratio
                                           : a.log_ratio < b.log_ratio;
                       }
                       return a.term < b.term;
                     });
    if (v.size() > top_k) v.resize(top_k);
  };
  take(out.draft_side, true);
  take(out.reference_side, false);
  return out;
}

void WriteTermsTsv(std::ostream& out, const TermContrastResult& terms) {
  out << "term\tdraft_per10k\tref_per10k\tlog_ratio\n";
  for (const auto* side : {&terms.draft_side, &terms.reference_side}) {
    for (const auto& t : *side) {
      out << t.term << '\t' << FormatDouble(t.draft_per10k) << '\t'
          << FormatDouble(t.reference_per10k) << '\t'
          << FormatDouble(t.log_ratio) << '\n';
    }
  }
}

}  // namespace draftrev::analysis
