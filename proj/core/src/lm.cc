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

#include "draftrev/lm.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "draftrev/corpus.h"
#include "draftrev/error.h"
#include "draftrev/text.h"

namespace draftrev::lm {

namespace {

using Key = std::vector<WordId>;
using CountTable = std::unordered_map<Key, std::uint64_t, NGramHash>;

double ParseNumber(std::string_view field, const std::string& section) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DataError(section + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string SectionName(int n) { return "\\" + std::to_string(n) + "-grams:"; }

// Kneser-Ney discount from count-of-counts of the adjusted counts.
double Discount(const CountTable& counts) {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  for (const auto& [key, c] : counts) {
    if (c == 1) ++n1;
    if (c == 2) ++n2;
  }
  if (n1 == 0 || n2 == 0) return 0.5;
  return static_cast<double>(n1) / (n1 + 2.0 * n2);
}

struct ContextStats {
  std::uint64_t total = 0;
  std::uint64_t types = 0;
};

std::unordered_map<Key, ContextStats, NGramHash> GroupByContext(
    const CountTable& counts) {
  std::unordered_map<Key, ContextStats, NGramHash> out;
  for (const auto& [key, c] : counts) {
    Key ctx(key.begin(), key.end() - 1);
    auto& st = out[ctx];
    st.total += c;
    if (c > 0) ++st.types;
  }
  return out;
}

}  // namespace

Smoothing ParseSmoothing(std::string_view name) {
  if (name == "interpolated-kneser-ney" || name == "kn") {
    return Smoothing::kInterpolatedKneserNey;
  }
  if (name == "add-k" || name == "addk") return Smoothing::kAddK;
  throw ConfigError("unknown smoothing: " + std::string(name));
}

std::string_view SmoothingName(Smoothing s) {
  return s == Smoothing::kAddK ? "add-k" : "interpolated-kneser-ney";
}

WordId NGramModel::Intern(std::string_view word) {
  auto it = ids_.find(std::string(word));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(words_.back(), id);
  return id;
}

WordId NGramModel::Id(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? kUnkId : it->second;
}

const NGramEntry* NGramModel::Find(std::span<const WordId> ngram) const {
  if (ngram.empty() || ngram.size() > tables_.size()) return nullptr;
  const auto& table = tables_[ngram.size() - 1];
  auto it = table.find(Key(ngram.begin(), ngram.end()));
  return it == table.end() ? nullptr : &it->second;
}

double NGramModel::LogProb(std::span<const WordId> context, WordId word) const {
  const std::size_t max_ctx =
      std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  auto ctx = context.last(max_ctx);
  Key ngram;
  ngram.reserve(max_ctx + 1);
  double backoff = 0.0;
  for (std::size_t len = max_ctx;; --len) {
    auto suffix = ctx.last(len);
    ngram.assign(suffix.begin(), suffix.end());
    ngram.push_back(word);
    if (const auto* e = Find(ngram)) return backoff + e->log_prob;
    if (len == 0) break;
    if (const auto* c = Find(suffix)) backoff += c->log_backoff;
  }
  // Only reachable for ids without a unigram entry.
  const auto* unk = Find(std::span<const WordId>(&kUnkId, 1));
  return backoff + (unk ? unk->log_prob : kLogZero);
}

double NGramModel::SentenceLogProb(std::span<const std::string> tokens) const {
  std::vector<WordId> history;
  history.reserve(tokens.size() + 2);
  history.push_back(kBosId);
  double total = 0.0;
  for (const auto& tok : tokens) {
    const WordId id = Id(tok);
    total += LogProb(history, id);
    history.push_back(id);
  }
  total += LogProb(history, kEosId);
  return total;
}

double NGramModel::SentenceLogProb(const Sentence& s) const {
  return SentenceLogProb(s.tokens());
}

double NGramModel::Perplexity(std::span<const std::string> tokens) const {
  const double lp = SentenceLogProb(tokens);
  return std::pow(10.0, -lp / static_cast<double>(tokens.size() + 1));
}

double NGramModel::Perplexity(const Sentence& s) const {
  return Perplexity(s.tokens());
}

NGramModel NGramModel::Train(std::span<const Sentence> corpus,
                             const TrainOptions& options) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(corpus.size());
  for (const auto& s : corpus) tokens.push_back(s.tokens());
  return Train(tokens, options);
}

NGramModel NGramModel::Train(std::span<const std::vector<std::string>> corpus,
                             const TrainOptions& options) {
  if (options.order < 1) throw ConfigError("order must be at least 1");
  if (options.smoothing == Smoothing::kAddK && !(options.add_k > 0.0)) {
    throw ConfigError("add-k pseudo-count must be positive");
  }
  if (!(options.unk_floor > 0.0 && options.unk_floor < 1.0)) {
    throw ConfigError("unk_floor must be in (0, 1)");
  }
  if (corpus.empty()) throw DataError("cannot train on an empty corpus");

  NGramModel m;
  m.order_ = options.order;
  m.Intern(kUnk);
  m.Intern(kBos);
  m.Intern(kEos);
  {
    std::set<std::string_view> vocab;
    for (const auto& sent : corpus) vocab.insert(sent.begin(), sent.end());
    for (auto w : vocab) m.Intern(w);
  }
  const int order = options.order;

  // Raw counts of every n-gram whose last word is a predicted position.
  std::vector<CountTable> raw(order);
  for (const auto& sent : corpus) {
    Key seq;
    seq.reserve(sent.size() + 2);
    seq.push_back(kBosId);
    for (const auto& w : sent) seq.push_back(m.Id(w));
    seq.push_back(kEosId);
    for (std::size_t end = 1; end < seq.size(); ++end) {
      for (int n = 1; n <= order && static_cast<std::size_t>(n) <= end + 1;
           ++n) {
        ++raw[n - 1][Key(seq.begin() + (end + 1 - n), seq.begin() + end + 1)];
      }
    }
  }

  const bool kn = options.smoothing == Smoothing::kInterpolatedKneserNey;
  std::vector<CountTable> adjusted(order);
  if (kn) {
    adjusted[order - 1] = raw[order - 1];
    for (int n = order - 1; n >= 1; --n) {
      auto& adj = adjusted[n - 1];
      for (const auto& [key, c] : raw[n - 1]) {
        adj[key] = key.front() == kBosId ? c : 0;
      }
      for (const auto& [key, c] : raw[n]) {
        Key suffix(key.begin() + 1, key.end());
        if (suffix.front() != kBosId) ++adj[suffix];
      }
    }
  } else {
    adjusted = raw;
  }

  m.tables_.assign(order, NGramTable{});

  // Unigrams over every word except <s>.
  {
    auto& table = m.tables_[0];
    const auto& counts = adjusted[0];
    const double vocab_size = static_cast<double>(m.words_.size() - 1);
    std::uint64_t total = 0;
    std::uint64_t types = 0;
    for (const auto& [key, c] : counts) {
      total += c;
      if (c > 0) ++types;
    }
    std::vector<double> probs(m.words_.size(), 0.0);
    if (kn) {
      const double d = Discount(counts);
      const double gamma = d * types / static_cast<double>(total);
      for (WordId id = 0; id < m.words_.size(); ++id) {
        if (id == kBosId) continue;
        auto it = counts.find(Key{id});
        const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        probs[id] = std::max(c - d, 0.0) / total + gamma / vocab_size;
      }
    } else {
      const double denom = total + options.add_k * vocab_size;
      for (WordId id = 0; id < m.words_.size(); ++id) {
        if (id == kBosId) continue;
        auto it = counts.find(Key{id});
        const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        probs[id] = (c + options.add_k) / denom;
      }
    }
    if (probs[kUnkId] < options.unk_floor) {
      const double scale = (1.0 - options.unk_floor) / (1.0 - probs[kUnkId]);
      for (WordId id = 0; id < m.words_.size(); ++id) probs[id] *= scale;
      probs[kUnkId] = options.unk_floor;
    }
    for (WordId id = 0; id < m.words_.size(); ++id) {
      table[Key{id}] = {id == kBosId ? kLogZero : std::log10(probs[id]), 0.0};
    }
  }

  const double vocab_size = static_cast<double>(m.words_.size() - 1);
  for (int n = 2; n <= order; ++n) {
    const auto& counts = adjusted[n - 1];
    const auto contexts = GroupByContext(counts);
    const double d = kn ? Discount(counts) : 0.0;
    auto& table = m.tables_[n - 1];
    // Lower-order mass of the stored continuations, per context.
    std::unordered_map<Key, double, NGramHash> stored_mass;
    std::unordered_map<Key, double, NGramHash> lower_mass;
    for (const auto& [key, c] : counts) {
      if (c == 0) continue;
      Key ctx(key.begin(), key.end() - 1);
      const auto& st = contexts.at(ctx);
      const double lower =
          std::pow(10.0, m.LogProb(std::span(key).subspan(1, n - 2),
                                   key.back()));
      double p;
      if (kn) {
        const double gamma = d * st.types / static_cast<double>(st.total);
        p = (static_cast<double>(c) - d) / st.total + gamma * lower;
      } else {
        p = (static_cast<double>(c) + options.add_k) /
            (st.total + options.add_k * vocab_size);
      }
      table[key] = {std::log10(p), 0.0};
      stored_mass[ctx] += p;
      lower_mass[ctx] += lower;
    }
    auto& ctx_table = m.tables_[n - 2];
    for (const auto& [ctx, st] : contexts) {
      double bow;
      if (kn) {
        bow = d * st.types / static_cast<double>(st.total);
      } else {
        const double num = 1.0 - stored_mass[ctx];
        const double den = 1.0 - lower_mass[ctx];
        bow = (num > 0.0 && den > 0.0) ? num / den : 1.0;
      }
      ctx_table.at(ctx).log_backoff = std::log10(bow);
    }
  }
  return m;
}

double NGramModel::MaxNormalizationError(std::size_t max_contexts) const {
  double worst = 0.0;
  {
    double sum = 0.0;
    for (const auto& [key, e] : tables_[0]) {
      if (key.front() != kBosId) sum += std::pow(10.0, e.log_prob);
    }
    worst = std::abs(sum - 1.0);
  }
  std::size_t checked = 0;
  for (int n = 2; n <= order_; ++n) {
    std::map<Key, std::pair<double, double>> per_ctx;  // stored, lower
    for (const auto& [key, e] : tables_[n - 1]) {
      Key ctx(key.begin(), key.end() - 1);
      auto& acc = per_ctx[ctx];
      acc.first += std::pow(10.0, e.log_prob);
      acc.second += std::pow(
          10.0, LogProb(std::span(key).subspan(1, n - 2), key.back()));
    }
    for (const auto& [ctx, sums] : per_ctx) {
      if (max_contexts != 0 && checked >= max_contexts) return worst;
      ++checked;
      const auto* c = Find(ctx);
      const double bow = c ? std::pow(10.0, c->log_backoff) : 1.0;
      const double total = sums.first + bow * (1.0 - sums.second);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  return worst;
}

void NGramModel::WriteArpa(std::ostream& out) const {
  out << "\\data\\\n";
  for (int n = 1; n <= order_; ++n) {
    out << "ngram " << n << '=' << tables_[n - 1].size() << '\n';
  }
  for (int n = 1; n <= order_; ++n) {
    out << '\n' << SectionName(n) << '\n';
    std::vector<std::pair<std::vector<std::string_view>, const NGramEntry*>>
        rows;
    rows.reserve(tables_[n - 1].size());
    for (const auto& [key, e] : tables_[n - 1]) {
      std::vector<std::string_view> ws;
      for (WordId id : key) ws.push_back(words_[id]);
      rows.emplace_back(std::move(ws), &e);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [ws, e] : rows) {
      out << FormatDouble(e->log_prob) << '\t';
      for (std::size_t i = 0; i < ws.size(); ++i) {
        if (i > 0) out << ' ';
        out << ws[i];
      }
      if (n < order_) out << '\t' << FormatDouble(e->log_backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

void NGramModel::SaveArpa(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteArpa(out);
  if (!out) throw IoError("write failed for " + path.string());
}

NGramModel NGramModel::ReadArpa(std::istream& in) {
  NGramModel m;
  m.Intern(kUnk);
  m.Intern(kBos);
  m.Intern(kEos);
  std::string line;
  const auto strip = [](std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
      s.pop_back();
    }
  };
  bool found_data = false;
  while (std::getline(in, line)) {
    strip(line);
    if (line == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw DataError("\\data\\: header not found");

  std::vector<std::uint64_t> declared;
  while (std::getline(in, line)) {
    strip(line);
    if (line.empty()) {
      if (declared.empty()) continue;
      break;
    }
    if (line.rfind("ngram ", 0) != 0) {
      throw DataError("\\data\\: unexpected line '" + line + "'");
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("\\data\\: malformed count line '" + line + "'");
    }
    const int n = static_cast<int>(
        ParseNumber(std::string_view(line).substr(6, eq - 6), "\\data\\"));
    const double count =
        ParseNumber(std::string_view(line).substr(eq + 1), "\\data\\");
    if (n != static_cast<int>(declared.size()) + 1 || count < 0) {
      throw DataError("\\data\\: counts must be listed for orders 1, 2, ...");
    }
    declared.push_back(static_cast<std::uint64_t>(count));
  }
  if (declared.empty()) throw DataError("\\data\\: no n-gram counts");
  m.order_ = static_cast<int>(declared.size());
  m.tables_.assign(m.order_, NGramTable{});

  int current = 0;
  std::string section;
  std::uint64_t seen = 0;
  bool ended = false;
  const auto close_section = [&]() {
    if (current > 0 && seen != declared[current - 1]) {
      throw DataError(section + ": header declares " +
                      std::to_string(declared[current - 1]) +
                      " entries but section has " + std::to_string(seen));
    }
  };
  while (std::getline(in, line)) {
    strip(line);
    if (line.empty()) continue;
    if (line == "\\end\\") {
      close_section();
      ended = true;
      break;
    }
    if (line.front() == '\\') {
      close_section();
      const auto dash = line.find("-grams:");
      if (dash == std::string::npos) {
        throw DataError(line + ": unknown section");
      }
      const int n = static_cast<int>(
          ParseNumber(std::string_view(line).substr(1, dash - 1), line));
      if (n != current + 1 || n > m.order_) {
        throw DataError(line + ": section out of order or not declared");
      }
      current = n;
      section = line;
      seen = 0;
      continue;
    }
    if (current == 0) throw DataError("\\data\\: entry before first section");
    const auto fields = SplitFields(line);
    const auto n = static_cast<std::size_t>(current);
    if (fields.size() != n + 1 && fields.size() != n + 2) {
      throw DataError(section + ": expected " + std::to_string(n) +
                      " words in '" + line + "'");
    }
    NGramEntry entry;
    entry.log_prob = ParseNumber(fields[0], section);
    if (fields.size() == n + 2) {
      entry.log_backoff = ParseNumber(fields[n + 1], section);
    }
    Key key;
    for (std::size_t i = 1; i <= n; ++i) {
      if (current == 1) {
        key.push_back(m.Intern(fields[i]));
      } else {
        auto it = m.ids_.find(std::string(fields[i]));
        if (it == m.ids_.end()) {
          throw DataError(section + ": word '" + std::string(fields[i]) +
                          "' has no unigram entry");
        }
        key.push_back(it->second);
      }
    }
    if (!m.tables_[n - 1].emplace(std::move(key), entry).second) {
      throw DataError(section + ": duplicate entry '" + line + "'");
    }
    ++seen;
  }
  if (!ended) throw DataError("\\end\\: terminator not found");
  if (current != m.order_) {
    throw DataError(SectionName(current + 1) + ": section missing");
  }
  // Reserved words the file did not list.
  auto& unigrams = m.tables_[0];
  unigrams.try_emplace(Key{kUnkId}, NGramEntry{-100.0, 0.0});
  unigrams.try_emplace(Key{kBosId}, NGramEntry{kLogZero, 0.0});
  unigrams.try_emplace(Key{kEosId}, NGramEntry{-100.0, 0.0});
  return m;
}

NGramModel NGramModel::LoadArpa(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadArpa(in);
}

}  // namespace draftrev::lm
