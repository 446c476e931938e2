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

#include "draftrev/lexicon.h"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>

#include "draftrev/corpus.h"
#include "draftrev/error.h"
#include "draftrev/text.h"

namespace draftrev {

namespace {

// Sorted. Do not edit without bumping kStopwordListVersion.
constexpr std::array<std::string_view, 179> kStopwords = {
    "a",        "about",    "above",      "after",     "again",
    "against",  "ain",      "all",        "am",        "an",
    "and",      "any",      "are",        "aren",      "aren't",
    "as",       "at",       "be",         "because",   "been",
    "before",   "being",    "below",      "between",   "both",
    "but",      "by",       "can",        "couldn",    "couldn't",
    "d",        "did",      "didn",       "didn't",    "do",
    "does",     "doesn",    "doesn't",    "doing",     "don",
    "don't",    "down",     "during",     "each",      "few",
    "for",      "from",     "further",    "had",       "hadn",
    "hadn't",   "has",      "hasn",       "hasn't",    "have",
    "haven",    "haven't",  "having",     "he",        "her",
    "here",     "hers",     "herself",    "him",       "himself",
    "his",      "how",      "i",          "if",        "in",
    "into",     "is",       "isn",        "isn't",     "it",
    "it's",     "its",      "itself",     "just",      "ll",
    "m",        "ma",       "me",         "mightn",    "mightn't",
    "more",     "most",     "mustn",      "mustn't",   "my",
    "myself",   "needn",    "needn't",    "no",        "nor",
    "not",      "now",      "o",          "of",        "off",
    "on",       "once",     "only",       "or",        "other",
    "our",      "ours",     "ourselves",  "out",       "over",
    "own",      "re",       "s",          "same",      "shan",
    "shan't",   "she",      "she's",      "should",    "should've",
    "shouldn",  "shouldn't", "so",        "some",      "such",
    "t",        "than",     "that",       "that'll",   "the",
    "their",    "theirs",   "them",       "themselves", "then",
    "there",    "these",    "they",       "this",      "those",
    "through",  "to",       "too",        "under",     "until",
    "up",       "ve",       "very",       "was",       "wasn",
    "wasn't",   "we",       "were",       "weren",     "weren't",
    "what",     "when",     "where",      "which",     "while",
    "who",      "whom",     "why",        "will",      "with",
    "won",      "won't",    "wouldn",     "wouldn't",  "y",
    "you",      "you'd",    "you'll",     "you're",    "you've",
    "your",     "yours",    "yourself",   "yourselves",
};

std::uint64_t ParseCount(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DataError("bad count '" + std::string(field) + "'", line_no);
  }
  return value;
}

}  // namespace

void Dictionary::Add(std::string_view word, std::uint64_t count) {
  freq_[ToLowerAscii(word)] += count;
}

bool Dictionary::Contains(std::string_view word) const {
  return freq_.contains(ToLowerAscii(word));
}

std::uint64_t Dictionary::Frequency(std::string_view word) const {
  auto it = freq_.find(ToLowerAscii(word));
  return it == freq_.end() ? 0 : it->second;
}

Dictionary Dictionary::FromSentences(std::span<const Sentence> sentences) {
  Dictionary dict;
  for (const auto& s : sentences) {
    for (const auto& tok : s.tokens()) {
      if (IsAlphabeticToken(tok)) dict.Add(tok);
    }
  }
  return dict;
}

Dictionary Dictionary::Read(std::istream& in) {
  Dictionary dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      dict.Add(line, 1);
    } else {
      dict.Add(std::string_view(line).substr(0, tab),
               ParseCount(std::string_view(line).substr(tab + 1), line_no));
    }
  }
  return dict;
}

Dictionary Dictionary::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dictionary " + path.string());
  return Read(in);
}

const StopwordSet& DefaultStopwords() {
  static const StopwordSet kSet = [] {
    StopwordSet set;
    for (auto w : kStopwords) set.emplace(w);
    return set;
  }();
  return kSet;
}

std::span<const std::string_view> DefaultStopwordList() { return kStopwords; }

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword list " + path.string());
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string word = NormalizeForLookup(line);
    if (!word.empty()) words.insert(std::move(word));
  }
  return words;
}

std::map<std::string, std::uint64_t> LoadTokenCounts(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open token counts " + path.string());
  std::map<std::string, std::uint64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError("expected token<TAB>count", line_no);
    }
    counts[line.substr(0, tab)] +=
        ParseCount(std::string_view(line).substr(tab + 1), line_no);
  }
  return counts;
}

}  // namespace draftrev
