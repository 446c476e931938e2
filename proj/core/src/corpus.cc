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

#include "draftrev/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>

#include <nlohmann/json.hpp>

#include "draftrev/text.h"

namespace draftrev {

namespace {

const std::u32string kMask32 = U"<*>";

void EmitDetached(std::u32string_view part, std::vector<std::string>& out) {
  if (part.empty()) return;
  std::size_t first = 0;
  while (first < part.size() && IsPunct(part[first])) ++first;
  if (first == part.size()) {
    for (char32_t cp : part) out.push_back(EncodeUtf8(std::u32string(1, cp)));
    return;
  }
  std::size_t last = part.size();
  while (last > first && IsPunct(part[last - 1])) --last;
  for (std::size_t i = 0; i < first; ++i) {
    out.push_back(EncodeUtf8(std::u32string(1, part[i])));
  }
  out.push_back(EncodeUtf8(part.substr(first, last - first)));
  for (std::size_t i = last; i < part.size(); ++i) {
    out.push_back(EncodeUtf8(std::u32string(1, part[i])));
  }
}

void TokenizeChunk(std::u32string_view chunk, std::vector<std::string>& out) {
  while (!chunk.empty()) {
    const auto pos = chunk.find(kMask32);
    if (pos == std::u32string_view::npos) {
      EmitDetached(chunk, out);
      return;
    }
    EmitDetached(chunk.substr(0, pos), out);
    out.emplace_back(kMaskToken);
    chunk.remove_prefix(pos + kMask32.size());
  }
}

std::string TrimLine(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto not_space = [](char c) {
    return c != ' ' && c != '\t' && c != '\n' && c != '\r';
  };
  auto begin = std::find_if(line.begin(), line.end(), not_space);
  auto end = std::find_if(line.rbegin(), line.rend(), not_space).base();
  if (begin >= end) return {};
  return std::string(begin, end);
}

bool IsMathSymbol(char32_t cp) {
  switch (cp) {
    case U'=':
    case U'<':
    case U'>':
    case U'^':
    case U'\\':
    case U'|':
    case U'~':
    case U'{':
    case U'}':
    case U'_':
    case 0x00B1:
    case 0x00D7:
    case 0x00F7:
      return true;
    default:
      return (cp >= 0x2100 && cp <= 0x214F) || (cp >= 0x2190 && cp <= 0x22FF) ||
             (cp >= 0x27C0 && cp <= 0x27EF) || (cp >= 0x2980 && cp <= 0x2AFF) ||
             (cp >= 0x1D400 && cp <= 0x1D7FF);
  }
}

bool IsSpecialSymbol(char32_t cp) {
  return (cp < 0x20 && cp != U'\t') || (cp >= 0x7F && cp <= 0x9F) ||
         (cp >= 0xE000 && cp <= 0xF8FF) || cp == 0xFFFD || cp == 0x2022 ||
         (cp >= 0x25A0 && cp <= 0x25FF);
}

const std::regex& UrlPattern() {
  static const std::regex kRe(
      R"((https?|ftp)://|www\.|\b[A-Za-z0-9-]+\.(com|org|net|edu|gov|io|html?)\b)",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  return kRe;
}

const std::regex& CitationPattern() {
  static const std::regex kRe(
      "\\[\\s*\\d+(\\s*(,|;|-|\xE2\x80\x93)\\s*\\d+)*\\s*\\]"
      "|\\bet al\\."
      "|\\([A-Z][A-Za-z-]+( (and|&) [A-Z][A-Za-z-]+| et al\\.)?,? "
      "(19|20)\\d\\d[a-z]?\\)"
      "|CITATION|@cite|<cite>",
      std::regex::ECMAScript | std::regex::optimize);
  return kRe;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  const std::u32string cps = DecodeUtf8OrThrow(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && IsSpace(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !IsSpace(cps[j])) ++j;
    if (j > i) TokenizeChunk(std::u32string_view(cps).substr(i, j - i), out);
    i = j;
  }
  return out;
}

Sentence::Sentence(std::string text)
    : text_(std::move(text)),
      tokens_(Tokenize(text_)),
      char_len_(Utf8Length(text_)) {}

Sentence Sentence::FromTokens(std::span<const std::string> tokens) {
  return Sentence(Join(tokens));
}

DraftPair::DraftPair(Sentence draft, Sentence reference)
    : draft_(std::move(draft)), reference_(std::move(reference)) {
  if (reference_.text().find(kMaskToken) != std::string::npos) {
    throw DataError("reference contains the mask token <*>");
  }
  has_mask_ = std::find(draft_.tokens().begin(), draft_.tokens().end(),
                        kMaskToken) != draft_.tokens().end();
}

void CorpusFilterConfig::Validate() const {
  if (min_chars > max_chars) {
    throw ConfigError("min_chars must not exceed max_chars");
  }
  if (min_tokens > max_tokens) {
    throw ConfigError("min_tokens must not exceed max_tokens");
  }
  if (!(min_alpha_ratio >= 0.0 && min_alpha_ratio <= 1.0)) {
    throw ConfigError("min_alpha_ratio must be in [0, 1]");
  }
  for (const auto& name : forbidden_char_classes) {
    if (!DefaultForbiddenCharClasses().contains(name)) {
      throw ConfigError("unknown forbidden character class: " + name);
    }
  }
}

std::vector<std::string> ForbiddenClassesIn(
    const Sentence& s, const std::set<std::string>& classes) {
  std::vector<std::string> hits;
  const std::u32string cps = DecodeUtf8OrThrow(s.text());
  const auto any_of = [&](bool (*pred)(char32_t)) {
    return std::any_of(cps.begin(), cps.end(), pred);
  };
  // std::set iterates in sorted order, so the result is deterministic.
  for (const auto& name : classes) {
    bool hit = false;
    if (name == "math") {
      hit = any_of(IsMathSymbol);
    } else if (name == "greek") {
      hit = any_of(IsGreek);
    } else if (name == "special") {
      hit = any_of(IsSpecialSymbol);
    } else if (name == "url") {
      hit = std::regex_search(s.text(), UrlPattern());
    } else if (name == "citation") {
      hit = std::regex_search(s.text(), CitationPattern());
    } else {
      throw ConfigError("unknown forbidden character class: " + name);
    }
    if (hit) hits.push_back(name);
  }
  return hits;
}

double AlphabeticRatio(const Sentence& s) {
  std::size_t alpha = 0;
  std::size_t total = 0;
  for (char32_t cp : DecodeUtf8OrThrow(s.text())) {
    if (IsSpace(cp)) continue;
    ++total;
    if (IsAlphabetic(cp)) ++alpha;
  }
  return total == 0 ? 0.0 : static_cast<double>(alpha) / total;
}

bool PassesFinalFilter(const Sentence& s, const CorpusFilterConfig& cfg) {
  if (s.char_len() < cfg.min_chars || s.char_len() > cfg.max_chars) {
    return false;
  }
  return ForbiddenClassesIn(s, cfg.forbidden_char_classes).empty();
}

bool PassesTrainingFilter(const Sentence& s, const CorpusFilterConfig& cfg,
                          const std::unordered_set<std::string>& exclusion) {
  const std::size_t n = s.tokens().size();
  if (n < cfg.min_tokens || n > cfg.max_tokens) return false;
  if (AlphabeticRatio(s) < cfg.min_alpha_ratio) return false;
  return !exclusion.contains(NormalizeForLookup(s.text()));
}

std::vector<Sentence> FilterFinalSentences(std::span<const Sentence> sentences,
                                           const CorpusFilterConfig& cfg) {
  cfg.Validate();
  std::vector<Sentence> kept;
  for (const auto& s : sentences) {
    if (PassesFinalFilter(s, cfg)) kept.push_back(s);
  }
  return kept;
}

std::vector<Sentence> FilterTrainingSentences(
    std::span<const Sentence> sentences, const CorpusFilterConfig& cfg,
    const std::unordered_set<std::string>& exclusion) {
  cfg.Validate();
  std::vector<Sentence> kept;
  for (const auto& s : sentences) {
    if (PassesTrainingFilter(s, cfg, exclusion)) kept.push_back(s);
  }
  return kept;
}

SentenceReadResult ReadSentences(std::istream& in, bool keep_blank) {
  SentenceReadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = TrimLine(std::move(line));
    if (text.empty() && !keep_blank) continue;
    if (!IsValidUtf8(text)) {
      result.errors.push_back({line_no, "invalid UTF-8"});
      continue;
    }
    result.sentences.emplace_back(std::move(text));
    result.lines.push_back(line_no);
  }
  return result;
}

SentenceReadResult ReadSentenceFile(const std::filesystem::path& path,
                                    bool keep_blank) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadSentences(in, keep_blank);
}

PairFormat ParsePairFormat(std::string_view name) {
  if (name == "tsv") return PairFormat::kTsv;
  if (name == "jsonl") return PairFormat::kJsonl;
  throw ConfigError("unknown pair format: " + std::string(name));
}

PairFormat GuessPairFormat(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".json" ? PairFormat::kJsonl
                                           : PairFormat::kTsv;
}

PairLoadResult ReadPairs(std::istream& in, PairFormat format) {
  PairLoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!IsValidUtf8(line)) {
      result.errors.push_back({line_no, "invalid UTF-8"});
      continue;
    }
    std::string draft;
    std::string reference;
    if (format == PairFormat::kTsv) {
      const auto fields = std::count(line.begin(), line.end(), '\t') + 1;
      if (fields != 2) {
        result.errors.push_back(
            {line_no, "expected 2 tab-separated fields, found " +
                          std::to_string(fields)});
        continue;
      }
      const auto tab = line.find('\t');
      draft = line.substr(0, tab);
      reference = line.substr(tab + 1);
    } else {
      const auto obj = nlohmann::json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object() || !obj.contains("draft") ||
          !obj.contains("reference") || !obj["draft"].is_string() ||
          !obj["reference"].is_string()) {
        result.errors.push_back(
            {line_no, "expected an object with string fields "
                      "\"draft\" and \"reference\""});
        continue;
      }
      draft = obj["draft"].get<std::string>();
      reference = obj["reference"].get<std::string>();
    }
    try {
      result.pairs.emplace_back(Sentence(std::move(draft)),
                                Sentence(std::move(reference)));
    } catch (const DataError& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

PairLoadResult LoadPairs(const std::filesystem::path& path, PairFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadPairs(in, format);
}

void WritePairTsv(std::ostream& out, std::span<const DraftPair> pairs) {
  for (const auto& p : pairs) {
    out << p.draft().text() << '\t' << p.reference().text() << '\n';
  }
}

}  // namespace draftrev
