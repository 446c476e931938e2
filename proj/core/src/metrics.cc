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

#include "draftrev/metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "draftrev/error.h"
#include "draftrev/lm.h"
#include "draftrev/parallel.h"
#include "draftrev/quality.h"
#include "draftrev/text.h"

namespace draftrev::metrics {

namespace {

std::unordered_map<std::string, std::size_t> NGramCounts(
    std::span<const std::string> tokens, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

// Key for orthography-only differences: lowercase, no hyphens or spaces.
std::string OrthographyKey(std::span<const std::string> tokens) {
  std::string key;
  for (const auto& t : tokens) {
    for (char c : ToLowerAscii(t)) {
      if (c != '-' && c != ' ') key.push_back(c);
    }
  }
  return key;
}

enum class Op { kMatch, kSubstitute, kDelete, kInsert };

std::vector<Op> Align(std::span<const std::string> a,
                      std::span<const std::string> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  const auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return d[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  std::vector<Op> ops;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1] && at(i, j) == at(i - 1, j - 1)) {
      ops.push_back(Op::kMatch);
      --i;
      --j;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      ops.push_back(Op::kSubstitute);
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ops.push_back(Op::kDelete);
      --i;
    } else {
      ops.push_back(Op::kInsert);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Whether the indefinite article before `word` should be "an".
bool HasVowelOnset(std::string_view lower) {
  static constexpr std::string_view kConsonantSound[] = {
      "uni", "use", "usa", "usu", "uti", "ure", "eu", "one", "once", "ubiq"};
  static constexpr std::string_view kVowelSound[] = {"hour", "honest", "honor",
                                                     "honour", "heir"};
  for (auto p : kConsonantSound) {
    if (StartsWith(lower, p)) return false;
  }
  for (auto p : kVowelSound) {
    if (StartsWith(lower, p)) return true;
  }
  const char c = lower.empty() ? '\0' : lower[0];
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsAllUpper(std::string_view token) {
  bool any = false;
  for (char c : token) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') any = true;
  }
  return any;
}

bool IsClosingMark(std::string_view tok) {
  return tok == ")" || tok == "]" || tok == "}" || tok == "\"" || tok == "'" ||
         tok == "\xE2\x80\x9D" || tok == "\xE2\x80\x99";
}

template <typename T>
double MeanOf(const std::vector<T>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& x : xs) sum += static_cast<double>(x);
  return sum / static_cast<double>(xs.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// BLEU

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (other.matches.size() != matches.size()) {
    throw ConfigError("cannot add BLEU statistics of different orders");
  }
  for (std::size_t n = 0; n < matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

BleuStats CollectBleuStats(std::span<const std::string> hyp,
                           std::span<const std::string> ref, int max_order) {
  if (max_order < 1) throw ConfigError("BLEU max_order must be at least 1");
  BleuStats stats(max_order);
  stats.hyp_length = hyp.size();
  stats.ref_length = ref.size();
  for (int n = 1; n <= max_order; ++n) {
    const auto h = NGramCounts(hyp, static_cast<std::size_t>(n));
    const auto r = NGramCounts(ref, static_cast<std::size_t>(n));
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : h) {
      total += count;
      auto it = r.find(gram);
      if (it != r.end()) matched += std::min(count, it->second);
    }
    stats.matches[n - 1] = matched;
    stats.totals[n - 1] = total;
  }
  return stats;
}

double BleuFromStats(const BleuStats& stats, const BleuConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw ConfigError("BLEU epsilon must be positive");
  if (stats.hyp_length == 0) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (std::size_t n = 0; n < stats.totals.size(); ++n) {
    if (stats.totals[n] == 0) continue;
    const double num = stats.matches[n] == 0
                           ? cfg.epsilon
                           : static_cast<double>(stats.matches[n]);
    log_sum += std::log(num / static_cast<double>(stats.totals[n]));
    ++orders;
  }
  if (orders == 0) return 0.0;
  const double hyp = static_cast<double>(stats.hyp_length);
  const double ref = static_cast<double>(stats.ref_length);
  const double log_bp = hyp < ref ? 1.0 - ref / hyp : 0.0;
  return std::exp(log_bp + log_sum / orders);
}

double CorpusBleu(std::span<const Sentence> hypotheses,
                  std::span<const Sentence> references,
                  const BleuConfig& cfg) {
  if (hypotheses.empty()) throw DataError("BLEU needs at least one record");
  if (hypotheses.size() != references.size()) {
    throw DataError("BLEU inputs differ in length: " +
                    std::to_string(hypotheses.size()) + " hypotheses vs " +
                    std::to_string(references.size()) + " references");
  }
  BleuStats total(cfg.max_order);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    total += CollectBleuStats(hypotheses[i].tokens(), references[i].tokens(),
                              cfg.max_order);
  }
  return BleuFromStats(total, cfg);
}

double SentenceBleu(const Sentence& hypothesis, const Sentence& reference,
                    const BleuConfig& cfg) {
  return BleuFromStats(
      CollectBleuStats(hypothesis.tokens(), reference.tokens(), cfg.max_order),
      cfg);
}

// ---------------------------------------------------------------------------
// ROUGE-L

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore RougeL(const Sentence& hypothesis, const Sentence& reference,
                  double beta) {
  RougeScore out;
  const auto& h = hypothesis.tokens();
  const auto& r = reference.tokens();
  if (h.empty() || r.empty()) {
    out.degenerate = true;
    return out;
  }
  out.lcs = LcsLength(h, r);
  if (out.lcs == 0) return out;
  out.precision = static_cast<double>(out.lcs) / static_cast<double>(h.size());
  out.recall = static_cast<double>(out.lcs) / static_cast<double>(r.size());
  const double b2 = beta * beta;
  out.f = (1.0 + b2) * out.precision * out.recall /
          (out.recall + b2 * out.precision);
  return out;
}

// ---------------------------------------------------------------------------
// Edits

std::string_view EditTypeName(EditType t) {
  switch (t) {
    case EditType::kInsertion: return "insertion";
    case EditType::kDeletion: return "deletion";
    case EditType::kSubstitution: return "substitution";
    case EditType::kOrthography: return "orthography";
    case EditType::kSpelling: return "spelling";
    case EditType::kPunctuation: return "punctuation";
    case EditType::kOther: return "other";
  }
  return "other";
}

EditType ParseEditType(std::string_view name) {
  for (EditType t : kAllEditTypes) {
    if (EditTypeName(t) == name) return t;
  }
  throw ConfigError("unknown edit type: " + std::string(name));
}

EditType ClassifyEdit(std::span<const std::string> source_side,
                      std::span<const std::string> target_side,
                      const Dictionary& dictionary) {
  const auto all_punct = [](std::span<const std::string> xs) {
    return std::all_of(xs.begin(), xs.end(),
                       [](const std::string& t) { return IsPunctuationToken(t); });
  };
  if (all_punct(source_side) && all_punct(target_side)) {
    return EditType::kPunctuation;
  }
  if (!source_side.empty() && !target_side.empty() &&
      OrthographyKey(source_side) == OrthographyKey(target_side)) {
    return EditType::kOrthography;
  }
  if (source_side.empty()) return EditType::kInsertion;
  if (target_side.empty()) return EditType::kDeletion;
  if (source_side.size() == 1 && target_side.size() == 1) {
    const auto& s = source_side[0];
    const auto& t = target_side[0];
    if (IsWordToken(s) && IsWordToken(t) && dictionary.Contains(t) &&
        LevenshteinChars(ToLowerAscii(s), ToLowerAscii(t)) <= 2) {
      return EditType::kSpelling;
    }
    return EditType::kSubstitution;
  }
  return EditType::kOther;
}

std::vector<EditSpan> ExtractEdits(const Sentence& source,
                                   const Sentence& target,
                                   const Dictionary& dictionary) {
  const auto& a = source.tokens();
  const auto& b = target.tokens();
  const auto ops = Align(a, b);
  std::vector<EditSpan> edits;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k] == Op::kMatch) {
      ++i;
      ++j;
      ++k;
      continue;
    }
    EditSpan span;
    span.start = i;
    const std::size_t j0 = j;
    for (; k < ops.size() && ops[k] != Op::kMatch; ++k) {
      if (ops[k] != Op::kInsert) ++i;
      if (ops[k] != Op::kDelete) ++j;
    }
    span.end = i;
    span.replacement.assign(b.begin() + static_cast<std::ptrdiff_t>(j0),
                            b.begin() + static_cast<std::ptrdiff_t>(j));
    span.type = ClassifyEdit(
        std::span<const std::string>(a).subspan(span.start, span.end - span.start),
        span.replacement, dictionary);
    edits.push_back(std::move(span));
  }
  return edits;
}

std::vector<std::string> ApplyEdits(std::span<const std::string> source,
                                    std::span<const EditSpan> edits) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (const auto& e : edits) {
    if (e.start < pos || e.end < e.start || e.end > source.size()) {
      throw ConfigError("edits must be sorted, disjoint and in range");
    }
    out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(pos),
               source.begin() + static_cast<std::ptrdiff_t>(e.start));
    out.insert(out.end(), e.replacement.begin(), e.replacement.end());
    pos = e.end;
  }
  out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(pos),
             source.end());
  return out;
}

Prf PrfFromCounts(const EditCounts& c, double beta) {
  Prf out;
  if (c.hypothesis == 0) {
    out.precision = c.gold == 0 ? 1.0 : 0.0;
  } else {
    out.precision =
        static_cast<double>(c.matched) / static_cast<double>(c.hypothesis);
  }
  out.recall = c.gold == 0
                   ? 1.0
                   : static_cast<double>(c.matched) / static_cast<double>(c.gold);
  const double b2 = beta * beta;
  const double denom = b2 * out.precision + out.recall;
  out.f = denom == 0.0 ? 0.0
                       : (1.0 + b2) * out.precision * out.recall / denom;
  return out;
}

EditCounts CountEditMatches(const Sentence& source, const Sentence& hypothesis,
                            const Sentence& reference,
                            const Dictionary& dictionary) {
  const auto h = ExtractEdits(source, hypothesis, dictionary);
  const auto g = ExtractEdits(source, reference, dictionary);
  EditCounts c;
  c.hypothesis = h.size();
  c.gold = g.size();
  for (const auto& e : h) {
    if (std::any_of(g.begin(), g.end(),
                    [&](const EditSpan& x) { return x.SameEdit(e); })) {
      ++c.matched;
    }
  }
  return c;
}

Prf EditPrf(const Sentence& source, const Sentence& hypothesis,
            const Sentence& reference, const Dictionary& dictionary) {
  return PrfFromCounts(
      CountEditMatches(source, hypothesis, reference, dictionary));
}

// ---------------------------------------------------------------------------
// Grammaticality

std::string_view GrammarRuleName(GrammarRule r) {
  switch (r) {
    case GrammarRule::kDuplicateWord: return "duplicate_word";
    case GrammarRule::kArticleAgreement: return "article_agreement";
    case GrammarRule::kInitialCapital: return "initial_capital";
    case GrammarRule::kUnbalancedBracket: return "unbalanced_bracket";
    case GrammarRule::kTerminalPunctuation: return "terminal_punctuation";
  }
  return "";
}

const std::set<GrammarRule>& AllGrammarRules() {
  static const std::set<GrammarRule> kAll = {
      GrammarRule::kDuplicateWord, GrammarRule::kArticleAgreement,
      GrammarRule::kInitialCapital, GrammarRule::kUnbalancedBracket,
      GrammarRule::kTerminalPunctuation};
  return kAll;
}

GrammarRule ParseGrammarRule(std::string_view name) {
  for (GrammarRule r : AllGrammarRules()) {
    if (GrammarRuleName(r) == name) return r;
  }
  throw ConfigError("unknown grammar rule: " + std::string(name));
}

RuleBasedDetector::RuleBasedDetector(std::set<GrammarRule> rules)
    : rules_(std::move(rules)) {}

std::vector<DetectedError> RuleBasedDetector::Detect(const Sentence& s) const {
  const auto& t = s.tokens();
  std::vector<DetectedError> out;
  const auto on = [&](GrammarRule r) { return rules_.contains(r); };

  if (on(GrammarRule::kInitialCapital)) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (IsPunctuationToken(t[i])) continue;
      if (IsWordToken(t[i]) && t[i][0] >= 'a' && t[i][0] <= 'z') {
        out.push_back({GrammarRule::kInitialCapital, i});
      }
      break;
    }
  }
  if (on(GrammarRule::kDuplicateWord)) {
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (IsWordToken(t[i]) && IsWordToken(t[i - 1]) &&
          ToLowerAscii(t[i]) == ToLowerAscii(t[i - 1])) {
        out.push_back({GrammarRule::kDuplicateWord, i});
      }
    }
  }
  if (on(GrammarRule::kArticleAgreement)) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const std::string art = ToLowerAscii(t[i]);
      if (art != "a" && art != "an") continue;
      const auto& next = t[i + 1];
      if (!IsAlphabeticToken(next) || IsAllUpper(next)) continue;
      if ((art == "a") == HasVowelOnset(ToLowerAscii(next))) {
        out.push_back({GrammarRule::kArticleAgreement, i});
      }
    }
  }
  if (on(GrammarRule::kUnbalancedBracket)) {
    std::vector<std::pair<char, std::size_t>> stack;
    std::size_t quotes = 0;
    std::size_t last_quote = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (char c : t[i]) {
        if (c == '(' || c == '[' || c == '{') {
          stack.emplace_back(c, i);
        } else if (c == ')' || c == ']' || c == '}') {
          const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
          if (!stack.empty() && stack.back().first == open) {
            stack.pop_back();
          } else {
            out.push_back({GrammarRule::kUnbalancedBracket, i});
          }
        } else if (c == '"') {
          ++quotes;
          last_quote = i;
        }
      }
    }
    for (const auto& [c, i] : stack) {
      out.push_back({GrammarRule::kUnbalancedBracket, i});
    }
    if (quotes % 2 == 1) {
      out.push_back({GrammarRule::kUnbalancedBracket, last_quote});
    }
  }
  if (on(GrammarRule::kTerminalPunctuation) && !t.empty()) {
    std::size_t end = t.size();
    while (end > 0 && IsClosingMark(t[end - 1])) --end;
    const bool ok = end > 0 && (t[end - 1] == "." || t[end - 1] == "?" ||
                                t[end - 1] == "!");
    if (!ok) out.push_back({GrammarRule::kTerminalPunctuation, t.size() - 1});
  }
  return out;
}

double GrammaticalityFromCounts(std::size_t errors, std::size_t tokens) {
  if (tokens == 0) throw DataError("grammaticality of an empty sentence");
  return std::max(0.0, 1.0 - static_cast<double>(errors) /
                                 static_cast<double>(tokens));
}

double Grammaticality(const Sentence& s, const ErrorDetector& detector) {
  if (s.tokens().empty()) {
    throw DataError("grammaticality of an empty sentence");
  }
  return GrammaticalityFromCounts(detector.CountErrors(s), s.tokens().size());
}

// ---------------------------------------------------------------------------
// Readability and style

std::size_t CountSyllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') w.push_back(c);
  }
  if (w.empty()) return 1;
  std::size_t count = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = IsVowel(c);
    if (v && !in_group) ++count;
    in_group = v;
  }
  if (w.back() == 'e' && count > 1) {
    const std::size_t n = w.size();
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !IsVowel(w[n - 3]);
    const bool double_e = n >= 2 && w[n - 2] == 'e';
    if (!consonant_le && !double_e) --count;
  }
  return std::max<std::size_t>(count, 1);
}

std::vector<std::string> WordTokens(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& tok : s.tokens()) {
    if (IsWordToken(tok)) out.push_back(tok);
  }
  return out;
}

double FleschReadingEase(const Sentence& s) {
  const auto words = WordTokens(s);
  if (words.empty()) throw DataError("reading ease needs at least one word");
  std::size_t syllables = 0;
  for (const auto& w : words) syllables += CountSyllables(w);
  const double n = static_cast<double>(words.size());
  return 206.835 - 1.015 * n - 84.6 * (static_cast<double>(syllables) / n);
}

bool IsBeForm(std::string_view lower) {
  static const std::unordered_set<std::string_view> kForms = {
      "am",    "is",     "are",    "was",     "were",  "be",
      "been",  "being",  "isn't",  "aren't",  "wasn't", "weren't"};
  return kForms.contains(lower);
}

bool IsAdverb(std::string_view lower) {
  static const std::unordered_set<std::string_view> kWords = {
      "not",  "also", "then",   "still",   "often",   "always",    "never",
      "thus", "well", "now",    "just",    "even",    "already",   "further",
      "first", "therefore", "hence", "very", "much",  "rather",    "quite",
      "once", "again", "sometimes", "seldom"};
  static const std::unordered_set<std::string_view> kLyNouns = {
      "family",   "supply", "apply",    "reply",  "rely",      "italy",
      "july",     "anomaly", "assembly", "monopoly", "multiply", "comply",
      "imply",    "butterfly", "jelly", "belly",  "bully",     "holly",
      "lily",     "ally",   "fly",      "only"};
  if (kWords.contains(lower)) return true;
  return lower.size() >= 4 && lower.ends_with("ly") && !kLyNouns.contains(lower);
}

bool IsPastParticiple(std::string_view lower) {
  static const std::unordered_set<std::string_view> kIrregular = {
      "arisen",  "awoken",   "beaten",   "become",    "begun",    "bent",
      "bitten",  "blown",    "broken",   "brought",   "built",    "burnt",
      "bought",  "caught",   "chosen",   "come",      "cost",     "cut",
      "dealt",   "done",     "drawn",    "driven",    "drunk",    "eaten",
      "fallen",  "fed",      "felt",     "fought",    "found",    "forgotten",
      "forgiven", "frozen",  "given",    "gone",      "grown",    "hung",
      "had",     "heard",    "hidden",   "hit",       "held",     "hurt",
      "kept",    "known",    "laid",     "led",       "learnt",   "left",
      "lent",    "let",      "lain",     "lit",       "lost",     "made",
      "meant",   "met",      "paid",     "put",       "read",     "ridden",
      "rung",    "risen",    "run",      "said",      "seen",     "sought",
      "sold",    "sent",     "set",      "shaken",    "shown",    "shut",
      "sung",    "sunk",     "sat",      "slept",     "slid",     "spoken",
      "spent",   "spun",     "split",    "spread",    "stood",    "stolen",
      "stuck",   "struck",   "sworn",    "swept",     "swum",     "taken",
      "taught",  "torn",     "told",     "thought",   "thrown",   "understood",
      "woken",   "worn",     "won",      "written",   "withdrawn", "undertaken",
      "overcome", "undergone", "upheld", "misled",   "mistaken", "sewn",
      "proven",  "outdone",  "overseen", "overtaken", "rewritten", "bound",
      "ground",  "wound",    "shot",     "sped",      "spelt",    "fit",
      "quit",    "shed",     "bred",     "fled",      "forbidden", "foreseen"};
  static const std::unordered_set<std::string_view> kNotEd = {
      "need",  "seed",   "speed",  "feed",  "bleed",  "breed",   "exceed",
      "proceed", "succeed", "indeed", "hundred", "embed", "shred", "sled",
      "naked", "wicked", "sacred", "kindred", "rugged", "ragged", "wretched",
      "greed", "creed",  "steed",  "weed"};
  static const std::unordered_set<std::string_view> kNotEn = {
      "often",  "seven",  "eleven", "even",   "heaven",  "oxygen",  "hydrogen",
      "nitrogen", "token", "citizen", "kitchen", "garden", "children", "women",
      "listen", "happen", "open",  "chicken", "screen", "between", "golden",
      "wooden", "sudden", "linen", "siren",  "queen",   "green",   "specimen",
      "abdomen", "omen",  "lumen", "dozen",  "warden",  "burden",  "season",
      "threaten", "strengthen", "lengthen", "widen", "broaden", "deepen",
      "soften", "sharpen", "weaken", "darken", "brighten", "flatten", "tighten",
      "loosen", "harden", "awaken", "seen"};
  if (kIrregular.contains(lower)) return true;
  if (lower.size() >= 4 && lower.ends_with("ed")) return !kNotEd.contains(lower);
  if (lower.size() >= 5 && lower.ends_with("en")) return !kNotEn.contains(lower);
  return false;
}

bool HasPassiveVoice(const Sentence& s) {
  std::vector<std::string> lower;
  for (const auto& t : s.tokens()) lower.push_back(ToLowerAscii(t));
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!IsBeForm(lower[i])) continue;
    for (std::size_t j = i + 1; j <= i + 2 && j < lower.size(); ++j) {
      if (IsPastParticiple(lower[j])) return true;
      if (!IsAdverb(lower[j])) break;
    }
  }
  return false;
}

bool HasWordRepetition(const Sentence& s, std::size_t window,
                       const StopwordSet& stopwords) {
  if (window == 0) throw ConfigError("repetition window must be at least 1");
  std::unordered_map<std::string, std::size_t> last;
  const auto& t = s.tokens();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!IsWordToken(t[i])) continue;
    std::string w = ToLowerAscii(t[i]);
    if (stopwords.contains(w)) continue;
    auto [it, inserted] = last.try_emplace(std::move(w), i);
    if (!inserted) {
      if (i - it->second <= window) return true;
      it->second = i;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Corpus evaluation

EvalAggregates AggregateRecords(std::span<const PairRecord> records,
                                const BleuConfig& bleu) {
  EvalAggregates agg;
  if (records.empty()) return agg;
  BleuStats total(bleu.max_order);
  EditCounts edits;
  std::vector<double> rouge;
  std::vector<double> gramm;
  std::vector<double> fre;
  std::vector<double> ppl;
  std::vector<std::size_t> lev;
  std::size_t passive = 0;
  std::size_t repetition = 0;
  for (const auto& r : records) {
    total += r.bleu_stats;
    edits += r.edits;
    rouge.push_back(r.rouge_l.f);
    lev.push_back(r.levenshtein_char);
    if (r.grammaticality) {
      gramm.push_back(*r.grammaticality);
    } else {
      ++agg.skipped_grammaticality;
    }
    if (r.fre) {
      fre.push_back(*r.fre);
    } else {
      ++agg.skipped_fre;
    }
    if (r.ppl) {
      ppl.push_back(*r.ppl);
    } else {
      ++agg.skipped_ppl;
    }
    passive += r.passive ? 1 : 0;
    repetition += r.repetition ? 1 : 0;
  }
  const double n = static_cast<double>(records.size());
  agg.corpus_bleu = BleuFromStats(total, bleu);
  agg.mean_rouge_l = MeanOf(rouge);
  agg.edit_prf = PrfFromCounts(edits);
  agg.mean_grammaticality = MeanOf(gramm);
  agg.mean_fre = MeanOf(fre);
  if (!ppl.empty()) agg.mean_ppl = MeanOf(ppl);
  agg.passive_fraction = static_cast<double>(passive) / n;
  agg.repetition_fraction = static_cast<double>(repetition) / n;
  agg.mean_levenshtein_char = MeanOf(lev);
  return agg;
}

EvalReport Evaluate(std::span<const Sentence> sources,
                    std::span<const Sentence> hypotheses,
                    std::span<const Sentence> references,
                    const Dictionary& dictionary, const lm::NGramModel* lm,
                    const EvalConfig& cfg, std::size_t jobs) {
  if (hypotheses.empty()) throw DataError("evaluation needs at least one record");
  if (sources.size() != hypotheses.size() ||
      references.size() != hypotheses.size()) {
    throw DataError("source, hypothesis and reference files differ in length (" +
                    std::to_string(sources.size()) + ", " +
                    std::to_string(hypotheses.size()) + ", " +
                    std::to_string(references.size()) + ")");
  }
  std::optional<quality::SpellChecker> checker;
  if (cfg.spellcheck_hypotheses) checker.emplace(dictionary);
  const RuleBasedDetector detector(cfg.grammar_rules);

  EvalReport report;
  report.records.resize(hypotheses.size());
  ParallelFor(hypotheses.size(), jobs, [&](std::size_t i) {
    const Sentence& hyp = hypotheses[i];
    const Sentence& ref = references[i];
    PairRecord& r = report.records[i];
    r.bleu_stats = CollectBleuStats(hyp.tokens(), ref.tokens(), cfg.bleu.max_order);
    r.bleu = BleuFromStats(r.bleu_stats, cfg.bleu);
    r.rouge_l = RougeL(hyp, ref, cfg.rouge_beta);
    r.levenshtein_char = LevenshteinChars(hyp.text(), ref.text());
    if (!hyp.tokens().empty()) r.grammaticality = Grammaticality(hyp, detector);
    if (!WordTokens(hyp).empty()) r.fre = FleschReadingEase(hyp);
    if (lm != nullptr) r.ppl = lm->Perplexity(hyp);
    r.passive = HasPassiveVoice(hyp);
    r.repetition = HasWordRepetition(hyp, cfg.repetition_window);
    if (checker) {
      const Sentence fixed(checker->Check(hyp).corrected_text);
      r.edits = CountEditMatches(sources[i], fixed, ref, dictionary);
    } else {
      r.edits = CountEditMatches(sources[i], hyp, ref, dictionary);
    }
    r.edit_prf = PrfFromCounts(r.edits);
  });
  report.aggregates = AggregateRecords(report.records, cfg.bleu);
  return report;
}

}  // namespace draftrev::metrics
