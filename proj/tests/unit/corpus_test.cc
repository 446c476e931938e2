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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "draftrev/random.h"
#include "draftrev/text.h"
#include "test_paths.h"

namespace draftrev {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, SplitsTerminalPunctuation) {
  EXPECT_EQ(Tokenize("We propose a model."),
            (Tokens{"We", "propose", "a", "model", "."}));
}

TEST(Tokenize, KeepsMaskWhole) {
  EXPECT_EQ(Tokenize("the above <*> efficiently calculated"),
            (Tokens{"the", "above", "<*>", "efficiently", "calculated"}));
  EXPECT_EQ(Tokenize("word<*>"), (Tokens{"word", "<*>"}));
  EXPECT_EQ(Tokenize("(<*>)"), (Tokens{"(", "<*>", ")"}));
}

TEST(Tokenize, EmptyInput) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("   \t ").empty());
}

TEST(Tokenize, DetachesLeadingAndTrailingMarks) {
  EXPECT_EQ(Tokenize("(see Fig. 2), \"ok\""),
            (Tokens{"(", "see", "Fig", ".", "2", ")", ",", "\"", "ok", "\""}));
  EXPECT_EQ(Tokenize("state-of-the-art"), (Tokens{"state-of-the-art"}));
}

TEST(Tokenize, IsAFixedPointOnFuzzedText) {
  const std::vector<std::string> pieces = {
      "a", "Model", ".", ",", "(", ")", "<*>", "<", "*", ">", "x.y", "\"",
      "é", "α", "--", "?!", " ", "  ", "\t", "'s", "e.g.", "[1]", "<*>."};
  Rng rng(11);
  for (int trial = 0; trial < 20000; ++trial) {
    std::string text;
    const auto n = rng.Below(12);
    for (std::uint64_t i = 0; i < n; ++i) text += pieces[rng.Below(pieces.size())];
    const auto once = Tokenize(text);
    EXPECT_EQ(Tokenize(Join(once)), once) << "input: [" << text << "]";
  }
}

TEST(SentenceType, RejectsInvalidUtf8) {
  EXPECT_THROW(Sentence("bad \xff byte"), DataError);
}

TEST(SentenceType, CountsScalarValues) {
  const Sentence s("αβ c");
  EXPECT_EQ(s.char_len(), 4u);
  EXPECT_EQ(s.tokens().size(), 2u);
  const Tokens toks = {"a", "b", "."};
  EXPECT_EQ(Sentence::FromTokens(toks).text(), "a b .");
}

TEST(DraftPairType, DetectsMaskAndGuardsReference) {
  const DraftPair p(Sentence("a <*> b"), Sentence("A and B"));
  EXPECT_TRUE(p.has_mask());
  EXPECT_FALSE(DraftPair(Sentence("a b"), Sentence("a b")).has_mask());
  EXPECT_THROW(DraftPair(Sentence("a"), Sentence("b <*>")), DataError);
}

std::string Sized(std::size_t n, char fill = 'a') {
  // Words of five letters separated by spaces, cut to exactly n characters.
  std::string s;
  while (s.size() < n) s += std::string(5, fill) + " ";
  s.resize(n);
  if (s.back() == ' ') s.back() = fill;
  return s;
}

TEST(FinalFilter, CharacterBounds) {
  const CorpusFilterConfig cfg;
  EXPECT_FALSE(PassesFinalFilter(Sentence(Sized(69)), cfg));
  EXPECT_TRUE(PassesFinalFilter(Sentence(Sized(70)), cfg));
  EXPECT_TRUE(PassesFinalFilter(Sentence(Sized(100)), cfg));
  EXPECT_TRUE(PassesFinalFilter(Sentence(Sized(120)), cfg));
  EXPECT_FALSE(PassesFinalFilter(Sentence(Sized(121)), cfg));
}

TEST(FinalFilter, GreekLetterDrops) {
  std::string s = Sized(83) + " α";  // 85 scalar values
  ASSERT_EQ(Sentence(s).char_len(), 85u);
  EXPECT_FALSE(PassesFinalFilter(Sentence(s), CorpusFilterConfig{}));
}

TEST(FinalFilter, ForbiddenClasses) {
  const auto& all = DefaultForbiddenCharClasses();
  const auto classes = [&](const std::string& t) {
    return ForbiddenClassesIn(Sentence(t), all);
  };
  EXPECT_EQ(classes("we use x = y here"), Tokens{"math"});
  EXPECT_EQ(classes("the loss ∑ grows"), Tokens{"math"});
  EXPECT_EQ(classes("see https://example.org for code"), Tokens{"url"});
  EXPECT_EQ(classes("see www.example.org for code"), Tokens{"url"});
  EXPECT_EQ(classes("as shown in [12] before"), Tokens{"citation"});
  EXPECT_EQ(classes("as Smith et al. showed"), Tokens{"citation"});
  EXPECT_EQ(classes("as shown (Smith, 2018) before"), Tokens{"citation"});
  EXPECT_EQ(classes("a bullet • here"), Tokens{"special"});
  EXPECT_TRUE(classes("a plain sentence, with commas (and parens).").empty());
  // Only the requested classes are checked.
  EXPECT_TRUE(ForbiddenClassesIn(Sentence("alpha α"), {"url"}).empty());
}

TEST(FinalFilter, OutputIsOrderedSubsetSatisfyingConditions) {
  std::vector<Sentence> in;
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    std::string s = Sized(50 + rng.Below(100));
    if (rng.Bernoulli(0.2)) s[10] = '=';
    in.emplace_back(s);
  }
  const CorpusFilterConfig cfg;
  const auto out = FilterFinalSentences(in, cfg);
  std::size_t j = 0;
  for (const auto& s : out) {
    while (j < in.size() && !(in[j] == s)) ++j;
    ASSERT_LT(j, in.size());
    EXPECT_TRUE(PassesFinalFilter(s, cfg));
    ++j;
  }
  EXPECT_EQ(FilterFinalSentences(in, cfg).size(), out.size());
}

TEST(TrainingFilter, Examples) {
  const CorpusFilterConfig cfg;
  const std::unordered_set<std::string> none;
  EXPECT_FALSE(PassesTrainingFilter(Sentence("one two three four"), cfg, none));
  std::string clean;
  for (int i = 0; i < 20; ++i) clean += (i ? " " : "") + std::string("word");
  EXPECT_TRUE(PassesTrainingFilter(Sentence(clean), cfg, none));
  // 20 tokens with 40% alphabetic characters: 8 of 20 non-space chars.
  std::string numeric;
  for (int i = 0; i < 20; ++i) numeric += (i ? " " : "") + std::string(i < 8 ? "a" : "1");
  ASSERT_NEAR(AlphabeticRatio(Sentence(numeric)), 0.4, 1e-12);
  EXPECT_FALSE(PassesTrainingFilter(Sentence(numeric), cfg, none));
  const std::unordered_set<std::string> excl = {NormalizeForLookup(clean)};
  EXPECT_FALSE(PassesTrainingFilter(Sentence("WORD   " + clean.substr(5)), cfg, excl));
  EXPECT_EQ(FilterTrainingSentences(std::vector<Sentence>{Sentence(clean)}, cfg, excl).size(), 0u);
}

TEST(FilterConfigValidation, RejectsBadValues) {
  CorpusFilterConfig cfg;
  cfg.min_chars = 200;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.min_tokens = 40;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.min_alpha_ratio = 1.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.forbidden_char_classes = {"emoji"};
  EXPECT_THROW(cfg.Validate(), ConfigError);
  EXPECT_NO_THROW(CorpusFilterConfig{}.Validate());
}

TEST(ReadSentencesTest, ReportsBadLinesAndContinues) {
  std::istringstream in("first line\nbad \xff\n\nthird\n");
  const auto r = ReadSentences(in);
  ASSERT_EQ(r.sentences.size(), 2u);
  EXPECT_EQ(r.lines, (std::vector<std::size_t>{1, 4}));
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 2u);

  std::istringstream blanks("a\n\nb\n");
  EXPECT_EQ(ReadSentences(blanks, true).sentences.size(), 3u);
}

TEST(LoadPairsTest, TsvExamples) {
  std::istringstream good("a <*> b\tA and B\n");
  const auto r = ReadPairs(good, PairFormat::kTsv);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_TRUE(r.pairs[0].has_mask());

  std::istringstream three("a\tb\tc\nx\ty\n");
  const auto bad = ReadPairs(three, PairFormat::kTsv);
  ASSERT_EQ(bad.errors.size(), 1u);
  EXPECT_EQ(bad.errors[0].line, 1u);
  EXPECT_EQ(bad.pairs.size(), 1u);

  std::istringstream empty("");
  const auto none = ReadPairs(empty, PairFormat::kTsv);
  EXPECT_TRUE(none.pairs.empty());
  EXPECT_TRUE(none.errors.empty());
}

TEST(LoadPairsTest, Jsonl) {
  std::istringstream in(
      "{\"draft\": \"a <*>\", \"reference\": \"a b\"}\n"
      "{\"draft\": 3}\n"
      "not json\n");
  const auto r = ReadPairs(in, PairFormat::kJsonl);
  ASSERT_EQ(r.pairs.size(), 1u);
  ASSERT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].line, 2u);
  EXPECT_EQ(r.errors[1].line, 3u);
}

TEST(LoadPairsTest, MissingFileAndFormats) {
  EXPECT_THROW(LoadPairs("/nonexistent/pairs.tsv", PairFormat::kTsv), IoError);
  EXPECT_EQ(ParsePairFormat("jsonl"), PairFormat::kJsonl);
  EXPECT_THROW(ParsePairFormat("xml"), ConfigError);
  EXPECT_EQ(GuessPairFormat("x.jsonl"), PairFormat::kJsonl);
  EXPECT_EQ(GuessPairFormat("x.tsv"), PairFormat::kTsv);
}

TEST(LoadPairsTest, TsvRoundTrip) {
  testing::ScratchDir dir;
  std::vector<DraftPair> pairs = {
      DraftPair(Sentence("a <*> b"), Sentence("a c b")),
      DraftPair(Sentence("x y ."), Sentence("x z ."))};
  std::ostringstream out;
  WritePairTsv(out, pairs);
  testing::WriteFile(dir / "p.tsv", out.str());
  const auto back = LoadPairs(dir / "p.tsv", PairFormat::kTsv);
  ASSERT_EQ(back.pairs.size(), 2u);
  EXPECT_EQ(back.pairs[0].draft().text(), "a <*> b");
  EXPECT_EQ(back.pairs[1].reference().text(), "x z .");
}

}  // namespace
}  // namespace draftrev
