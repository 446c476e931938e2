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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "draftrev/lm.h"
#include "draftrev/random.h"
#include "oracles.h"
#include "toy_corpus.h"

namespace draftrev::metrics {
namespace {

using Tokens = std::vector<std::string>;

std::vector<Sentence> Sents(const std::vector<std::string>& texts) {
  std::vector<Sentence> out;
  for (const auto& t : texts) out.emplace_back(t);
  return out;
}

Tokens RandomTokens(Rng& rng, std::size_t max_len, std::size_t vocab) {
  Tokens t;
  for (auto n = rng.Below(max_len + 1); n > 0; --n) {
    t.push_back("w" + std::to_string(rng.Below(vocab)));
  }
  return t;
}

// --- BLEU ---

TEST(Bleu, IdenticalCorpusScoresOne) {
  const auto refs = Sents(testing::ToyCorpus(50, 3));
  EXPECT_DOUBLE_EQ(CorpusBleu(refs, refs), 1.0);
  EXPECT_DOUBLE_EQ(SentenceBleu(Sentence("short ."), Sentence("short .")), 1.0);
}

TEST(Bleu, DisjointCorpusIsNearZero) {
  const auto a = Sents({"alpha beta gamma delta epsilon", "zeta eta theta iota"});
  const auto b = Sents({"one two three four five", "six seven eight nine"});
  EXPECT_LT(CorpusBleu(a, b), 1e-3);
}

TEST(Bleu, HandCountedCorpus) {
  const auto hyp = Sents({"the cat sat on the mat", "a dog runs"});
  const auto ref = Sents({"the cat is on the mat", "a dog runs fast"});
  // Clipped matches 8/9, 5/7, 2/5, 0/3; lengths 9 vs 10.
  const double expected =
      std::exp(1.0 - 10.0 / 9.0) *
      std::exp((std::log(8.0 / 9.0) + std::log(5.0 / 7.0) + std::log(2.0 / 5.0) +
                std::log(1e-9 / 3.0)) /
               4.0);
  EXPECT_NEAR(CorpusBleu(hyp, ref), expected, 1e-6);
  EXPECT_NEAR(CorpusBleu(hyp, ref), 0.002714310971695839, 1e-12);
  const auto stats = CollectBleuStats(hyp[0].tokens(), ref[0].tokens());
  EXPECT_EQ(stats.matches, (std::vector<std::size_t>{5, 3, 1, 0}));
  EXPECT_EQ(stats.totals, (std::vector<std::size_t>{6, 5, 4, 3}));
}

TEST(Bleu, MatchesManualOracleOnRandomCorpora) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Tokens> h, r;
    std::vector<Sentence> hs, rs;
    for (auto n = 1 + rng.Below(5); n > 0; --n) {
      auto ht = RandomTokens(rng, 12, 6);
      auto rt = RandomTokens(rng, 12, 6);
      if (ht.empty()) ht.push_back("w0");
      if (rt.empty()) rt.push_back("w1");
      hs.push_back(Sentence::FromTokens(ht));
      rs.push_back(Sentence::FromTokens(rt));
      h.push_back(std::move(ht));
      r.push_back(std::move(rt));
    }
    const double want = testing::ManualCorpusBleu(h, r, 4, 1e-9);
    ASSERT_NEAR(CorpusBleu(hs, rs), want, 1e-12 + 1e-9 * want);
  }
}

TEST(Bleu, RangeAndOrderInvariance) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Sentence> hs, rs;
    for (auto n = 2 + rng.Below(6); n > 0; --n) {
      auto ht = RandomTokens(rng, 10, 5);
      auto rt = RandomTokens(rng, 10, 5);
      ht.push_back(".");
      rt.push_back(".");
      hs.push_back(Sentence::FromTokens(ht));
      rs.push_back(Sentence::FromTokens(rt));
    }
    const double b = CorpusBleu(hs, rs);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0);
    std::reverse(hs.begin(), hs.end());
    std::reverse(rs.begin(), rs.end());
    EXPECT_DOUBLE_EQ(CorpusBleu(hs, rs), b);
  }
}

TEST(Bleu, Errors) {
  EXPECT_THROW(CorpusBleu(std::vector<Sentence>{}, std::vector<Sentence>{}), DataError);
  EXPECT_THROW(CorpusBleu(Sents({"a"}), Sents({"a", "b"})), DataError);
}

// --- ROUGE-L ---

TEST(Rouge, Examples) {
  const Sentence h("a b c d");
  const Sentence r("a c b d");
  EXPECT_EQ(LcsLength(h.tokens(), r.tokens()), 3u);
  EXPECT_EQ(testing::EnumeratedLcs(h.tokens(), r.tokens()), 3u);
  const auto s = RougeL(h, r);
  EXPECT_DOUBLE_EQ(s.precision, 0.75);
  EXPECT_DOUBLE_EQ(s.recall, 0.75);
  EXPECT_NEAR(s.f, 0.75, 1e-12);
  EXPECT_DOUBLE_EQ(RougeL(r, r).f, 1.0);
  EXPECT_DOUBLE_EQ(RougeL(Sentence("x y"), Sentence("p q")).f, 0.0);
  const auto empty = RougeL(Sentence(""), r);
  EXPECT_TRUE(empty.degenerate);
  EXPECT_EQ(empty.f, 0.0);
}

TEST(Rouge, StandardFormulaWithRecallWeight) {
  // LCS 2, |h| = 2, |r| = 4: P = 1, R = 0.5.
  const auto s = RougeL(Sentence("a b"), Sentence("a x b y"));
  const double b2 = kRougeBeta * kRougeBeta;
  EXPECT_NEAR(s.f, (1 + b2) * 1.0 * 0.5 / (0.5 + b2 * 1.0), 1e-12);
}

TEST(Rouge, LcsMatchesEnumerationOracle) {
  Rng rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = RandomTokens(rng, 10, 3);
    const auto b = RandomTokens(rng, 10, 3);
    ASSERT_EQ(LcsLength(a, b), testing::EnumeratedLcs(a, b));
    if (!a.empty() && !b.empty()) {
      const auto s = RougeL(Sentence::FromTokens(a), Sentence::FromTokens(b));
      ASSERT_GE(s.f, 0.0);
      ASSERT_LE(s.f, 1.0);
    }
  }
}

// --- Edits ---

Dictionary Dict(std::initializer_list<const char*> ws) {
  Dictionary d;
  for (const char* w : ws) d.Add(w);
  return d;
}

TEST(Edits, Examples) {
  const Dictionary d = Dict({"the", "model"});
  EXPECT_TRUE(ExtractEdits(Sentence("a b c"), Sentence("a b c"), d).empty());
  const auto sub = ExtractEdits(Sentence("a b c"), Sentence("a X c"), d);
  ASSERT_EQ(sub.size(), 1u);
  EXPECT_EQ(sub[0].start, 1u);
  EXPECT_EQ(sub[0].end, 2u);
  EXPECT_EQ(sub[0].replacement, Tokens{"X"});
  EXPECT_EQ(sub[0].type, EditType::kSubstitution);
  const auto sp = ExtractEdits(Sentence("the modle"), Sentence("the model"), d);
  ASSERT_EQ(sp.size(), 1u);
  EXPECT_EQ(sp[0].type, EditType::kSpelling);
}

TEST(Edits, Classification) {
  const Dictionary d = Dict({"model"});
  const auto type = [&](const Tokens& a, const Tokens& b) { return ClassifyEdit(a, b, d); };
  EXPECT_EQ(type({}, {"new"}), EditType::kInsertion);
  EXPECT_EQ(type({"new"}, {}), EditType::kDeletion);
  EXPECT_EQ(type({","}, {";"}), EditType::kPunctuation);
  EXPECT_EQ(type({}, {"."}), EditType::kPunctuation);
  EXPECT_EQ(type({"Model"}, {"model"}), EditType::kOrthography);
  EXPECT_EQ(type({"state-of-the-art"}, {"state", "of", "the", "art"}), EditType::kOrthography);
  EXPECT_EQ(type({"modle"}, {"model"}), EditType::kSpelling);
  EXPECT_EQ(type({"modle"}, {"mode"}), EditType::kSubstitution);  // not in dictionary
  EXPECT_EQ(type({"cat"}, {"model"}), EditType::kSubstitution);
  EXPECT_EQ(type({"a", "b"}, {"c"}), EditType::kOther);
  for (auto t : kAllEditTypes) EXPECT_EQ(ParseEditType(EditTypeName(t)), t);
}

TEST(Edits, SpansAreWellFormedAndRoundTrip) {
  Rng rng(24);
  const Dictionary d = Dict({"w0", "w1", "w2"});
  for (int trial = 0; trial < 10000; ++trial) {
    auto src = RandomTokens(rng, 8, 5);
    auto tgt = RandomTokens(rng, 8, 5);
    if (rng.Bernoulli(0.3)) tgt = src;
    const auto s = Sentence::FromTokens(src);
    const auto t = Sentence::FromTokens(tgt);
    const auto edits = ExtractEdits(s, t, d);
    std::size_t prev_end = 0;
    for (const auto& e : edits) {
      ASSERT_LE(e.start, e.end);
      ASSERT_LE(e.end, src.size());
      ASSERT_GE(e.start, prev_end);
      prev_end = e.end;
      ASSERT_EQ(e.type, ClassifyEdit(std::span(src).subspan(e.start, e.end - e.start),
                                     e.replacement, d));
    }
    ASSERT_EQ(ApplyEdits(src, edits), tgt);
    if (src == tgt) {
      ASSERT_TRUE(edits.empty());
    }
  }
}

TEST(EditScores, Conventions) {
  const Dictionary d;
  const Sentence src("a b c d e");
  const Sentence ref("a X c Y e");
  const auto same = EditPrf(src, ref, ref, d);
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f, 1.0);
  const auto lazy = EditPrf(src, src, ref, d);
  EXPECT_EQ(lazy.recall, 0.0);
  EXPECT_EQ(lazy.f, 0.0);
  const auto half = EditPrf(src, Sentence("a X c d Z"), ref, d);
  EXPECT_DOUBLE_EQ(half.precision, 0.5);
  EXPECT_DOUBLE_EQ(half.recall, 0.5);
  EXPECT_DOUBLE_EQ(half.f, 0.5);
  const auto none = EditPrf(src, src, src, d);
  EXPECT_EQ(none.precision, 1.0);
  EXPECT_EQ(none.recall, 1.0);
  EXPECT_EQ(none.f, 1.0);
  const auto spurious = PrfFromCounts({0, 2, 0});
  EXPECT_EQ(spurious.precision, 0.0);
  EXPECT_EQ(spurious.recall, 1.0);
  EXPECT_EQ(spurious.f, 0.0);
}

TEST(EditScores, PerfectOnlyWhenEditSetsAgree) {
  Rng rng(25);
  const Dictionary d;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto src = RandomTokens(rng, 6, 4);
    const auto hyp = rng.Bernoulli(0.3) ? src : RandomTokens(rng, 6, 4);
    const auto ref = rng.Bernoulli(0.3) ? hyp : RandomTokens(rng, 6, 4);
    const auto s = Sentence::FromTokens(src);
    const auto h = Sentence::FromTokens(hyp);
    const auto r = Sentence::FromTokens(ref);
    const auto prf = EditPrf(s, h, r, d);
    for (double v : {prf.precision, prf.recall, prf.f}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    const auto hs = ExtractEdits(s, h, d);
    const auto gs = ExtractEdits(s, r, d);
    bool same = hs.size() == gs.size();
    for (std::size_t i = 0; same && i < hs.size(); ++i) same = hs[i].SameEdit(gs[i]);
    ASSERT_EQ(prf.f == 1.0, same);
  }
}

// --- Grammaticality ---

TEST(Grammar, FormulaOnCounts) {
  EXPECT_DOUBLE_EQ(GrammaticalityFromCounts(0, 7), 1.0);
  EXPECT_DOUBLE_EQ(GrammaticalityFromCounts(2, 10), 0.8);
  EXPECT_DOUBLE_EQ(GrammaticalityFromCounts(12, 10), 0.0);
  EXPECT_THROW(GrammaticalityFromCounts(0, 0), DataError);
}

TEST(Grammar, HandCountedSentences) {
  const RuleBasedDetector two({GrammarRule::kDuplicateWord, GrammarRule::kUnbalancedBracket});
  const Sentence s("the the model (works");
  EXPECT_EQ(two.CountErrors(s), 2u);
  EXPECT_DOUBLE_EQ(Grammaticality(s, two), 0.6);
  // The full rule set also flags the lowercase start and the missing period.
  const RuleBasedDetector all;
  EXPECT_EQ(all.CountErrors(s), 4u);
  EXPECT_DOUBLE_EQ(Grammaticality(s, all), 0.2);
  EXPECT_DOUBLE_EQ(Grammaticality(Sentence("The model works ."), all), 1.0);
  EXPECT_EQ(all.CountErrors(Sentence("We saw a apple and an model .")), 2u);
  EXPECT_EQ(all.CountErrors(Sentence("It is an hour and a university .")), 0u);
  EXPECT_EQ(all.CountErrors(Sentence("It was \"quoted .")), 1u);
  EXPECT_EQ(all.CountErrors(Sentence("It (was) [fine] .")), 0u);
  EXPECT_EQ(all.CountErrors(Sentence("Is it fine ?")), 0u);
  EXPECT_EQ(all.CountErrors(Sentence("It is \"fine.\"")), 0u);
  EXPECT_THROW(Grammaticality(Sentence(""), all), DataError);
  for (auto r : AllGrammarRules()) EXPECT_EQ(ParseGrammarRule(GrammarRuleName(r)), r);
}

TEST(Grammar, MoreErrorsNeverRaiseScore) {
  const RuleBasedDetector all;
  Rng rng(26);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t tokens = 1 + rng.Below(30);
    const std::size_t errors = rng.Below(tokens + 3);
    EXPECT_LE(GrammaticalityFromCounts(errors + 1, tokens),
              GrammaticalityFromCounts(errors, tokens));
  }
  // Doubling a word adds a duplicate error and a token; the score drops.
  const Sentence clean("The model works well .");
  const Sentence doubled("The model model works well .");
  EXPECT_LT(Grammaticality(doubled, all), Grammaticality(clean, all));
}

// --- Readability ---

TEST(Readability, Syllables) {
  EXPECT_EQ(CountSyllables("cat"), 1u);
  EXPECT_EQ(CountSyllables("make"), 1u);
  EXPECT_EQ(CountSyllables("table"), 2u);
  EXPECT_EQ(CountSyllables("agree"), 2u);
  EXPECT_EQ(CountSyllables("reading"), 2u);
  EXPECT_EQ(CountSyllables("system"), 2u);
  EXPECT_EQ(CountSyllables("evaluation"), 4u);
  EXPECT_EQ(CountSyllables("rhythm"), 1u);
  EXPECT_EQ(CountSyllables("x"), 1u);
}

TEST(Readability, FleschExamples) {
  EXPECT_NEAR(FleschReadingEase(Sentence("The cat sat.")), 119.19, 1e-9);
  EXPECT_NEAR(FleschReadingEase(Sentence("Go.")), 121.22, 1e-9);
  EXPECT_THROW(FleschReadingEase(Sentence(". , !")), DataError);
  EXPECT_EQ(WordTokens(Sentence("The cat , <*> sat .")), (Tokens{"The", "cat", "sat"}));
}

TEST(Readability, MoreSyllablesLowerScore) {
  const std::vector<std::pair<std::string, std::string>> swaps = {
      {"cat", "table"}, {"run", "evaluate"}, {"big", "enormous"}, {"sat", "rested"}};
  for (const auto& [short_word, long_word] : swaps) {
    ASSERT_LT(CountSyllables(short_word), CountSyllables(long_word));
    const Sentence a("The " + short_word + " is here .");
    const Sentence b("The " + long_word + " is here .");
    EXPECT_LT(FleschReadingEase(b), FleschReadingEase(a));
  }
}

// --- Style ---

TEST(Style, PassiveVoice) {
  EXPECT_TRUE(HasPassiveVoice(Sentence("The model was trained on data.")));
  EXPECT_FALSE(HasPassiveVoice(Sentence("We train the model.")));
  EXPECT_TRUE(HasPassiveVoice(Sentence("Results are carefully evaluated.")));
  EXPECT_TRUE(HasPassiveVoice(Sentence("It has been shown before.")));
  EXPECT_TRUE(HasPassiveVoice(Sentence("The text is written by hand.")));
  EXPECT_FALSE(HasPassiveVoice(Sentence("The model is red and trained.")));
  EXPECT_FALSE(HasPassiveVoice(Sentence("This is a red model.")));
  EXPECT_TRUE(IsBeForm("were"));
  EXPECT_TRUE(IsAdverb("carefully"));
  EXPECT_TRUE(IsPastParticiple("built"));
}

TEST(Style, Repetition) {
  EXPECT_TRUE(HasWordRepetition(Sentence("the model improves the model quality")));
  EXPECT_FALSE(HasWordRepetition(Sentence("we propose a novel parsing method")));
  EXPECT_TRUE(HasWordRepetition(Sentence("model alpha beta gamma delta model")));
  EXPECT_FALSE(HasWordRepetition(Sentence("model alpha beta gamma delta epsilon model")));
  EXPECT_TRUE(HasWordRepetition(Sentence("model alpha beta gamma delta epsilon model"), 6));
  // Stopwords never count.
  EXPECT_FALSE(HasWordRepetition(Sentence("the a the a the")));
  EXPECT_TRUE(HasWordRepetition(Sentence("Model and model")));
}

// --- Corpus evaluation ---

struct EvalFixture {
  std::vector<Sentence> src, hyp, ref;
};

EvalFixture RandomEval(std::size_t n, std::uint64_t seed) {
  const auto refs = testing::ToyCorpus(n, seed);
  EvalFixture f;
  Rng rng(seed + 1);
  for (const auto& r : refs) {
    const Sentence ref(r);
    auto src = ref.tokens();
    if (src.size() > 3) src.erase(src.begin() + static_cast<std::ptrdiff_t>(rng.Below(src.size())));
    auto hyp = src;
    if (rng.Bernoulli(0.5)) hyp = ref.tokens();
    if (rng.Bernoulli(0.2)) hyp.insert(hyp.begin(), "the");
    f.src.push_back(Sentence::FromTokens(src));
    f.hyp.push_back(Sentence::FromTokens(hyp));
    f.ref.push_back(ref);
  }
  return f;
}

TEST(Evaluate, AggregatesAreRecomputableAndJobInvariant) {
  const auto f = RandomEval(200, 5);
  std::vector<Sentence> train(f.ref.begin(), f.ref.end());
  const auto lm = lm::NGramModel::Train(train, lm::TrainOptions{.order = 3});
  const auto dict = Dictionary::FromSentences(train);
  const auto one = Evaluate(f.src, f.hyp, f.ref, dict, &lm, EvalConfig{}, 1);
  const auto many = Evaluate(f.src, f.hyp, f.ref, dict, &lm, EvalConfig{}, 8);
  ASSERT_EQ(one.records.size(), 200u);
  const auto& a = one.aggregates;
  const auto& b = many.aggregates;
  EXPECT_EQ(a.corpus_bleu, b.corpus_bleu);
  EXPECT_EQ(a.mean_rouge_l, b.mean_rouge_l);
  EXPECT_EQ(a.mean_ppl, b.mean_ppl);
  EXPECT_EQ(a.edit_prf.f, b.edit_prf.f);

  const auto again = AggregateRecords(one.records);
  EXPECT_EQ(again.corpus_bleu, a.corpus_bleu);
  EXPECT_EQ(again.mean_fre, a.mean_fre);
  EXPECT_EQ(again.mean_grammaticality, a.mean_grammaticality);

  double rouge = 0.0, lev = 0.0;
  std::size_t passive = 0;
  EditCounts counts;
  for (const auto& r : one.records) {
    rouge += r.rouge_l.f;
    lev += static_cast<double>(r.levenshtein_char);
    passive += r.passive ? 1 : 0;
    counts += r.edits;
  }
  EXPECT_NEAR(a.mean_rouge_l, rouge / 200.0, 1e-12);
  EXPECT_NEAR(a.mean_levenshtein_char, lev / 200.0, 1e-12);
  EXPECT_NEAR(a.passive_fraction, passive / 200.0, 1e-12);
  EXPECT_EQ(a.edit_prf.f, PrfFromCounts(counts).f);
  EXPECT_EQ(a.corpus_bleu, CorpusBleu(f.hyp, f.ref));
  for (double v : {a.corpus_bleu, a.mean_rouge_l, a.passive_fraction, a.repetition_fraction,
                   a.mean_grammaticality, a.edit_prf.f}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Evaluate, SkipsUnscorableRecords) {
  const auto src = Sents({"a b .", ""});
  const auto hyp = Sents({"A b .", ""});
  const auto ref = Sents({"A b .", "x ."});
  const auto rep = Evaluate(src, hyp, ref, Dictionary{}, nullptr);
  EXPECT_EQ(rep.aggregates.skipped_grammaticality, 1u);
  EXPECT_EQ(rep.aggregates.skipped_fre, 1u);
  EXPECT_FALSE(rep.aggregates.mean_ppl.has_value());
  EXPECT_FALSE(rep.records[1].grammaticality.has_value());
  EXPECT_THROW(Evaluate(src, hyp, Sents({"x"}), Dictionary{}, nullptr), DataError);
}

}  // namespace
}  // namespace draftrev::metrics
