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
#include "draftrev/beam_search.h"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "draftrev/lm.h"
#include "oracles.h"

namespace draftrev::noising {
namespace {

struct PathState {
  std::vector<int> path;
  double score = 0.0;
};

std::vector<ScoredHypothesis<PathState>> RunOnLattice(
    const testing::Lattice& lat, const BeamNoiseConfig& cfg) {
  const auto expand = [&](const PathState& s) {
    std::vector<Successor<PathState>> out;
    for (std::size_t c = 0; c < lat.branching; ++c) {
      PathState n = s;
      n.score += lat.Weight(s.path, static_cast<int>(c));
      n.path.push_back(static_cast<int>(c));
      const bool final = n.path.size() == lat.depth;
      out.push_back({std::move(n), final});
    }
    return out;
  };
  const auto score = [](const PathState& s) { return s.score; };
  return NoisyBeamSearch(PathState{}, expand, score, cfg);
}

TEST(BeamSearch, ZeroBetaMatchesReferenceOnRandomLattices) {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 300; ++i) {
    const auto lat = testing::RandomLattice(gen);
    BeamNoiseConfig cfg;
    cfg.beta = 0.0;
    cfg.beam_width = 1 + gen() % 4;
    cfg.seed = gen();
    const auto got = RunOnLattice(lat, cfg);
    const auto want = testing::ReferenceBeamSearch(lat, cfg.beam_width);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      ASSERT_EQ(got[k].state.path, want[k].path);
      ASSERT_EQ(got[k].score, want[k].score);
    }
  }
}

TEST(BeamSearch, WidthOneZeroBetaIsGreedy) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 100; ++i) {
    const auto lat = testing::RandomLattice(gen);
    BeamNoiseConfig cfg;
    cfg.beta = 0.0;
    cfg.beam_width = 1;
    const auto got = RunOnLattice(lat, cfg);
    ASSERT_EQ(got.size(), 1u);
    std::vector<int> path;
    for (std::size_t d = 0; d < lat.depth; ++d) {
      const auto& ws = lat.weights.at(path);
      int best = 0;
      for (std::size_t c = 1; c < ws.size(); ++c) {
        if (ws[c] > ws[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
      }
      path.push_back(best);
    }
    EXPECT_EQ(got[0].state.path, path);
  }
}

TEST(BeamSearch, SeedDoesNotMatterWithoutNoise) {
  std::mt19937_64 gen(9);
  const auto lat = testing::RandomLattice(gen);
  BeamNoiseConfig a;
  a.beta = 0.0;
  a.seed = 1;
  BeamNoiseConfig b = a;
  b.seed = 2;
  const auto x = RunOnLattice(lat, a);
  const auto y = RunOnLattice(lat, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].state.path, y[i].state.path);
}

// Two final continuations with scores 0 and -1, beam width 1.
testing::Lattice MarginOneLattice() {
  testing::Lattice lat;
  lat.depth = 1;
  lat.branching = 2;
  lat.weights[{}] = {0.0, -1.0};
  return lat;
}

TEST(BeamSearch, NoiseLetsLowerHypothesisWinAtExpectedRate) {
  const auto lat = MarginOneLattice();
  int lower = 0;
  const int runs = 20000;
  for (int seed = 0; seed < runs; ++seed) {
    BeamNoiseConfig cfg;
    cfg.beam_width = 1;
    cfg.beta = 5.0;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const auto got = RunOnLattice(lat, cfg);
    ASSERT_EQ(got.size(), 1u);
    if (got[0].state.path[0] == 1) {
      ++lower;
      // Reported scores stay unperturbed.
      EXPECT_EQ(got[0].score, -1.0);
    }
  }
  // P(5 r_B - 5 r_A > 1) = (1 - 1/5)^2 / 2.
  EXPECT_NEAR(static_cast<double>(lower) / runs, 0.32, 0.015);
}

TEST(BeamSearch, NoSuccessorsIsAnError) {
  const auto expand = [](const int&) { return std::vector<Successor<int>>{}; };
  const auto score = [](const int&) { return 0.0; };
  EXPECT_THROW(NoisyBeamSearch(0, expand, score, BeamNoiseConfig{}), EmptyBeamError);
}

TEST(BeamSearch, ConfigValidation) {
  BeamNoiseConfig cfg;
  cfg.beam_width = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.beta = -1.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

// Decoding with the built-in n-gram model as scorer: the search extends a
// prefix by one word at a time and stops at the end marker.
TEST(BeamSearch, NGramScorerFindsTrainedSentence) {
  const std::vector<std::vector<std::string>> corpus = {
      {"the", "model", "works"}, {"the", "model", "works"},
      {"the", "model", "fails"}, {"a", "parser", "works"}};
  const auto m = lm::NGramModel::Train(corpus, lm::TrainOptions{.order = 3});
  const std::vector<std::string> vocab = {"the", "model", "works", "fails", "a", "parser"};
  using Prefix = std::vector<std::string>;
  struct Hyp {
    Prefix words;
    bool ended = false;
  };
  const auto expand = [&](const Hyp& h) {
    std::vector<Successor<Hyp>> out;
    for (const auto& w : vocab) {
      Hyp n = h;
      n.words.push_back(w);
      out.push_back({n, false});
    }
    Hyp end = h;
    end.ended = true;
    out.push_back({end, true});
    return out;
  };
  const auto score = [&](const Hyp& h) {
    std::vector<lm::WordId> ctx = {lm::kBosId};
    double lp = 0.0;
    for (const auto& w : h.words) {
      lp += m.LogProb(ctx, m.Id(w));
      ctx.push_back(m.Id(w));
    }
    if (h.ended) lp += m.LogProb(ctx, lm::kEosId);
    return lp;
  };
  BeamNoiseConfig cfg;
  cfg.beta = 0.0;
  cfg.beam_width = 4;
  cfg.max_steps = 6;
  const auto out = NoisyBeamSearch(Hyp{}, expand, score, cfg);
  ASSERT_FALSE(out.empty());
  EXPECT_EQ(out[0].state.words, (Prefix{"the", "model", "works"}));
  EXPECT_NEAR(out[0].score, m.SentenceLogProb(out[0].state.words), 1e-12);
}

}  // namespace
}  // namespace draftrev::noising
