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

// Beam search over caller-defined hypotheses, with optional random noising
// of the pruning scores.
//
// The caller supplies two callables:
//
//   expand(const State&) -> std::vector<Successor<State>>
//       successors of a hypothesis; `final` marks complete hypotheses.
//   score(const State&)  -> double
//       cumulative score of a hypothesis (higher is better).
//
// At every step the candidates are ranked by score + r * beta with a fresh
// r ~ U[0, 1] per candidate, and the best beam_width survive. Complete
// hypotheses are collected and the result is ranked by their unperturbed
// scores. With beta = 0 this is plain beam search.

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "draftrev/error.h"
#include "draftrev/random.h"

namespace draftrev::noising {

struct BeamNoiseConfig {
  std::size_t beam_width = 5;
  double beta = 5.0;
  std::uint64_t seed = kDefaultSeed;
  // Safety bound on search depth.
  std::size_t max_steps = 256;

  void Validate() const {
    if (beam_width < 1) throw ConfigError("beam_width must be at least 1");
    if (!(beta >= 0.0)) throw ConfigError("beta must be non-negative");
  }
};

template <typename State>
struct Successor {
  State state;
  bool final = false;
};

template <typename State>
struct ScoredHypothesis {
  State state;
  double score = 0.0;
};

// Thrown when the search runs out of hypotheses before completing any.
class EmptyBeamError : public Error {
 public:
  EmptyBeamError() : Error("beam search produced no complete hypothesis") {}
};

template <typename State, typename Expand, typename Score>
  requires std::invocable<Expand&, const State&> &&
           std::invocable<Score&, const State&>
std::vector<ScoredHypothesis<State>> NoisyBeamSearch(
    const State& initial, Expand&& expand, Score&& score,
    const BeamNoiseConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  std::vector<State> beam{initial};
  std::vector<ScoredHypothesis<State>> finished;

  struct Candidate {
    Successor<State> succ;
    double base;
    double ranked;
  };

  for (std::size_t step = 0; step < cfg.max_steps && !beam.empty(); ++step) {
    std::vector<Candidate> candidates;
    for (const auto& hyp : beam) {
      for (auto& succ : std::invoke(expand, hyp)) {
        const double base = std::invoke(score, succ.state);
        candidates.push_back({std::move(succ), base, base});
      }
    }
    if (candidates.empty()) break;
    if (cfg.beta != 0.0) {
      for (auto& c : candidates) c.ranked = c.base + rng.Uniform01() * cfg.beta;
    }
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return candidates[a].ranked > candidates[b].ranked;
                     });
    const std::size_t keep = std::min(cfg.beam_width, order.size());
    std::vector<State> next;
    for (std::size_t i = 0; i < keep; ++i) {
      auto& c = candidates[order[i]];
      if (c.succ.final) {
        finished.push_back({std::move(c.succ.state), c.base});
      } else {
        next.push_back(std::move(c.succ.state));
      }
    }
    beam = std::move(next);
  }
  if (finished.empty()) throw EmptyBeamError();
  std::stable_sort(finished.begin(), finished.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  return finished;
}

// Plain beam search; equivalent to NoisyBeamSearch with beta = 0.
template <typename State, typename Expand, typename Score>
std::vector<ScoredHypothesis<State>> BeamSearch(const State& initial,
                                                Expand&& expand, Score&& score,
                                                std::size_t beam_width,
                                                std::size_t max_steps = 256) {
  BeamNoiseConfig cfg;
  cfg.beam_width = beam_width;
  cfg.beta = 0.0;
  cfg.max_steps = max_steps;
  return NoisyBeamSearch(initial, std::forward<Expand>(expand),
                         std::forward<Score>(score), cfg);
}

}  // namespace draftrev::noising
