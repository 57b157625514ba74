// Copyright 2026 The meq Authors
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

#pragma once

#include <optional>
#include <vector>

#include "meq/game.hpp"
#include "meq/geometry.hpp"

namespace meq {

// A product region in choice space: one polytope factor per player (or a
// single factor when restricted to the symmetric diagonal).
struct MCell {
  std::vector<geom::Poly> factors;
  int dim = -1;
  Rational measure = 0;  // product of factor measures; 0 unless full-dim
};

struct MComponent {
  std::vector<MCell> cells;
  int dim = -1;
  Rational measure = 0;
  std::vector<VecQ> representative;  // one strategy per factor
};

// One monotone choice/belief set pair, keyed by the sign pattern of pairwise
// expected-payoff comparisons (one sign per action pair per player; the
// pattern doubles as the color when it is strict everywhere).
struct MEquilibrium {
  std::vector<std::vector<int>> pattern;
  bool colorable = false;
  std::vector<std::vector<int>> color;  // worst-to-best action order per
                                        // factor; empty unless colorable
  std::vector<MComponent> components;
  int dim = -1;
  Rational measure = 0;
  bool disconnected = false;

  // Exact belief sets: one polytope per factor over the opponent's simplex.
  std::vector<geom::Poly> belief_factors;
  Rational belief_measure = 0;

  // Sampled-mode estimates.
  double measure_est = 0, measure_se = 0;
  double belief_measure_est = 0;
  std::vector<std::vector<VecD>> cloud;  // [sample][factor]
  bool disconnected_hint = false;
};

struct MOptions {
  int definition = 2;     // 1 = strict alignment, 2 = boundary-tolerant
  bool sampled = false;   // Monte Carlo mode (required for n > 2)
  bool symmetric = false;  // restrict to the diagonal of a symmetric game
  long samples = 100000;
  std::optional<unsigned long long> seed;  // mandatory in sampled mode
  int cloud_cap = 2048;
};

struct MResult {
  std::vector<MEquilibrium> equilibria;
  int factors = 0;
  std::vector<int> factor_actions;
  MOptions options;
};

MResult enumerate_m_equilibria(const Game& game, const MOptions& opts = {});

// Recompute the exact belief polytopes for one enumerated set.
std::vector<geom::Poly> belief_set(const Game& game, const MResult& result,
                                   const MEquilibrium& eq);

struct MembershipReport {
  bool member = false;
  bool boundary = false;  // membership relies on an equality branch
};

// Point membership of a choice profile (beliefs equal to the true mixtures).
MembershipReport membership(const Game& game, const std::vector<VecQ>& choice,
                            int definition = 2);

// Variant with explicit beliefs: beliefs[i] is player i's belief about the
// opponent (2-player games).
MembershipReport membership(const Game& game, const std::vector<VecQ>& choice,
                            const std::vector<VecQ>& beliefs,
                            int definition = 2);

struct McMeasure {
  double estimate = 0;
  double std_error = 0;
};

// Monte Carlo measure of one enumerated set's choice region.
McMeasure measure_mc(const Game& game, const MResult& result,
                     const MEquilibrium& eq, long samples,
                     unsigned long long seed);

struct StabilityReport {
  bool stable = false;
  bool fast_path = false;  // margins already dominate the perturbation bound
  double failure_rate = 0;
};

// Robustness of a profile's set membership under independent payoff
// perturbations drawn uniformly from [-eps, eps].
StabilityReport behavioral_stability(const Game& game,
                                     const std::vector<VecQ>& choice,
                                     double eps = 1e-4, int trials = 200,
                                     unsigned long long seed = 0);

// For each query point (one strategy per factor), the indices of enumerated
// sets whose closure contains it.
std::vector<std::vector<int>> boundary_markers(
    const MResult& result, const std::vector<std::vector<VecQ>>& points);

}  // namespace meq
