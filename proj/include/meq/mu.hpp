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

#include <string>
#include <vector>

#include "meq/correspond.hpp"
#include "meq/game.hpp"

namespace meq {

// A fixed point of the weighted rank correspondence: each player's mixture is
// a rank-compatible arrangement of the weight multiset mu against their own
// expected payoffs. Ties produce one-parameter segments.
template <typename S>
struct MuSolution {
  std::vector<Vec<S>> profile;  // point, or segment midpoint
  bool segment = false;
  std::vector<std::vector<Vec<S>>> endpoints;  // [end][player] when segment
};

using MuSolutionQ = MuSolution<Rational>;
using MuSolutionD = MuSolution<double>;

// All fixed points for per-player weight vectors mu[i] (two-player games,
// up to 3 actions; segment families are resolved for 2x2 games).
template <typename S>
std::vector<MuSolution<S>> mu_equilibria(const Game& game,
                                         const std::vector<Vec<S>>& mu,
                                         double eps = kTieEps);

// Convenience: the one-parameter weight family with exponent rho for every
// player.
std::vector<MuSolutionD> mu_equilibria_rho(const Game& game, double rho);
std::vector<MuSolutionQ> mu_equilibria_rho_exact(const Game& game, long rho);

struct SweepEvent {
  double rho = 0;
  std::string what;
};

struct MuSweep {
  std::vector<double> rhos;
  std::vector<std::vector<MuSolutionD>> solutions;  // per rho
  std::vector<std::vector<int>> branch_of;          // per rho, per solution
  int branches = 0;
  int principal_branch = -1;  // branch holding the uniform-weight solution
  std::vector<SweepEvent> events;
};

// Trace the solution correspondence over a rho grid, matching branches
// between consecutive grid points by proximity.
MuSweep sweep_correspondence(const Game& game, const std::vector<double>& rhos,
                             double match_threshold = 0.2);

struct MetaInclusionReport {
  bool mu_solutions_inside = true;  // every swept solution lies in the
                                    // enumerated sets' closure
  bool set_points_covered = true;   // every colorable-set representative is
                                    // itself a fixed point for its own weights
  int checked_solutions = 0;
  int checked_representatives = 0;
};

MetaInclusionReport verify_meta_inclusion(const Game& game,
                                          const std::vector<double>& rhos);

}  // namespace meq
