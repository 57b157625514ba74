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

#include <utility>
#include <vector>

#include "meq/game.hpp"

namespace meq {

// One accepted point on a logit quantal-response path.
struct QrePoint {
  double lambda = 0;
  std::vector<VecD> profile;  // strictly interior
  double residual = 0;        // max fixed-point violation, <= 1e-10
};

struct ContinuationError : std::runtime_error {
  ContinuationError(const std::string& msg, double last_residual)
      : std::runtime_error(msg), residual(last_residual) {}
  double residual = 0;
};

// Trace the principal logit path over an increasing lambda grid starting at
// 0, warm-starting each grid point from the previous solution with a damped
// fixed-point iteration.
std::vector<QrePoint> logit_qre_trace(const Game& game,
                                      const std::vector<double>& lambda_grid);

// Geometric default grid: 0, then 0.01 * 2^k for k = 0..steps-1.
std::vector<double> default_lambda_grid(int steps = 20);

// One action found strictly dominated by a two-action mixture.
struct MixtureDomination {
  int player = -1;
  int action = -1;
  double weight_lo = 0, weight_hi = 0;  // open interval of mixing weights
};

struct LogitBoundReport {
  bool applicable = false;  // some action is dominated by a two-action mix
  std::vector<MixtureDomination> dominated;
  bool holds = false;   // every traced point keeps each such action <= 1/3
  double max_seen = 0;  // largest traced probability over dominated actions
};

// Convexity bound: an action strictly dominated by a mixture of two others
// can never exceed probability 1/3 on a logit path. Detection is exact over
// 3-action players; two-action players can only exhibit pure dominance,
// which the bound does not cover.
LogitBoundReport logit_dominated_bound_check(const Game& game,
                                             const std::vector<QrePoint>& trace);

// Closed-form Luce fixed point for the asymmetric matching-pennies family
// with the 1/5 payoff ratio: returns (p, q) where p is the column player's
// first-action probability and q the row player's.
std::pair<double, double> luce_amp_closed_form(double rho_r, double rho_c);

// Uniform sampler over (rho_r, rho_c) in [0, r_max]^2 mapped through the
// closed form.
std::vector<std::pair<double, double>> luce_amp_samples(
    int n, double r_max, unsigned long long seed);

}  // namespace meq
