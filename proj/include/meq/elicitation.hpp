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

#include <vector>

#include "meq/game.hpp"

namespace meq {

// A belief-elicitation round: one slider per opponent action, reports and
// truths each forming a simplex per opponent block.
struct SliderReport {
  std::vector<VecD> truth;   // per opponent block
  std::vector<VecD> report;  // same shape
  double prize = 1.0;
};

// Probability that a report q on a binary slider with truth p beats at least
// one of two uniform random draws: p(1-(1-q)^2) + (1-p)(1-q^2).
double win_probability(double p, double q);

// Empirical win rate of the two-draw mechanism for one slider.
double elicit_win_rate(double p, double q, long trials,
                       unsigned long long seed);

struct MechanismResult {
  std::vector<std::vector<int>> wins;  // per opponent block, per slider
  double payment_subset = 0;  // prize per winning slider in a random subset
  double payment_single = 0;  // prize iff one randomly chosen slider won
  int paid_sliders = 0;       // sliders in the drawn subset
};

// Run one round: realized pure action per opponent block, two uniform draws
// per slider, a win when the report is at least as close to the outcome as
// one of the draws. subset_size < 0 selects every slider.
MechanismResult simulate_mechanism(const SliderReport& report,
                                   const std::vector<int>& outcome,
                                   unsigned long long seed,
                                   int subset_size = -1);

struct IcReport {
  double grid_step = 0;
  bool incentive_compatible = false;  // every argmax within one grid cell
  double max_argmax_gap = 0;          // worst |argmax - truth|
  double max_gradient = 0;  // finite-difference gradient at q = p (interior)
  bool concave = false;     // second differences negative on the grid
};

// Grid search of the expected win probability per slider: truthful reporting
// must maximize it, with a vanishing gradient at interior truths.
IcReport verify_incentive_compatibility(const SliderReport& truth,
                                        double grid_step = 0.001);

}  // namespace meq
