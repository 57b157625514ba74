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

#include "meq/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace meq {

namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

void check_report(const SliderReport& r) {
  if (r.truth.size() != r.report.size())
    throw ValidationError("truth and report must have the same block count");
  if (r.prize < 0) throw ValidationError("prize must be non-negative");
  for (std::size_t j = 0; j < r.truth.size(); ++j) {
    if (r.truth[j].size() != r.report[j].size())
      throw ValidationError("truth and report block sizes differ");
    for (const auto* v : {&r.truth[j], &r.report[j]}) {
      if (!on_simplex(*v, 1e-9))
        throw ValidationError("slider block must form a probability vector");
    }
  }
}

// Win on one slider: the report is at least as close to the 0/1 outcome as
// one of the two uniform draws (ties favor the subject).
bool slider_win(double q, int outcome, double u1, double u2) {
  const double d = std::abs(q - double(outcome));
  const double d1 = std::abs(u1 - double(outcome));
  const double d2 = std::abs(u2 - double(outcome));
  return d <= std::max(d1, d2);
}

}  // namespace

double win_probability(double p, double q) {
  check_unit(p, "truth");
  check_unit(q, "report");
  return p * (1.0 - (1.0 - q) * (1.0 - q)) + (1.0 - p) * (1.0 - q * q);
}

double elicit_win_rate(double p, double q, long trials,
                       unsigned long long seed) {
  check_unit(p, "truth");
  check_unit(q, "report");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long wins = 0;
  for (long t = 0; t < trials; ++t) {
    const int outcome = unif(rng) < p ? 1 : 0;
    const double u1 = unif(rng), u2 = unif(rng);
    wins += slider_win(q, outcome, u1, u2);
  }
  return double(wins) / double(trials);
}

MechanismResult simulate_mechanism(const SliderReport& report,
                                   const std::vector<int>& outcome,
                                   unsigned long long seed, int subset_size) {
  check_report(report);
  if (outcome.size() != report.report.size())
    throw ValidationError("one realized action per opponent block required");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  MechanismResult res;
  std::vector<std::pair<int, int>> sliders;  // (block, index)
  for (std::size_t j = 0; j < report.report.size(); ++j) {
    const VecD& q = report.report[j];
    if (outcome[j] < 0 || outcome[j] >= q.size())
      throw ValidationError("realized action out of range");
    std::vector<int> block;
    for (int k = 0; k < q.size(); ++k) {
      const int x = (outcome[j] == k) ? 1 : 0;
      block.push_back(slider_win(q(k), x, unif(rng), unif(rng)) ? 1 : 0);
      sliders.emplace_back(int(j), k);
    }
    res.wins.push_back(std::move(block));
  }

  const int total = int(sliders.size());
  const int size = subset_size < 0 ? total : std::min(subset_size, total);
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  res.paid_sliders = size;
  for (int t = 0; t < size; ++t) {
    const auto [j, k] = sliders[order[t]];
    res.payment_subset += report.prize * res.wins[j][k];
  }
  const auto [sj, sk] = sliders[order.empty() ? 0 : order[0]];
  res.payment_single = report.prize * res.wins[sj][sk];
  return res;
}

IcReport verify_incentive_compatibility(const SliderReport& truth,
                                        double grid_step) {
  SliderReport probe = truth;
  probe.report = probe.truth;
  check_report(probe);
  if (!(grid_step > 0 && grid_step < 1))
    throw ValidationError("grid step must lie in (0, 1)");

  IcReport rep;
  rep.grid_step = grid_step;
  rep.incentive_compatible = true;
  rep.concave = true;
  for (const auto& block : truth.truth) {
    for (int k = 0; k < block.size(); ++k) {
      const double p = block(k);
      // Grid maximization of the per-slider win probability.
      double best_q = 0, best_v = -1;
      double prev = -1, prev2 = -1;
      for (double q = 0; q <= 1.0 + 1e-15; q += grid_step) {
        const double v = win_probability(p, std::min(q, 1.0));
        if (v > best_v) {
          best_v = v;
          best_q = std::min(q, 1.0);
        }
        if (prev2 >= 0 && v - 2 * prev + prev2 >= 0) rep.concave = false;
        prev2 = prev;
        prev = v;
      }
      rep.max_argmax_gap = std::max(rep.max_argmax_gap, std::abs(best_q - p));
      if (std::abs(best_q - p) > grid_step + 1e-12)
        rep.incentive_compatible = false;
      // Central-difference gradient at the truthful report.
      const double h = 1e-6;
      if (p > h && p < 1.0 - h) {
        const double g =
            (win_probability(p, p + h) - win_probability(p, p - h)) / (2 * h);
        rep.max_gradient = std::max(rep.max_gradient, std::abs(g));
      }
    }
  }
  return rep;
}

}  // namespace meq
