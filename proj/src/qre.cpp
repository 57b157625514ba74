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

#include "meq/qre.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace meq {

namespace {

VecD softmax(const VecD& z) {
  const double zmax = z.maxCoeff();
  VecD e = (z.array() - zmax).exp();
  return e / e.sum();
}

std::vector<VecD> logit_response(const Game& game, double lambda,
                                 const std::vector<VecD>& profile) {
  std::vector<VecD> out(profile.size());
  for (int i = 0; i < game.num_players(); ++i) {
    const VecD pi = game.expected_payoffs_profile<double>(i, profile);
    out[i] = softmax(lambda * pi);
  }
  return out;
}

double profile_gap(const std::vector<VecD>& a, const std::vector<VecD>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

std::vector<QrePoint> logit_qre_trace(const Game& game,
                                      const std::vector<double>& lambda_grid) {
  if (game.num_players() != 2)
    throw CapabilityError("logit path tracing requires 2 players");
  if (lambda_grid.empty() || lambda_grid.front() < 0)
    throw ValidationError("lambda grid must start at a non-negative value");
  for (std::size_t t = 1; t < lambda_grid.size(); ++t)
    if (lambda_grid[t] <= lambda_grid[t - 1])
      throw ValidationError("lambda grid must be strictly increasing");

  std::vector<VecD> x;
  for (int i = 0; i < game.num_players(); ++i)
    x.push_back(uniform_point<double>(game.actions(i)));

  std::vector<QrePoint> trace;
  constexpr int kMaxIters = 100000;
  constexpr double kTol = 1e-12;
  for (double lambda : lambda_grid) {
    double gap = 0;
    int it = 0;
    // Start at damping 1/2 and back off geometrically when a grid point has
    // not settled, which keeps large-payoff games from oscillating.
    double alpha = 0.5;
    for (; it < kMaxIters; ++it) {
      const std::vector<VecD> y = logit_response(game, lambda, x);
      gap = profile_gap(x, y);
      if (gap < kTol) break;
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = (1.0 - alpha) * x[i] + alpha * y[i];
      if ((it + 1) % 5000 == 0) alpha *= 0.5;
    }
    if (it == kMaxIters) {
      std::ostringstream msg;
      msg << "logit continuation failed to converge at lambda = " << lambda
          << " (residual " << gap << ")";
      throw ContinuationError(msg.str(), gap);
    }
    QrePoint pt;
    pt.lambda = lambda;
    pt.profile = x;
    pt.residual = profile_gap(x, logit_response(game, lambda, x));
    trace.push_back(std::move(pt));
  }
  return trace;
}

std::vector<double> default_lambda_grid(int steps) {
  std::vector<double> grid = {0};
  for (int k = 0; k < steps; ++k) grid.push_back(0.01 * std::pow(2.0, k));
  return grid;
}

namespace {

// Open interval of weights w for which w*b + (1-w)*c strictly dominates a,
// computed exactly; empty when infeasible.
bool mixture_dominates(const Game& game, int player, int a, int b, int c,
                       Rational& lo, Rational& hi) {
  lo = 0;
  hi = 1;
  bool strict_lo = false, strict_hi = false;
  const int j = 1 - player;
  for (int s = 0; s < game.actions(j); ++s) {
    auto u = [&](int own) {
      const std::vector<int> prof =
          player == 0 ? std::vector<int>{own, s} : std::vector<int>{s, own};
      return game.payoff(player, prof);
    };
    // w*(u_b - u_c) > u_a - u_c
    const Rational coef = u(b) - u(c);
    const Rational rhs = u(a) - u(c);
    if (coef == 0) {
      if (rhs >= 0) return false;
    } else if (coef > 0) {
      const Rational bound = rhs / coef;
      if (bound > lo || (bound == lo && !strict_lo)) {
        lo = bound;
        strict_lo = true;
      }
    } else {
      const Rational bound = rhs / coef;
      if (bound < hi || (bound == hi && !strict_hi)) {
        hi = bound;
        strict_hi = true;
      }
    }
  }
  if (lo > hi) return false;
  if (lo == hi && (strict_lo || strict_hi)) return false;
  return true;
}

}  // namespace

LogitBoundReport logit_dominated_bound_check(
    const Game& game, const std::vector<QrePoint>& trace) {
  if (game.num_players() != 2)
    throw CapabilityError("dominated-action bound requires 2 players");
  LogitBoundReport rep;
  for (int i = 0; i < 2; ++i) {
    if (game.actions(i) != 3) continue;
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, c = (a + 2) % 3;
      Rational lo, hi;
      if (!mixture_dominates(game, i, a, b, c, lo, hi)) continue;
      MixtureDomination d;
      d.player = i;
      d.action = a;
      d.weight_lo = to_double(lo);
      d.weight_hi = to_double(hi);
      rep.dominated.push_back(d);
    }
  }
  rep.applicable = !rep.dominated.empty();
  if (!rep.applicable) return rep;
  rep.holds = true;
  for (const auto& pt : trace) {
    for (const auto& d : rep.dominated) {
      const double p = pt.profile[d.player](d.action);
      rep.max_seen = std::max(rep.max_seen, p);
      if (p > 1.0 / 3.0 + 1e-12) rep.holds = false;
    }
  }
  return rep;
}

std::pair<double, double> luce_amp_closed_form(double rho_r, double rho_c) {
  const double denom = rho_r * rho_c + 1.0;
  const double p = 1.0 / (1.0 + std::pow(5.0, rho_c * (1.0 - rho_r) / denom));
  const double q = 1.0 / (1.0 + std::pow(5.0, rho_r * (1.0 + rho_c) / denom));
  return {p, q};
}

std::vector<std::pair<double, double>> luce_amp_samples(
    int n, double r_max, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, r_max);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (int s = 0; s < n; ++s) {
    const double rho_r = unif(rng);
    const double rho_c = unif(rng);
    out.push_back(luce_amp_closed_form(rho_r, rho_c));
  }
  return out;
}

}  // namespace meq
