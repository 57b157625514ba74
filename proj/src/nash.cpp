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

#include "meq/nash.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/LU>

namespace meq {

namespace {

// Affine solution set {x : M x = rhs} described by a particular point and a
// kernel basis; `consistent` is false when the system has no solution.
struct AffineSet {
  bool consistent = false;
  VecQ particular;
  MatQ kernel;  // cols(kernel) == dim
  int dim = 0;
};

AffineSet solve_affine(const MatQ& M, const VecQ& rhs) {
  AffineSet out;
  Eigen::FullPivLU<MatQ> lu(M);
  lu.setThreshold(Rational(0));
  VecQ x = lu.solve(rhs);
  if (((M * x) - rhs).cwiseAbs().sum() != 0) return out;
  out.consistent = true;
  out.particular = x;
  out.kernel = lu.kernel();
  out.dim = int(M.cols()) - int(lu.rank());
  if (out.dim == 0) out.kernel = MatQ::Zero(M.cols(), 0);
  return out;
}

// Scatter a support-local vector into the full action space.
VecQ scatter(const VecQ& local, const std::vector<int>& support, int k) {
  VecQ v = VecQ::Zero(k);
  for (int i = 0; i < int(support.size()); ++i) v(support[i]) = local(i);
  return v;
}

std::vector<int> support_of(const VecQ& v) {
  std::vector<int> s;
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) s.push_back(i);
  return s;
}

bool is_unit(const VecQ& v) {
  return support_of(v).size() == 1;
}

NashKind classify(const std::vector<VecQ>& profile) {
  bool all_pure = true, any_zero = false;
  for (const auto& v : profile) {
    if (!is_unit(v)) all_pure = false;
    for (int i = 0; i < v.size(); ++i)
      if (v(i) == 0) any_zero = true;
  }
  if (all_pure) return NashKind::kPure;
  return any_zero ? NashKind::kDegenerateMixed : NashKind::kMixed;
}

// Opponent-indifference system: find the other player's mixed strategy (on
// support `their`) equalizing this player's payoffs across support `mine`.
// `own_payoff(a, b)` is the player's payoff at own action a vs theirs b.
template <typename F>
AffineSet indifference_set(const std::vector<int>& mine,
                           const std::vector<int>& their, F own_payoff) {
  const int rows = int(mine.size());  // (rows-1) differences + sum row
  const int cols = int(their.size());
  MatQ M = MatQ::Zero(rows, cols);
  VecQ rhs = VecQ::Zero(rows);
  for (int i = 1; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      M(i - 1, j) = own_payoff(mine[0], their[j]) - own_payoff(mine[i], their[j]);
  for (int j = 0; j < cols; ++j) M(rows - 1, j) = 1;
  rhs(rows - 1) = 1;
  return solve_affine(M, rhs);
}

struct Interval {
  Rational lo, hi;
  bool empty = false;
};

// Intersect {t : c0 + c1 t >= 0} into [lo, hi].
void cut(Interval& iv, const Rational& c0, const Rational& c1) {
  if (iv.empty) return;
  if (c1 == 0) {
    if (c0 < 0) iv.empty = true;
    return;
  }
  const Rational bound = -c0 / c1;
  if (c1 > 0) {
    if (bound > iv.lo) iv.lo = bound;
  } else {
    if (bound < iv.hi) iv.hi = bound;
  }
  if (iv.lo > iv.hi) iv.empty = true;
}

}  // namespace

bool is_nash(const Game& game, const std::vector<VecQ>& profile) {
  for (int i = 0; i < game.num_players(); ++i) {
    const VecQ pi = game.expected_payoffs_profile<Rational>(i, profile);
    Rational best = pi(0);
    for (int a = 1; a < pi.size(); ++a) best = std::max(best, pi(a));
    for (int a = 0; a < pi.size(); ++a)
      if (profile[i](a) > 0 && pi(a) != best) return false;
  }
  return true;
}

std::vector<NashPoint> pure_nash(const Game& game) {
  std::vector<NashPoint> out;
  const int n = game.num_players();
  for (std::size_t f = 0; f < game.profile_count(); ++f) {
    const std::vector<int> prof = game.unflatten(f);
    std::vector<VecQ> mixed(n);
    for (int i = 0; i < n; ++i)
      mixed[i] = unit_vector<Rational>(game.actions(i), prof[i]);
    if (!is_nash(game, mixed)) continue;
    NashPoint p;
    p.profile = std::move(mixed);
    p.kind = NashKind::kPure;
    for (int i = 0; i < n; ++i) p.support.push_back({prof[i]});
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<NashPoint> mixed_nash_bimatrix(const Game& game) {
  if (game.num_players() != 2)
    throw CapabilityError("support enumeration requires a 2-player game");
  const int k0 = game.actions(0);
  const int k1 = game.actions(1);
  if (k0 > 4 || k1 > 4)
    throw CapabilityError(
        "support enumeration is limited to 4 actions per player");

  auto u0 = [&](int a, int b) { return game.payoff(0, {a, b}); };
  auto u1 = [&](int b, int a) { return game.payoff(1, {a, b}); };

  std::vector<NashPoint> found;

  auto subsets = [](int k) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i)
        if (mask & (1 << i)) s.push_back(i);
      out.push_back(std::move(s));
    }
    return out;
  };

  // Payoff advantage of the first support action over action `a`, against
  // the opponent strategy (full-length vector).
  auto adv0 = [&](int s0, int a, const VecQ& y) {
    Rational d = 0;
    for (int b = 0; b < k1; ++b) d += (u0(s0, b) - u0(a, b)) * y(b);
    return d;
  };
  auto adv1 = [&](int t0, int b, const VecQ& x) {
    Rational d = 0;
    for (int a = 0; a < k0; ++a) d += (u1(t0, a) - u1(b, a)) * x(a);
    return d;
  };

  for (const auto& S : subsets(k0)) {
    for (const auto& T : subsets(k1)) {
      // y (player 1's strategy) equalizes player 0 across S; x equalizes
      // player 1 across T.
      const AffineSet ys = indifference_set(S, T, u0);
      const AffineSet xs = indifference_set(T, S, u1);
      if (!ys.consistent || !xs.consistent) continue;
      if (ys.dim + xs.dim == 0) {
        const VecQ x = scatter(xs.particular, S, k0);
        const VecQ y = scatter(ys.particular, T, k1);
        bool ok = true;
        for (int a : S) ok = ok && x(a) > 0;
        for (int b : T) ok = ok && y(b) > 0;
        for (int a = 0; a < k0 && ok; ++a) ok = adv0(S[0], a, y) >= 0;
        for (int b = 0; b < k1 && ok; ++b) ok = adv1(T[0], b, x) >= 0;
        if (!ok) continue;
        NashPoint p;
        p.profile = {x, y};
        p.support = {support_of(x), support_of(y)};
        p.kind = classify(p.profile);
        found.push_back(std::move(p));
      } else if (ys.dim + xs.dim == 1) {
        // One-parameter family: one side is an interval, the other a point.
        const bool vary_y = ys.dim == 1;
        const AffineSet& var = vary_y ? ys : xs;
        const AffineSet& fix = vary_y ? xs : ys;
        const std::vector<int>& var_sup = vary_y ? T : S;
        const int var_k = vary_y ? k1 : k0;
        const VecQ fixed = scatter(fix.particular, vary_y ? S : T,
                                   vary_y ? k0 : k1);
        // The fixed side must use its support strictly and best-respond.
        bool ok = true;
        for (int a : (vary_y ? S : T)) ok = ok && fixed(a) > 0;
        if (vary_y) {
          for (int b = 0; b < k1 && ok; ++b) ok = adv1(T[0], b, fixed) >= 0;
        } else {
          for (int a = 0; a < k0 && ok; ++a) ok = adv0(S[0], a, fixed) >= 0;
        }
        if (!ok) continue;
        const VecQ base = scatter(var.particular, var_sup, var_k);
        const VecQ dir = scatter(VecQ(var.kernel.col(0)), var_sup, var_k);
        // Constraints linear in t: simplex bounds plus the varying side's
        // opponent staying best-responding.
        Interval iv{Rational(-1000000), Rational(1000000)};
        for (int c = 0; c < var_k; ++c) cut(iv, base(c), dir(c));
        for (int a = 0; a < (vary_y ? k0 : k1); ++a) {
          Rational c0 = 0, c1 = 0;
          if (vary_y) {
            c0 = adv0(S[0], a, base);
            for (int b = 0; b < k1; ++b)
              c1 += (u0(S[0], b) - u0(a, b)) * dir(b);
          } else {
            c0 = adv1(T[0], a, base);
            c1 = 0;
            for (int b = 0; b < k0; ++b)
              c1 += (u1(T[0], b) - u1(a, b)) * dir(b);
          }
          cut(iv, c0, c1);
        }
        if (iv.empty) continue;
        auto at = [&](const Rational& t) { return VecQ(base + t * dir); };
        if (iv.lo == iv.hi) {
          NashPoint p;
          const VecQ v = at(iv.lo);
          p.profile = vary_y ? std::vector<VecQ>{fixed, v}
                             : std::vector<VecQ>{v, fixed};
          p.support = {support_of(p.profile[0]), support_of(p.profile[1])};
          p.kind = classify(p.profile);
          found.push_back(std::move(p));
        } else {
          NashPoint p;
          const VecQ mid = at((iv.lo + iv.hi) / 2);
          const VecQ lo = at(iv.lo);
          const VecQ hi = at(iv.hi);
          p.profile = vary_y ? std::vector<VecQ>{fixed, mid}
                             : std::vector<VecQ>{mid, fixed};
          p.endpoints = {vary_y ? std::vector<VecQ>{fixed, lo}
                                : std::vector<VecQ>{lo, fixed},
                         vary_y ? std::vector<VecQ>{fixed, hi}
                               : std::vector<VecQ>{hi, fixed}};
          p.continuum = true;
          p.kind = NashKind::kDegenerateMixed;
          p.support = {support_of(p.profile[0]), support_of(p.profile[1])};
          found.push_back(std::move(p));
        }
      }
      // Higher-dimensional solution families for a single support pair do
      // not occur in nondegenerate or mildly degenerate games; such supports
      // are covered by their faces.
    }
  }

  // Deduplicate: identical points, identical families, and points that lie
  // inside a family's closed segment.
  auto same_profile = [](const std::vector<VecQ>& a,
                         const std::vector<VecQ>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  auto on_family = [&](const NashPoint& fam, const std::vector<VecQ>& p) {
    // The family varies in exactly one player's strategy.
    bool seen_t = false;
    Rational t = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const VecQ& a = fam.endpoints[0][i];
      const VecQ& b = fam.endpoints[1][i];
      const VecQ d = b - a;
      if (d.cwiseAbs().sum() == 0) {
        if (p[i] != a) return false;
        continue;
      }
      int j = 0;
      while (d(j) == 0) ++j;
      const Rational ti = (p[i](j) - a(j)) / d(j);
      if (ti < 0 || ti > 1) return false;
      if (VecQ(a + ti * d) != p[i]) return false;
      if (seen_t && ti != t) return false;
      seen_t = true;
      t = ti;
    }
    return true;
  };

  std::vector<NashPoint> out;
  for (auto& p : found) {
    bool dup = false;
    for (const auto& q : out) {
      if (p.continuum != q.continuum) continue;
      if (p.continuum) {
        dup = (same_profile(p.endpoints[0], q.endpoints[0]) &&
               same_profile(p.endpoints[1], q.endpoints[1])) ||
              (same_profile(p.endpoints[0], q.endpoints[1]) &&
               same_profile(p.endpoints[1], q.endpoints[0]));
      } else {
        dup = same_profile(p.profile, q.profile);
      }
      if (dup) break;
    }
    if (!dup) out.push_back(std::move(p));
  }
  std::vector<NashPoint> final_out;
  for (const auto& p : out) {
    bool covered = false;
    if (!p.continuum) {
      for (const auto& q : out)
        if (q.continuum && on_family(q, p.profile)) covered = true;
    }
    if (!covered) final_out.push_back(p);
  }
  std::sort(final_out.begin(), final_out.end(),
            [](const NashPoint& a, const NashPoint& b) {
              for (std::size_t i = 0; i < a.profile.size(); ++i)
                for (int j = 0; j < a.profile[i].size(); ++j)
                  if (a.profile[i](j) != b.profile[i](j))
                    return a.profile[i](j) < b.profile[i](j);
              return false;
            });
  return final_out;
}

std::optional<Beaune> beaune(const Game& game,
                             const std::vector<VecQ>& choice) {
  if (game.num_players() != 2)
    throw CapabilityError("belief polytopes are exact for 2-player games");
  for (int i = 0; i < 2; ++i) {
    if (game.actions(i) > 3)
      throw CapabilityError(
          "belief polytopes are limited to 3 actions per player");
  }
  Beaune out;
  out.choice = choice;
  out.belief_measure = 1;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const VecQ pi = game.expected_payoffs_profile<Rational>(i, choice);
    Rational best = pi(0);
    for (int a = 1; a < pi.size(); ++a) best = std::max(best, pi(a));
    std::vector<int> argmax, rest;
    for (int a = 0; a < pi.size(); ++a)
      (pi(a) == best ? argmax : rest).push_back(a);
    for (int a = 0; a < game.actions(i); ++a)
      if (choice[i](a) > 0 &&
          std::find(argmax.begin(), argmax.end(), a) == argmax.end())
        return std::nullopt;
    // Belief polytope over the opponent's simplex: the closure of beliefs
    // whose induced best-response set is exactly `argmax`.
    geom::Poly poly = geom::simplex_poly(game.actions(j));
    auto diff_coeffs = [&](int a, int b) {
      VecQ c(game.actions(j));
      for (int o = 0; o < game.actions(j); ++o) {
        const std::vector<int> prof = i == 0 ? std::vector<int>{a, o}
                                             : std::vector<int>{o, a};
        const std::vector<int> prof2 = i == 0 ? std::vector<int>{b, o}
                                              : std::vector<int>{o, b};
        c(o) = game.payoff(i, prof) - game.payoff(i, prof2);
      }
      return c;
    };
    for (std::size_t s = 1; s < argmax.size(); ++s) {
      const geom::Lin f =
          geom::functional_from_coeffs(diff_coeffs(argmax[0], argmax[s]));
      poly = poly.clip(f).clip({-f.a, -f.b, -f.c});
    }
    for (int b : rest) {
      poly = poly.clip(
          geom::functional_from_coeffs(diff_coeffs(argmax[0], b)));
    }
    out.belief_measure *= geom::normalized_measure(poly, game.actions(j));
    out.belief_factors.push_back(std::move(poly));
  }
  return out;
}

}  // namespace meq
