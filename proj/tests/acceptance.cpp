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

// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "meq/analysis.hpp"
#include "meq/correspond.hpp"
#include "meq/elicitation.hpp"
#include "meq/fixtures.hpp"
#include "meq/game.hpp"
#include "meq/msets.hpp"
#include "meq/mu.hpp"
#include "meq/nash.hpp"
#include "meq/qre.hpp"

using namespace meq;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

VecQ q2(const Rational& a, const Rational& b) {
  VecQ v(2);
  v << a, b;
  return v;
}

VecQ q3(const Rational& a, const Rational& b, const Rational& c) {
  VecQ v(3);
  v << a, b, c;
  return v;
}

// Exact x-range of an interval factor (2-action simplex parametrization).
std::pair<Rational, Rational> x_range(const geom::Poly& poly) {
  Rational lo = poly.pts.front().x, hi = lo;
  for (const auto& p : poly.pts) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  return {lo, hi};
}

const MEquilibrium* find_pattern(const MResult& r,
                                 const std::vector<std::vector<int>>& pat) {
  for (const auto& eq : r.equilibria)
    if (eq.pattern == pat) return &eq;
  return nullptr;
}

// The widest x-range over a set's full-dimensional cells, per factor.
std::vector<std::pair<Rational, Rational>> set_ranges(const MEquilibrium& eq) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& comp : eq.components) {
    for (const auto& cell : comp.cells) {
      if (cell.dim != eq.dim) continue;
      if (out.empty()) {
        for (const auto& f : cell.factors) out.push_back(x_range(f));
      } else {
        for (std::size_t i = 0; i < cell.factors.size(); ++i) {
          const auto r = x_range(cell.factors[i]);
          out[i].first = std::min(out[i].first, r.first);
          out[i].second = std::max(out[i].second, r.second);
        }
      }
    }
  }
  return out;
}

bool range_is(const std::pair<Rational, Rational>& r, const Rational& lo,
              const Rational& hi) {
  return r.first == lo && r.second == hi;
}

std::vector<VecD> random_profile(const Game& game, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<VecD> profile;
  for (int i = 0; i < game.num_players(); ++i) {
    VecD v(game.actions(i));
    double total = 0;
    for (int a = 0; a < game.actions(i); ++a) {
      v(a) = -std::log(std::max(unif(rng), 1e-300));
      total += v(a);
    }
    profile.push_back(v / total);
  }
  return profile;
}

bool same_vertex_set(const std::vector<VecQ>& a, const std::vector<VecQ>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& v : a) {
    bool found = false;
    for (const auto& w : b) found = found || v == w;
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Check criterion_1() {
  Check c;
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = enumerate_m_equilibria(fixtures::load("coord"));
    c.require(seconds_since(t0) < 1.0, "coord enumeration exceeded 1s");
    const auto* hi = find_pattern(r, {{1}, {1}});
    const auto* lo = find_pattern(r, {{-1}, {-1}});
    c.require(hi && lo, "coord sets missing");
    if (hi && lo) {
      for (const auto& rg : set_ranges(*hi))
        c.require(range_is(rg, Rational(2, 3), 1), "coord hi choice range");
      for (const auto& rg : set_ranges(*lo))
        c.require(range_is(rg, 0, Rational(1, 2)), "coord lo choice range");
      for (const auto& f : hi->belief_factors)
        c.require(range_is(x_range(f), Rational(2, 3), 1),
                  "coord hi belief range");
      for (const auto& f : lo->belief_factors)
        c.require(range_is(x_range(f), 0, Rational(2, 3)),
                  "coord lo belief range");
    }
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = enumerate_m_equilibria(fixtures::load("amp"));
    c.require(seconds_since(t0) < 1.0, "amp enumeration exceeded 1s");
    // Column-player range x column-player partner: [0,1/2] x [1/6,1/2]
    // means the row factor spans [1/6,1/2] and the column factor [0,1/2].
    const auto* a = find_pattern(r, {{-1}, {-1}});
    const auto* b = find_pattern(r, {{-1}, {1}});
    c.require(a && b, "amp sets missing");
    if (a && b) {
      const auto ra = set_ranges(*a);
      c.require(range_is(ra[0], Rational(1, 6), Rational(1, 2)) &&
                    range_is(ra[1], 0, Rational(1, 2)),
                "amp first rectangle");
      const auto rb = set_ranges(*b);
      c.require(range_is(rb[0], 0, Rational(1, 6)) &&
                    range_is(rb[1], Rational(1, 2), Rational(5, 6)),
                "amp second rectangle");
      c.require(a->measure == Rational(1, 6) &&
                    b->measure == Rational(1, 18),
                "amp measures");
    }
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = enumerate_m_equilibria(fixtures::load("nongeneric_2x2"));
    c.require(seconds_since(t0) < 1.0, "degenerate 2x2 exceeded 1s");
    const auto* eq = find_pattern(r, {{-1}, {1}});
    c.require(eq != nullptr && eq->colorable, "degenerate 2x2 set missing");
    if (eq) {
      const auto rg = set_ranges(*eq);
      c.require(range_is(rg[0], 0, Rational(1, 2)) &&
                    range_is(rg[1], Rational(1, 2), 1),
                "degenerate 2x2 rectangle");
      c.require(eq->belief_measure == 1, "degenerate 2x2 belief measure");
      for (const auto& f : eq->belief_factors)
        c.require(range_is(x_range(f), 0, 1), "degenerate 2x2 belief range");
    }
  }
  return c;
}

Check criterion_2() {
  Check c;
  {
    const Game g = fixtures::load("mondrian");
    MOptions o;
    o.symmetric = true;
    const auto r = enumerate_m_equilibria(g, o);
    int colorable = 0;
    for (const auto& eq : r.equilibria) colorable += eq.colorable ? 1 : 0;
    c.require(colorable == 3, "mondrian diagonal set count");

    std::vector<std::vector<VecQ>> markers;
    bool saw_a = false, saw_b = false;
    for (const auto& nash : mixed_nash_bimatrix(g)) {
      if (!(nash.profile[0] == nash.profile[1])) continue;
      markers.push_back({nash.profile[0]});
      saw_a = saw_a ||
              nash.profile[0] == q3(Rational(2, 3), Rational(1, 3), 0);
      saw_b = saw_b ||
              nash.profile[0] == q3(Rational(1, 6), 0, Rational(5, 6));
    }
    c.require(markers.size() == 5, "mondrian symmetric equilibrium count");
    c.require(saw_a && saw_b, "expected symmetric equilibria missing");
    for (const auto& hits : boundary_markers(r, markers))
      c.require(!hits.empty(), "marker off every set");
  }
  {
    MOptions o;
    o.symmetric = true;
    const auto r = enumerate_m_equilibria(fixtures::load("ds1"), o);
    c.require(r.equilibria.size() == 4, "ds1 diagonal set count");
  }
  {
    const Game g = fixtures::load("nongeneric_3x3_left");
    MOptions o;
    o.symmetric = true;
    const auto r = enumerate_m_equilibria(g, o);
    std::vector<int> dims;
    for (const auto& eq : r.equilibria) dims.push_back(eq.dim);
    std::sort(dims.begin(), dims.end());
    c.require(dims == std::vector<int>({0, 0, 1, 2}),
              "3x3 degenerate dimensions");
    bool saw = false;
    for (const auto& nash : mixed_nash_bimatrix(g)) {
      saw = saw ||
            nash.profile[0] == q3(Rational(8, 13), 0, Rational(5, 13));
    }
    c.require(saw, "3x3 degenerate interior equilibrium missing");
  }
  return c;
}

Check criterion_3() {
  Check c;
  const Game g = fixtures::load("chicken");
  auto timed_exact = [&](long rho) {
    const auto t0 = std::chrono::steady_clock::now();
    auto sols = mu_equilibria_rho_exact(g, rho);
    c.require(seconds_since(t0) < 1.0, "weight solve exceeded 1s");
    return sols;
  };
  {
    const auto s = timed_exact(0);
    c.require(s.size() == 1 && !s[0].segment &&
                  s[0].profile[0] == q2(Rational(1, 2), Rational(1, 2)) &&
                  s[0].profile[1] == q2(Rational(1, 2), Rational(1, 2)),
              "rho=0");
  }
  {
    const auto s = timed_exact(1);
    c.require(s.size() == 1 && !s[0].segment &&
                  s[0].profile[0] == q2(Rational(2, 3), Rational(1, 3)),
              "rho=1");
  }
  {
    const auto s = timed_exact(2);
    c.require(s.size() == 1 && s[0].segment, "rho=2 segment");
    if (s.size() == 1 && s[0].segment) {
      c.require(s[0].profile[1] == q2(Rational(4, 5), Rational(1, 5)),
                "rho=2 fixed side");
      std::vector<Rational> ends = {s[0].endpoints[0][0](0),
                                    s[0].endpoints[1][0](0)};
      std::sort(ends.begin(), ends.end());
      c.require(ends[0] == Rational(1, 5) && ends[1] == Rational(4, 5),
                "rho=2 free side range");
    }
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = mu_equilibria_rho(g, 2.5);
    c.require(seconds_since(t0) < 1.0, "rho=2.5 exceeded 1s");
    const double big = 1.0 / (1.0 + std::pow(2.0, -2.5));
    c.require(s.size() == 1 && !s[0].segment, "rho=2.5 count");
    if (s.size() == 1) {
      c.require(std::abs(s[0].profile[0](0) - (1 - big)) < 1e-12 &&
                    std::abs(s[0].profile[1](0) - big) < 1e-12,
                "rho=2.5 value");
    }
  }
  {
    const auto s = timed_exact(3);
    c.require(s.size() == 2, "rho=3 bifurcation count");
    if (s.size() == 2) {
      c.require(!s[0].segment &&
                    s[0].profile[0] == q2(Rational(1, 9), Rational(8, 9)) &&
                    s[0].profile[1] == q2(Rational(8, 9), Rational(1, 9)),
                "rho=3 point");
      c.require(s[1].segment &&
                    s[1].profile[0] == q2(Rational(8, 9), Rational(1, 9)),
                "rho=3 segment");
    }
  }
  {
    const auto s = timed_exact(5);
    c.require(s.size() == 3, "rho=5 count");
    if (s.size() == 3) {
      const Rational big(32, 33);
      c.require(s[0].profile[0] == q2(1 - big, big) &&
                    s[0].profile[1] == q2(big, 1 - big),
                "rho=5 low point");
      c.require(s[1].profile[0] == q2(Rational(8, 9), Rational(1, 9)) &&
                    s[1].profile[1] == q2(Rational(4, 5), Rational(1, 5)),
                "rho=5 interior point");
      c.require(s[2].profile[0] == q2(big, 1 - big) &&
                    s[2].profile[1] == q2(1 - big, big),
                "rho=5 high point");
    }
  }
  return c;
}

Check criterion_4() {
  Check c;
  const auto inside = [](double p, double q) {
    const double t = 1e-9;
    const bool left = p >= -t && p <= 0.5 + t && q >= 1.0 / 6 - t &&
                      q <= 0.5 + t;
    const bool right = p >= 0.5 - t && p <= 5.0 / 6 + t && q >= -t &&
                       q <= 1.0 / 6 + t;
    return left || right;
  };
  for (const auto& [p, q] : luce_amp_samples(10000, 50.0, 20260824)) {
    c.require(inside(p, q), "sample escaped the two-rectangle union");
  }
  for (double rho_c : {0.0, 0.5, 1.0, 2.0, 10.0}) {
    const auto [p, q] = luce_amp_closed_form(1.0, rho_c);
    c.require(p == 0.5 && q == 1.0 / 6.0, "unit row exponent closed form");
  }
  return c;
}

Check criterion_5() {
  Check c;
  for (const std::string name : {"ds_mid", "nl"}) {
    const Game g = fixtures::load(name);
    const auto trace = logit_qre_trace(g, default_lambda_grid(20));
    const auto bound = logit_dominated_bound_check(g, trace);
    c.require(bound.applicable, name + ": no dominated action found");
    c.require(bound.holds, name + ": dominated action exceeded 1/3");
    c.require(bound.max_seen <= 1.0 / 3.0 + 1e-12, name + ": bound exceeded");
  }
  return c;
}

Check criterion_6() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(614);
  std::uniform_int_distribution<int> pay(-9, 9);
  for (int t = 0; t < 50; ++t) {
    const int k = t < 25 ? 2 : 3;
    std::vector<std::vector<Rational>> payoffs(2);
    for (int p = 0; p < 2; ++p)
      for (int cell = 0; cell < k * k; ++cell)
        payoffs[p].push_back(pay(rng));
    const Game g({k, k}, payoffs);

    const auto exact = enumerate_m_equilibria(g);
    const Rational bound =
        k == 2 ? Rational(1, 4) : Rational(1, 36);  // 1/(k! * k!)
    for (const auto& eq : exact.equilibria) {
      if (eq.colorable) {
        c.require(eq.measure <= bound, "colorable measure above 1/(k!k!)");
      }
    }

    MOptions o;
    o.sampled = true;
    o.samples = 100000;
    o.seed = 90000 + (unsigned long long)(t);
    const auto sampled = enumerate_m_equilibria(g, o);
    for (const auto& eq : sampled.equilibria) {
      const auto* match = find_pattern(exact, eq.pattern);
      c.require(match != nullptr, "sampled set without exact counterpart");
      if (!match) continue;
      const double truth = to_double(match->measure);
      const double se = std::max(
          eq.measure_se, std::sqrt(truth * (1 - truth) / 100000.0));
      c.require(std::abs(eq.measure_est - truth) <= 3 * se + 1e-9,
                "sampled estimate outside three standard errors");
    }
  }
  c.require(seconds_since(t0) < 120.0, "random-game sweep exceeded 2 minutes");
  return c;
}

Check criterion_7() {
  Check c;
  for (const std::string name : {"coord", "chicken", "mondrian", "ds1"}) {
    const Game g = fixtures::load(name);
    std::mt19937_64 rng(7000 + name.size());
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Part 1: solutions for randomly drawn weights lie inside the closure of
    // the same-color set, i.e. payoff signs never oppose the weight order.
    int checked = 0, guard = 0;
    while (checked < 500 && guard++ < 20000) {
      std::vector<VecD> mu;
      for (int i = 0; i < 2; ++i) {
        VecD m(g.actions(i));
        double total = 0;
        for (int a = 0; a < g.actions(i); ++a) {
          m(a) = -std::log(std::max(unif(rng), 1e-300));
          total += m(a);
        }
        std::sort(m.data(), m.data() + m.size());
        mu.push_back(m / total);
      }
      for (const auto& sol : mu_equilibria<double>(g, mu)) {
        if (sol.segment || checked >= 500) continue;
        checked += 1;
        for (int i = 0; i < 2; ++i) {
          const VecD pi =
              g.expected_payoffs_profile<double>(i, sol.profile);
          for (int a = 0; a < g.actions(i); ++a) {
            for (int b = a + 1; b < g.actions(i); ++b) {
              const double s = sol.profile[i](a) - sol.profile[i](b);
              const double d = pi(a) - pi(b);
              if (std::abs(s) > 1e-7 && std::abs(d) > 1e-7) {
                c.require(s * d > 0, name + ": solution left its color set");
              }
            }
          }
        }
      }
    }
    c.require(checked == 500, name + ": not enough weight solutions");

    // Part 2: interior points of colorable sets are fixed points of the rank
    // correspondence weighted by the point itself.
    int accepted = 0;
    guard = 0;
    while (accepted < 500 && guard++ < 2000000) {
      const auto prof = random_profile(g, rng);
      bool interior = true;
      std::vector<VecD> payoffs;
      for (int i = 0; i < 2 && interior; ++i) {
        const VecD pi = g.expected_payoffs_profile<double>(i, prof);
        payoffs.push_back(pi);
        for (int a = 0; a < g.actions(i) && interior; ++a) {
          for (int b = a + 1; b < g.actions(i) && interior; ++b) {
            const double s = prof[i](a) - prof[i](b);
            const double d = pi(a) - pi(b);
            interior = std::abs(s) > 1e-6 && std::abs(d) > 1e-6 && s * d > 0;
          }
        }
      }
      if (!interior) continue;
      accepted += 1;
      for (int i = 0; i < 2; ++i) {
        c.require(rank_mu<double>(payoffs[i], prof[i]).contains(prof[i]),
                  name + ": interior point is not a rank fixed point");
      }
    }
    c.require(accepted == 500, name + ": not enough interior samples");
  }
  return c;
}

Check criterion_8() {
  Check c;
  for (const std::string name : {"coord", "chicken", "amp"}) {
    const Game g = fixtures::load(name);
    const auto r = enumerate_m_equilibria(g);
    for (const auto& eq : r.equilibria) {
      if (!eq.colorable) continue;
      for (const auto& comp : eq.components) {
        if (comp.dim != eq.dim) continue;
        const auto rep = behavioral_stability(g, comp.representative, 0.01,
                                              1000, 88);
        c.require(rep.stable && rep.failure_rate == 0,
                  name + ": interior representative failed a perturbation");
      }
    }
  }
  {
    const Game g = fixtures::load("nongeneric_3x3_left");
    MOptions o;
    o.symmetric = true;
    const auto r = enumerate_m_equilibria(g, o);
    bool found = false;
    for (const auto& eq : r.equilibria) {
      if (eq.dim != 1) continue;
      found = true;
      const VecQ s = eq.components[0].representative[0];
      const auto rep = behavioral_stability(g, {s, s}, 0.01, 1000, 88);
      c.require(!rep.stable,
                "knife-edge component survived every perturbation");
    }
    c.require(found, "no one-dimensional component found");
  }
  {
    const Game g = fixtures::load("matching_pennies");
    const VecQ u = uniform_point<Rational>(2);
    const auto rep = behavioral_stability(g, {u, u}, 0.01, 1000, 88);
    c.require(rep.stable && rep.failure_rate == 0,
              "uniform profile of matching pennies failed");
  }
  return c;
}

Check criterion_9() {
  Check c;
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> small(0, 4);
  std::uniform_int_distribution<int> kdist(2, 4);

  // Hull-valued composition: apply the outer map to every vertex of the
  // inner hull and take the union of the resulting vertex sets.
  const auto compose = [](auto outer, const Hull<Rational>& inner) {
    Hull<Rational> out;
    for (const auto& v : inner.vertices) {
      for (const auto& w : outer(v).vertices) {
        bool dup = false;
        for (const auto& u : out.vertices) dup = dup || u == w;
        if (!dup) out.vertices.push_back(w);
      }
    }
    return out;
  };
  const auto br = [](const VecQ& pi) { return best_response<Rational>(pi); };
  const auto rk = [](const VecQ& pi) { return rank<Rational>(pi); };

  for (int t = 0; t < 1000; ++t) {
    const int k = kdist(rng);
    VecQ pi(k);
    for (int a = 0; a < k; ++a) pi(a) = small(rng);  // frequent forced ties
    const auto b = br(pi);
    const auto r = rk(pi);
    c.require(same_vertex_set(compose(br, b).vertices, b.vertices),
              "best response is not idempotent");
    c.require(same_vertex_set(compose(rk, r).vertices, r.vertices),
              "rank is not idempotent");
    c.require(same_vertex_set(compose(br, r).vertices, b.vertices),
              "best response after rank differs from best response");
  }

  std::uniform_int_distribution<int> num(1, 24);
  for (int t = 0; t < 1000; ++t) {
    const int k = 2 + (t % 2);
    VecQ pi(k), mu(k);
    Rational total = 0;
    for (int a = 0; a < k; ++a) {
      pi(a) = small(rng);
      mu(a) = Rational(num(rng), 25);
      total += mu(a);
    }
    for (int a = 0; a < k; ++a) mu(a) = mu(a) / total;

    // Uniform weights admit only the uniform point.
    const auto u = rank_mu<Rational>(pi, uniform_point<Rational>(k));
    c.require(u.vertices.size() >= 1, "empty correspondence value");
    for (const auto& v : u.vertices)
      c.require(v == uniform_point<Rational>(k),
                "uniform weights produced a non-uniform point");

    // Degenerate weights concentrate the correspondence on best responses.
    const auto unit = rank_mu<Rational>(pi, unit_vector<Rational>(k, 0));
    c.require(same_vertex_set(unit.vertices,
                              best_response<Rational>(pi).vertices),
              "unit weights differ from the best response");

    // A weight vector evaluated at itself is a fixed point.
    const auto self = rank_mu<Rational>(mu, mu);
    for (const auto& v : self.vertices)
      c.require(v == mu, "weights are not a fixed point of their own rank");
  }
  return c;
}

Check criterion_10() {
  Check c;
  c.require(win_probability(0.5, 0.5) == 0.75, "closed form at one half");
  const double rate = elicit_win_rate(0.5, 0.5, 100000, 10101);
  const double sigma = std::sqrt(0.75 * 0.25 / 100000.0);
  c.require(std::abs(rate - 0.75) <= 3 * sigma,
            "simulated win rate off the closed form");

  std::mt19937_64 rng(2020);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const double p = unif(rng);
    SliderReport r;
    VecD b(2);
    b << p, 1 - p;
    r.truth = {b};
    r.report = {b};
    const auto ic = verify_incentive_compatibility(r, 0.001);
    c.require(ic.incentive_compatible && ic.max_argmax_gap <= 0.001 + 1e-12,
              "truthful report is not the grid argmax");
  }
  return c;
}

Check criterion_11() {
  Check c;
  {
    // Seven separated blobs on the diagonal of the square.
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> jitter(-0.004, 0.004);
    std::vector<VecD> points;
    for (int blob = 0; blob < 7; ++blob) {
      const double center = 0.08 + 0.14 * blob;
      for (int i = 0; i < 20; ++i) {
        VecD v(2);
        v << center + jitter(rng), center + jitter(rng);
        points.push_back(v);
      }
    }
    const auto curve = elbow(points, 2, 10, 200, 4);
    c.require(curve.suggested_k == 7, "elbow did not pick seven clusters");
    const auto a = kmeans(points, 7, 300, 12);
    const auto b = kmeans(points, 7, 300, 12);
    c.require(a.total_error == b.total_error &&
                  a.assignment == b.assignment,
              "seeded clustering is not deterministic");
  }
  {
    // Classification must agree with exact set membership on labeled points.
    const Game g = fixtures::load("coord");
    const auto sets = enumerate_m_equilibria(g);
    const int hi_set =
        int(find_pattern(sets, {{1}, {1}}) - &sets.equilibria[0]);
    const int lo_set =
        int(find_pattern(sets, {{-1}, {-1}}) - &sets.equilibria[0]);

    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<int> numerator(1, 10000);
    std::vector<Observation> obs;
    std::vector<int> belief_truth, choice_truth;
    const Rational den(10001);
    for (int t = 0; t < 10000; ++t) {
      const Rational x(numerator(rng), 10001);
      Observation o;
      o.subject = "s";
      o.round = t;
      o.role = 0;
      o.game_id = "coord";
      o.choice = t % 2;
      VecD b(2);
      b << to_double(x), to_double(1 - x);
      o.belief = b;
      obs.push_back(o);

      int truth = -1;
      for (int e = 0; e < int(sets.equilibria.size()); ++e) {
        const auto& f = sets.equilibria[e].belief_factors[0];
        if (f.contains(geom::P2{x, 0})) truth = e;
      }
      belief_truth.push_back(truth);
      choice_truth.push_back(o.choice == 0 ? hi_set : lo_set);
    }
    const auto cls = classify_into_sets(g, obs, sets);
    for (int t = 0; t < 10000; ++t) {
      c.require(cls.belief_set[t] == belief_truth[t],
                "belief classification disagrees with membership");
      c.require(cls.choice_set[t] == choice_truth[t],
                "choice classification disagrees with membership");
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"closed-form choice and belief rectangles", criterion_1},
      {"set counts, dimensions, and equilibrium markers", criterion_2},
      {"weighted-rank solutions of the hawk-dove game", criterion_3},
      {"scaled-payoff fixed points cover the two-rectangle union",
       criterion_4},
      {"logit path keeps mixture-dominated actions under one third",
       criterion_5},
      {"measure bound and sampled estimates on random games", criterion_6},
      {"fixed points and set interiors coincide", criterion_7},
      {"perturbation stability verdicts", criterion_8},
      {"idempotence and correspondence identities", criterion_9},
      {"belief elicitation: closed form, simulation, incentives",
       criterion_10},
      {"clustering and set classification", criterion_11},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    std::string why;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.ok = false;
      result.why = std::string("exception: ") + e.what();
    }
    if (result.ok) {
      std::printf("PASS %2zu  %s\n", i + 1, criteria[i].first.c_str());
    } else {
      failures += 1;
      std::printf("FAIL %2zu  %s (%s)\n", i + 1, criteria[i].first.c_str(),
                  result.why.c_str());
    }
  }
  return failures;
}
