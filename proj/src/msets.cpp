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

#include "meq/msets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace meq {

namespace {

// Per-pair membership tests. s = sign(sigma_k - sigma_l), d = sign of the
// expected-payoff difference at the choice point, pinned = both sigma entries
// are zero. Definition 1 demands strict alignment wherever payoffs are
// strict; definition 2 admits the equality branches.
bool pair_ok(int definition, int s, int d, bool pinned) {
  if (definition == 1) return d == 0 || s == d;
  return s * d > 0 || d == 0 || pinned;
}

// Closure variant used when testing perturbed games: opposite strict signs
// are the only failure.
bool pair_ok_relaxed(int s, int d, bool pinned) {
  return s * d >= 0 || pinned;
}

// Belief line for a pair: D_b is the payoff-difference sign at the belief.
bool belief_pair_ok(int definition, int d_choice, int d_belief, bool pinned) {
  if (definition == 1) return d_belief == d_choice;
  return d_choice * d_belief > 0 || d_belief == 0 || pinned;
}

struct PairIdx {
  int k, l;
};

std::vector<PairIdx> action_pairs(int k) {
  std::vector<PairIdx> out;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) out.push_back({a, b});
  return out;
}

// Worst-to-best action order implied by a strict pairwise sign pattern.
std::vector<int> order_from_pattern(int k, const std::vector<int>& signs) {
  std::vector<int> wins(k, 0);
  int idx = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b, ++idx) {
      if (signs[idx] > 0)
        ++wins[a];
      else if (signs[idx] < 0)
        ++wins[b];
    }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return wins[a] < wins[b]; });
  return order;
}

// ---------------------------------------------------------------------------
// Exact enumeration machinery (two factors, or one on the diagonal).

struct FactorCellData {
  geom::Poly poly;
  VecQ sigma;                   // lifted representative
  std::vector<int> own_signs;   // pairwise signs of sigma
  std::vector<bool> zero;       // per coordinate, zero on this cell
  std::vector<int> opp_pi_signs;  // pairwise signs of the *other* player's
                                  // expected payoffs against sigma
};

struct FactorData {
  int k = 0;
  geom::CellComplex cx;
  std::vector<FactorCellData> cells;
};

// Payoff difference coefficients for player `i`'s actions (k,l) as a
// functional over the opponent's strategy.
VecQ diff_coeffs(const Game& game, int i, int k, int l) {
  const int j = 1 - i;
  VecQ c(game.actions(j));
  for (int o = 0; o < game.actions(j); ++o) {
    const std::vector<int> pk = i == 0 ? std::vector<int>{k, o}
                                       : std::vector<int>{o, k};
    const std::vector<int> pl = i == 0 ? std::vector<int>{l, o}
                                       : std::vector<int>{o, l};
    c(o) = game.payoff(i, pk) - game.payoff(i, pl);
  }
  return c;
}

// Build the arrangement for the factor holding player `owner`'s strategy;
// `judged` is the player whose payoff comparisons this factor decides (the
// opponent, or the same player on the symmetric diagonal).
FactorData build_factor(const Game& game, int owner, int judged) {
  FactorData f;
  f.k = game.actions(owner);
  std::vector<geom::Lin> lines;
  for (const auto& [a, b] : action_pairs(f.k)) {
    VecQ c = VecQ::Zero(f.k);
    c(a) = 1;
    c(b) = -1;
    lines.push_back(geom::functional_from_coeffs(c));
  }
  for (const auto& [a, b] : action_pairs(game.actions(judged)))
    lines.push_back(
        geom::functional_from_coeffs(diff_coeffs(game, judged, a, b)));
  f.cx = geom::build_cell_complex(f.k, lines);
  for (const auto& poly : f.cx.cells) {
    FactorCellData cd;
    cd.poly = poly;
    cd.sigma = geom::lift(poly.representative(), f.k);
    cd.own_signs.clear();
    for (const auto& [a, b] : action_pairs(f.k))
      cd.own_signs.push_back(tie_sign(cd.sigma(a), cd.sigma(b)));
    cd.zero.resize(f.k);
    for (int a = 0; a < f.k; ++a) cd.zero[a] = cd.sigma(a) == 0;
    for (const auto& [a, b] : action_pairs(game.actions(judged))) {
      Rational d = 0;
      const VecQ c = diff_coeffs(game, judged, a, b);
      for (int o = 0; o < f.k; ++o) d += c(o) * cd.sigma(o);
      cd.opp_pi_signs.push_back(tie_sign(d, Rational(0)));
    }
    f.cells.push_back(std::move(cd));
  }
  return f;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool poly_inside(const geom::Poly& inner, const geom::Poly& outer) {
  for (const auto& p : inner.pts)
    if (!outer.contains(p)) return false;
  return true;
}

// Dirichlet(1,...,1) draw.
VecD draw_simplex(std::mt19937_64& rng, int k) {
  std::exponential_distribution<double> exp1(1.0);
  VecD v(k);
  double total = 0;
  for (int i = 0; i < k; ++i) {
    v(i) = exp1(rng);
    total += v(i);
  }
  return v / total;
}

}  // namespace

MembershipReport membership(const Game& game, const std::vector<VecQ>& choice,
                            int definition) {
  MembershipReport out;
  out.member = true;
  for (int i = 0; i < game.num_players(); ++i) {
    const VecQ pi = game.expected_payoffs_profile<Rational>(i, choice);
    for (const auto& [a, b] : action_pairs(game.actions(i))) {
      const int s = tie_sign(choice[i](a), choice[i](b));
      const int d = tie_sign(pi(a), pi(b));
      const bool pinned = choice[i](a) == 0 && choice[i](b) == 0;
      if (!pair_ok(definition, s, d, pinned)) out.member = false;
      if (s * d <= 0) out.boundary = true;
    }
  }
  out.boundary = out.member && out.boundary;
  return out;
}

MembershipReport membership(const Game& game, const std::vector<VecQ>& choice,
                            const std::vector<VecQ>& beliefs,
                            int definition) {
  if (game.num_players() != 2)
    throw CapabilityError("explicit-belief membership requires 2 players");
  MembershipReport out = membership(game, choice, definition);
  for (int i = 0; i < 2; ++i) {
    const VecQ pi_c = game.expected_payoffs_profile<Rational>(i, choice);
    std::vector<VecQ> at_belief = choice;
    at_belief[1 - i] = beliefs[i];
    const VecQ pi_b = game.expected_payoffs_profile<Rational>(i, at_belief);
    for (const auto& [a, b] : action_pairs(game.actions(i))) {
      const int dc = tie_sign(pi_c(a), pi_c(b));
      const int db = tie_sign(pi_b(a), pi_b(b));
      const bool pinned = choice[i](a) == 0 && choice[i](b) == 0;
      if (!belief_pair_ok(definition, dc, db, pinned)) out.member = false;
      if (dc * db <= 0) out.boundary = true;
    }
  }
  out.boundary = out.member && out.boundary;
  return out;
}

namespace {

MResult enumerate_exact(const Game& game, const MOptions& opts) {
  if (game.num_players() != 2)
    throw CapabilityError("exact enumeration requires a 2-player game");
  for (int i = 0; i < 2; ++i)
    if (game.actions(i) > 3)
      throw CapabilityError(
          "exact enumeration is limited to 3 actions per player");
  if (opts.symmetric && !game.symmetric())
    throw ValidationError("symmetric mode requires a symmetric game");

  MResult res;
  res.options = opts;

  std::vector<FactorData> factors;
  if (opts.symmetric) {
    factors.push_back(build_factor(game, 0, 0));
    res.factors = 1;
    res.factor_actions = {game.actions(0)};
  } else {
    factors.push_back(build_factor(game, 0, 1));
    factors.push_back(build_factor(game, 1, 0));
    res.factors = 2;
    res.factor_actions = {game.actions(0), game.actions(1)};
  }
  const int nf = res.factors;
  int full_dim = 0;
  for (int f = 0; f < nf; ++f) full_dim += res.factor_actions[f] - 1;

  // Enumerate cell tuples, keep members, group by payoff-sign pattern.
  struct Entry {
    std::vector<int> cell;  // per-factor cell index
  };
  std::map<std::vector<std::vector<int>>, std::vector<Entry>> groups;

  std::vector<int> idx(nf, 0);
  while (true) {
    // Evaluate membership at the tuple's representative.
    bool member = true;
    std::vector<std::vector<int>> pattern(nf);
    if (opts.symmetric) {
      const FactorCellData& c = factors[0].cells[idx[0]];
      pattern[0] = c.opp_pi_signs;
      const auto pairs = action_pairs(factors[0].k);
      for (std::size_t p = 0; p < pairs.size() && member; ++p) {
        const bool pinned = c.zero[pairs[p].k] && c.zero[pairs[p].l];
        member = pair_ok(opts.definition, c.own_signs[p], c.opp_pi_signs[p],
                         pinned);
      }
    } else {
      for (int i = 0; i < 2 && member; ++i) {
        const FactorCellData& mine = factors[i].cells[idx[i]];
        const FactorCellData& theirs = factors[1 - i].cells[idx[1 - i]];
        pattern[i] = theirs.opp_pi_signs;  // signs of player i's payoffs
        const auto pairs = action_pairs(factors[i].k);
        for (std::size_t p = 0; p < pairs.size() && member; ++p) {
          const bool pinned =
              mine.zero[pairs[p].k] && mine.zero[pairs[p].l];
          member = pair_ok(opts.definition, mine.own_signs[p],
                           theirs.opp_pi_signs[p], pinned);
        }
      }
      if (member) {
        // pattern[i] was filled only while member stayed true; refill.
        pattern[0] = factors[1].cells[idx[1]].opp_pi_signs;
        pattern[1] = factors[0].cells[idx[0]].opp_pi_signs;
      }
    }
    if (member) groups[pattern].push_back({idx});

    int f = nf - 1;
    for (; f >= 0; --f) {
      if (++idx[f] < int(factors[f].cells.size())) break;
      idx[f] = 0;
    }
    if (f < 0) break;
  }

  // Redundancy rule: a pattern group is subsumed when each of its cells lies
  // inside the closure of a cell of some other group.
  auto cell_inside = [&](const Entry& a, const Entry& b) {
    for (int f = 0; f < nf; ++f) {
      if (!poly_inside(factors[f].cells[a.cell[f]].poly,
                       factors[f].cells[b.cell[f]].poly))
        return false;
    }
    return true;
  };
  std::vector<const std::vector<std::vector<int>>*> keys;
  for (const auto& [k, v] : groups) keys.push_back(&k);
  std::map<std::vector<std::vector<int>>, bool> dropped;
  for (const auto* key : keys) {
    bool all_covered = true;
    for (const auto& e : groups[*key]) {
      bool covered = false;
      for (const auto* other : keys) {
        if (other == key) continue;
        for (const auto& oe : groups[*other]) {
          if (cell_inside(e, oe)) {
            covered = true;
            break;
          }
        }
        if (covered) break;
      }
      if (!covered) {
        all_covered = false;
        break;
      }
    }
    dropped[*key] = all_covered;
  }

  for (const auto* key : keys) {
    if (dropped[*key]) continue;
    const auto& entries = groups[*key];
    MEquilibrium eq;
    eq.pattern = *key;
    eq.colorable = true;
    for (const auto& signs : eq.pattern)
      if (!is_strict_pattern(signs)) eq.colorable = false;

    // Components via factor-wise closure adjacency.
    UnionFind uf(int(entries.size()));
    for (std::size_t a = 0; a < entries.size(); ++a) {
      for (std::size_t b = a + 1; b < entries.size(); ++b) {
        bool adj = true;
        for (int f = 0; f < nf && adj; ++f) {
          const int ca = entries[a].cell[f], cb = entries[b].cell[f];
          if (ca == cb) continue;
          const auto& nbrs = factors[f].cx.adjacency[ca];
          adj = std::find(nbrs.begin(), nbrs.end(), cb) != nbrs.end();
        }
        if (adj) uf.unite(int(a), int(b));
      }
    }
    std::map<int, MComponent> comps;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      MCell cell;
      cell.dim = 0;
      cell.measure = 1;
      for (int f = 0; f < nf; ++f) {
        const auto& poly = factors[f].cells[entries[e].cell[f]].poly;
        cell.factors.push_back(poly);
        cell.dim += poly.dim();
        cell.measure *= geom::normalized_measure(poly, factors[f].k);
      }
      if (cell.dim != full_dim) cell.measure = 0;
      auto& comp = comps[uf.find(int(e))];
      if (cell.dim > comp.dim) {
        comp.dim = cell.dim;
        comp.representative.clear();
        for (int f = 0; f < nf; ++f)
          comp.representative.push_back(
              factors[f].cells[entries[e].cell[f]].sigma);
      }
      comp.measure += cell.measure;
      comp.cells.push_back(std::move(cell));
    }
    for (auto& [root, comp] : comps) {
      eq.components.push_back(std::move(comp));
      eq.dim = std::max(eq.dim, eq.components.back().dim);
      eq.measure += eq.components.back().measure;
    }
    eq.disconnected = eq.components.size() > 1;
    if (!eq.colorable || eq.dim != full_dim) eq.colorable = false;
    if (eq.colorable)
      for (int f = 0; f < nf; ++f)
        eq.color.push_back(order_from_pattern(
            res.factor_actions[f],
            eq.pattern[opts.symmetric ? 0 : f]));

    // Belief polytopes. For each factor (the owner's belief about the other
    // player): strict pairs clip to the same payoff-comparison side; tied
    // pairs force equality unless both choice entries vanish on every cell.
    eq.belief_measure = 1;
    for (int f = 0; f < nf; ++f) {
      const int owner = opts.symmetric ? 0 : f;
      const int other = opts.symmetric ? 0 : 1 - f;
      geom::Poly poly = geom::simplex_poly(game.actions(other));
      const auto pairs = action_pairs(game.actions(owner));
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const int d = eq.pattern[opts.symmetric ? 0 : f][p];
        bool pinned_everywhere = true;
        for (const auto& e : entries) {
          const auto& cd = factors[f].cells[e.cell[f]];
          // Pinned only when both entries are zero on the whole closure.
          for (const auto& v : cd.poly.pts) {
            const VecQ s = geom::lift(v, factors[f].k);
            if (s(pairs[p].k) != 0 || s(pairs[p].l) != 0)
              pinned_everywhere = false;
          }
        }
        if (pinned_everywhere) continue;
        const geom::Lin lin = geom::functional_from_coeffs(
            diff_coeffs(game, owner, pairs[p].k, pairs[p].l));
        if (d > 0) {
          poly = poly.clip(lin);
        } else if (d < 0) {
          poly = poly.clip({-lin.a, -lin.b, -lin.c});
        } else {
          poly = poly.clip(lin).clip({-lin.a, -lin.b, -lin.c});
        }
      }
      eq.belief_measure *= geom::normalized_measure(poly, game.actions(other));
      eq.belief_factors.push_back(std::move(poly));
    }

    res.equilibria.push_back(std::move(eq));
  }
  std::sort(res.equilibria.begin(), res.equilibria.end(),
            [](const MEquilibrium& a, const MEquilibrium& b) {
              return a.pattern < b.pattern;
            });
  return res;
}

MResult enumerate_sampled(const Game& game, const MOptions& opts) {
  if (!opts.seed)
    throw ValidationError("sampled mode requires an explicit seed");
  if (opts.symmetric && !game.symmetric())
    throw ValidationError("symmetric mode requires a symmetric game");
  const int n = game.num_players();
  MResult res;
  res.options = opts;
  if (opts.symmetric) {
    res.factors = 1;
    res.factor_actions = {game.actions(0)};
  } else {
    res.factors = n;
    res.factor_actions = game.action_counts();
  }

  std::mt19937_64 rng(*opts.seed);
  struct Acc {
    long count = 0;
    std::vector<std::vector<VecD>> cloud;
  };
  std::map<std::vector<std::vector<int>>, Acc> hits;

  for (long s = 0; s < opts.samples; ++s) {
    std::vector<VecD> draw(res.factors);
    for (int f = 0; f < res.factors; ++f)
      draw[f] = draw_simplex(rng, res.factor_actions[f]);
    std::vector<VecD> profile(n);
    for (int i = 0; i < n; ++i)
      profile[i] = opts.symmetric ? draw[0] : draw[i];
    bool member = true;
    std::vector<std::vector<int>> pattern(res.factors);
    for (int i = 0; i < n && member; ++i) {
      const VecD pi = game.expected_payoffs_profile<double>(i, profile);
      const std::vector<int> signs = pairwise_signs(pi);
      if (!opts.symmetric || i == 0) pattern[opts.symmetric ? 0 : i] = signs;
      int p = 0;
      for (const auto& [a, b] : action_pairs(game.actions(i))) {
        const int so = tie_sign(profile[i](a), profile[i](b));
        if (!pair_ok(opts.definition, so, signs[p], false)) member = false;
        ++p;
      }
    }
    if (!member) continue;
    auto& acc = hits[pattern];
    ++acc.count;
    if (int(acc.cloud.size()) < opts.cloud_cap) acc.cloud.push_back(draw);
  }

  for (auto& [pattern, acc] : hits) {
    MEquilibrium eq;
    eq.pattern = pattern;
    eq.colorable = true;
    for (const auto& signs : pattern)
      if (!is_strict_pattern(signs)) eq.colorable = false;
    if (eq.colorable)
      for (int f = 0; f < res.factors; ++f)
        eq.color.push_back(
            order_from_pattern(res.factor_actions[f], pattern[f]));
    const double p = double(acc.count) / double(opts.samples);
    eq.measure_est = p;
    eq.measure_se = std::sqrt(p * (1 - p) / double(opts.samples));
    eq.cloud = std::move(acc.cloud);

    // Connectivity hint: single-linkage with radius ten times the median
    // nearest-neighbor distance; more than one cluster suggests a gap.
    const int m = std::min<int>(int(eq.cloud.size()), 1000);
    if (m >= 10) {
      std::vector<VecD> flat(m);
      for (int i = 0; i < m; ++i) {
        int total = 0;
        for (const auto& v : eq.cloud[i]) total += int(v.size());
        VecD x(total);
        int at = 0;
        for (const auto& v : eq.cloud[i]) {
          x.segment(at, v.size()) = v;
          at += int(v.size());
        }
        flat[i] = std::move(x);
      }
      std::vector<double> nn(m, 1e30);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (i == j) continue;
          nn[i] = std::min(nn[i], (flat[i] - flat[j]).norm());
        }
      std::vector<double> med = nn;
      std::nth_element(med.begin(), med.begin() + m / 2, med.end());
      const double radius = 10.0 * med[m / 2];
      UnionFind uf(m);
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          if ((flat[i] - flat[j]).norm() <= radius) uf.unite(i, j);
      std::vector<int> roots;
      for (int i = 0; i < m; ++i) roots.push_back(uf.find(i));
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      eq.disconnected_hint = roots.size() > 1;
    }
    res.equilibria.push_back(std::move(eq));
  }

  // Belief-measure estimates against the surviving patterns (two-player
  // games; zero when a tied pair forces an equality of measure zero).
  if (n == 2) {
    for (auto& eq : res.equilibria) {
      bool has_tie = false;
      for (const auto& signs : eq.pattern)
        for (int s : signs)
          if (s == 0) has_tie = true;
      if (has_tie) {
        eq.belief_measure_est = 0;
        continue;
      }
      long ok = 0;
      const long bsamples = std::max<long>(1, opts.samples / 10);
      for (long s = 0; s < bsamples; ++s) {
        bool good = true;
        for (int f = 0; f < res.factors && good; ++f) {
          const int owner = opts.symmetric ? 0 : f;
          const int other = opts.symmetric ? 0 : 1 - f;
          const VecD beta = draw_simplex(rng, game.actions(other));
          int p = 0;
          for (const auto& [a, b] : action_pairs(game.actions(owner))) {
            double diff = 0;
            const VecQ c = diff_coeffs(game, owner, a, b);
            for (int o = 0; o < beta.size(); ++o)
              diff += to_double(c(o)) * beta(o);
            if (double(eq.pattern[f][p]) * diff <= 0) good = false;
            ++p;
          }
        }
        if (good) ++ok;
      }
      eq.belief_measure_est = double(ok) / double(bsamples);
    }
  }
  return res;
}

}  // namespace

MResult enumerate_m_equilibria(const Game& game, const MOptions& opts) {
  if (opts.definition != 1 && opts.definition != 2)
    throw ValidationError("definition must be 1 or 2");
  return opts.sampled ? enumerate_sampled(game, opts)
                      : enumerate_exact(game, opts);
}

std::vector<geom::Poly> belief_set(const Game&, const MResult&,
                                   const MEquilibrium& eq) {
  return eq.belief_factors;
}

McMeasure measure_mc(const Game& game, const MResult& result,
                     const MEquilibrium& eq, long samples,
                     unsigned long long seed) {
  std::mt19937_64 rng(seed);
  const int n = game.num_players();
  long hit = 0;
  for (long s = 0; s < samples; ++s) {
    std::vector<VecD> draw(result.factors);
    for (int f = 0; f < result.factors; ++f)
      draw[f] = draw_simplex(rng, result.factor_actions[f]);
    std::vector<VecD> profile(n);
    for (int i = 0; i < n; ++i)
      profile[i] = result.options.symmetric ? draw[0] : draw[i];
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const VecD pi = game.expected_payoffs_profile<double>(i, profile);
      const std::vector<int> signs = pairwise_signs(pi);
      const int f = result.options.symmetric ? 0 : i;
      if (signs != eq.pattern[f]) ok = false;
      int p = 0;
      for (const auto& [a, b] : action_pairs(game.actions(i))) {
        if (ok && !pair_ok(2, tie_sign(profile[i](a), profile[i](b)),
                           signs[p], false))
          ok = false;
        ++p;
      }
      if (result.options.symmetric) break;
    }
    if (ok) ++hit;
  }
  McMeasure out;
  out.estimate = double(hit) / double(samples);
  out.std_error =
      std::sqrt(out.estimate * (1 - out.estimate) / double(samples));
  return out;
}

StabilityReport behavioral_stability(const Game& game,
                                     const std::vector<VecQ>& choice,
                                     double eps, int trials,
                                     unsigned long long seed) {
  StabilityReport out;
  // Fast path: every pair is either pinned at zero (immune to payoff noise)
  // or strictly aligned with a payoff margin exceeding the worst-case shift
  // of an expected-payoff difference (2 * eps).
  bool robust = true;
  for (int i = 0; i < game.num_players() && robust; ++i) {
    const VecQ pi = game.expected_payoffs_profile<Rational>(i, choice);
    for (const auto& [a, b] : action_pairs(game.actions(i))) {
      const bool pinned = choice[i](a) == 0 && choice[i](b) == 0;
      if (pinned) continue;
      const int s = tie_sign(choice[i](a), choice[i](b));
      const int d = tie_sign(pi(a), pi(b));
      const double margin = std::abs(to_double(pi(a) - pi(b)));
      if (!(s * d > 0 && margin > 2 * eps)) {
        robust = false;
        break;
      }
    }
  }
  if (robust) {
    out.stable = true;
    out.fast_path = true;
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-eps, eps);
  std::vector<VecD> prof_d(game.num_players());
  for (int i = 0; i < game.num_players(); ++i)
    prof_d[i] = to_double_vec(choice[i]);
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    bool ok = true;
    for (int i = 0; i < game.num_players() && ok; ++i) {
      // Perturbed expected payoffs, summed directly over the tensor.
      VecD pi = VecD::Zero(game.actions(i));
      for (std::size_t f = 0; f < game.profile_count(); ++f) {
        const std::vector<int> p = game.unflatten(f);
        double w = 1;
        for (int j = 0; j < game.num_players(); ++j) {
          if (j == i) continue;
          w *= prof_d[j](p[j]);
        }
        const double u = to_double(game.payoff_tensor(i)[f]) + noise(rng);
        if (w != 0) pi(p[i]) += w * u;
      }
      for (const auto& [a, b] : action_pairs(game.actions(i))) {
        const bool pinned = choice[i](a) == 0 && choice[i](b) == 0;
        const int s = tie_sign(choice[i](a), choice[i](b));
        const int d = tie_sign(pi(a), pi(b));
        if (!pair_ok_relaxed(s, d, pinned)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) ++failures;
  }
  out.failure_rate = double(failures) / double(trials);
  out.stable = failures == 0;
  return out;
}

std::vector<std::vector<int>> boundary_markers(
    const MResult& result, const std::vector<std::vector<VecQ>>& points) {
  std::vector<std::vector<int>> out;
  for (const auto& pt : points) {
    std::vector<int> in;
    for (int e = 0; e < int(result.equilibria.size()); ++e) {
      bool inside = false;
      for (const auto& comp : result.equilibria[e].components) {
        for (const auto& cell : comp.cells) {
          bool all = true;
          for (int f = 0; f < result.factors && all; ++f)
            all = cell.factors[f].contains(geom::drop(pt[f]));
          if (all) {
            inside = true;
            break;
          }
        }
        if (inside) break;
      }
      if (inside) in.push_back(e);
    }
    out.push_back(std::move(in));
  }
  return out;
}

}  // namespace meq
