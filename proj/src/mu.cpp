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

#include "meq/mu.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "meq/msets.hpp"

namespace meq {

namespace {

template <typename S>
bool near(const S& a, const S& b, double eps) {
  return ties(a, b, eps);
}

template <typename S>
bool profile_near(const std::vector<Vec<S>>& a, const std::vector<Vec<S>>& b,
                  double eps) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < a[i].size(); ++j)
      if (!near(a[i](j), b[i](j), eps)) return false;
  return true;
}

// Assign sorted weights to actions following a worst-to-best permutation.
template <typename S>
Vec<S> assign(const std::vector<S>& sorted_w, const std::vector<int>& perm) {
  Vec<S> v(int(perm.size()));
  for (int t = 0; t < int(perm.size()); ++t) v(perm[t]) = sorted_w[t];
  return v;
}

std::vector<std::vector<int>> all_perms(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Affine coefficients of player i's payoff difference (action 0 minus
// action 1) in the opponent's first-action probability, for 2x2 games.
template <typename S>
std::pair<S, S> diff_line(const Game& game, int i) {
  auto u = [&](int a, int b) {
    const std::vector<int> prof = i == 0 ? std::vector<int>{a, b}
                                         : std::vector<int>{b, a};
    if constexpr (std::is_same_v<S, double>) {
      return to_double(game.payoff(i, prof));
    } else {
      return game.payoff(i, prof);
    }
  };
  // d(t) = (u(0,0)-u(1,0)) t + (u(0,1)-u(1,1)) (1-t) = a t + b.
  const S d0 = u(0, 0) - u(1, 0);
  const S d1 = u(0, 1) - u(1, 1);
  return {d0 - d1, d1};
}

}  // namespace

template <typename S>
std::vector<MuSolution<S>> mu_equilibria(const Game& game,
                                         const std::vector<Vec<S>>& mu,
                                         double eps) {
  if (game.num_players() != 2)
    throw CapabilityError("weighted rank fixed points require 2 players");
  for (int i = 0; i < 2; ++i) {
    if (game.actions(i) > 3)
      throw CapabilityError(
          "weighted rank fixed points are limited to 3 actions");
    if (int(mu[i].size()) != game.actions(i))
      throw ShapeError("weight vector length must match the action count");
  }

  std::vector<std::vector<S>> sorted(2);
  for (int i = 0; i < 2; ++i) {
    sorted[i].assign(mu[i].data(), mu[i].data() + mu[i].size());
    std::sort(sorted[i].begin(), sorted[i].end());
  }

  S tol;
  if constexpr (std::is_same_v<S, Rational>) {
    tol = S(0);
  } else {
    tol = S(eps);
  }

  std::vector<MuSolution<S>> out;
  auto push_point = [&](std::vector<Vec<S>> profile) {
    for (const auto& s : out)
      if (!s.segment && profile_near(s.profile, profile, eps)) return;
    MuSolution<S> sol;
    sol.profile = std::move(profile);
    out.push_back(std::move(sol));
  };

  // Strict-order candidates: a permutation per player pins both mixtures;
  // hull membership then verifies the fixed point (and absorbs ties).
  for (const auto& p0 : all_perms(game.actions(0))) {
    for (const auto& p1 : all_perms(game.actions(1))) {
      std::vector<Vec<S>> prof = {assign(sorted[0], p0),
                                  assign(sorted[1], p1)};
      bool ok = true;
      for (int i = 0; i < 2 && ok; ++i) {
        const Vec<S> pi = game.expected_payoffs_profile<S>(i, prof);
        ok = rank_mu(pi, mu[i], eps).contains(prof[i], eps);
      }
      if (ok) push_point(std::move(prof));
    }
  }

  // Tie families (2x2 only): one player's payoffs tie, pinning the other
  // player's mixture and freeing this player's weight over a segment.
  if (game.actions(0) == 2 && game.actions(1) == 2) {
    for (int i = 0; i < 2; ++i) {
      const int j = 1 - i;
      const auto [ai, bi] = diff_line<S>(game, i);  // in sigma_j(0)
      if (near(ai, S(0), eps)) continue;
      const S tie_at = -bi / ai;  // opponent mixture tying player i
      if (tie_at < S(0) - tol || tie_at > S(1) + tol) continue;
      Vec<S> sig_j(2);
      sig_j << tie_at, S(1) - tie_at;
      // sigma_j must itself be rank-compatible for player j as player i's
      // mixture t ranges over [m_i, M_i].
      const S mi = sorted[i][0];
      const S Mi = sorted[i][1];
      const S mj = sorted[j][0];
      const S Mj = sorted[j][1];
      const auto [aj, bj] = diff_line<S>(game, j);  // in sigma_i(0)
      const bool plus_ok = near(sig_j(0), Mj, eps);
      const bool minus_ok = near(sig_j(0), mj, eps);
      const bool zero_ok =
          sig_j(0) >= mj - tol && sig_j(0) <= Mj + tol;

      // Allowed t-set within [mi, Mi] under the sign of d_j(t) = aj t + bj.
      std::vector<std::pair<S, S>> pieces;
      auto add_piece = [&](S lo, S hi) {
        lo = std::max(lo, mi);
        hi = std::min(hi, Mi);
        if (lo <= hi) pieces.push_back({lo, hi});
      };
      if (near(aj, S(0), eps)) {
        const int s0 = tie_sign(bj, S(0), eps);
        if ((s0 > 0 && plus_ok) || (s0 < 0 && minus_ok) ||
            (s0 == 0 && zero_ok))
          add_piece(S(0), S(1));
      } else {
        const S root = -bj / aj;
        const bool left_ok = (aj > S(0)) ? minus_ok : plus_ok;
        const bool right_ok = (aj > S(0)) ? plus_ok : minus_ok;
        if (left_ok) add_piece(S(0), root);
        if (right_ok) add_piece(root, S(1));
        if (zero_ok) add_piece(root, root);
      }
      // Merge overlapping pieces.
      std::sort(pieces.begin(), pieces.end());
      std::vector<std::pair<S, S>> merged;
      for (const auto& p : pieces) {
        if (!merged.empty() && p.first <= merged.back().second + tol) {
          merged.back().second = std::max(merged.back().second, p.second);
        } else {
          merged.push_back(p);
        }
      }
      for (const auto& [lo, hi] : merged) {
        auto at = [&](const S& t) {
          Vec<S> sig_i(2);
          sig_i << t, S(1) - t;
          std::vector<Vec<S>> prof(2);
          prof[i] = sig_i;
          prof[j] = sig_j;
          return prof;
        };
        if (near(lo, hi, eps)) {
          push_point(at(lo));
          continue;
        }
        MuSolution<S> sol;
        sol.segment = true;
        sol.profile = at((lo + hi) / S(2));
        sol.endpoints = {at(lo), at(hi)};
        out.push_back(std::move(sol));
      }
    }
  }

  // Drop points absorbed by a segment.
  std::vector<MuSolution<S>> kept;
  for (const auto& s : out) {
    bool absorbed = false;
    if (!s.segment) {
      for (const auto& seg : out) {
        if (!seg.segment) continue;
        // The segment varies in one player's mixture only.
        bool on = true;
        for (std::size_t i = 0; i < s.profile.size() && on; ++i) {
          const auto& a = seg.endpoints[0][i];
          const auto& b = seg.endpoints[1][i];
          if (near(a(0), b(0), eps)) {
            on = near(s.profile[i](0), a(0), eps);
          } else {
            const S lo = std::min(a(0), b(0));
            const S hi = std::max(a(0), b(0));
            on = s.profile[i](0) >= lo - tol &&
                 s.profile[i](0) <= hi + tol;
          }
        }
        if (on) absorbed = true;
      }
    }
    if (!absorbed) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(),
            [](const MuSolution<S>& a, const MuSolution<S>& b) {
              for (std::size_t i = 0; i < a.profile.size(); ++i)
                for (int c = 0; c < a.profile[i].size(); ++c)
                  if (a.profile[i](c) != b.profile[i](c))
                    return a.profile[i](c) < b.profile[i](c);
              return a.segment < b.segment;
            });
  return kept;
}

template std::vector<MuSolution<double>> mu_equilibria<double>(
    const Game&, const std::vector<Vec<double>>&, double);
template std::vector<MuSolution<Rational>> mu_equilibria<Rational>(
    const Game&, const std::vector<Vec<Rational>>&, double);

std::vector<MuSolutionD> mu_equilibria_rho(const Game& game, double rho) {
  std::vector<VecD> mu;
  for (int i = 0; i < game.num_players(); ++i)
    mu.push_back(mu_generator(game.actions(i), rho));
  return mu_equilibria<double>(game, mu);
}

std::vector<MuSolutionQ> mu_equilibria_rho_exact(const Game& game, long rho) {
  std::vector<VecQ> mu;
  for (int i = 0; i < game.num_players(); ++i)
    mu.push_back(mu_generator_exact(game.actions(i), rho));
  return mu_equilibria<Rational>(game, mu);
}

namespace {

std::vector<VecD> rep_points(const MuSolutionD& s) {
  std::vector<VecD> reps;
  auto flat = [](const std::vector<VecD>& prof) {
    int total = 0;
    for (const auto& v : prof) total += int(v.size());
    VecD x(total);
    int at = 0;
    for (const auto& v : prof) {
      x.segment(at, v.size()) = v;
      at += int(v.size());
    }
    return x;
  };
  reps.push_back(flat(s.profile));
  for (const auto& e : s.endpoints) reps.push_back(flat(e));
  return reps;
}

double solution_distance(const MuSolutionD& a, const MuSolutionD& b) {
  double best = 1e30;
  for (const auto& pa : rep_points(a))
    for (const auto& pb : rep_points(b))
      best = std::min(best, (pa - pb).norm());
  return best;
}

}  // namespace

MuSweep sweep_correspondence(const Game& game, const std::vector<double>& rhos,
                             double match_threshold) {
  MuSweep sweep;
  sweep.rhos = rhos;
  for (double rho : rhos) sweep.solutions.push_back(mu_equilibria_rho(game, rho));
  sweep.branch_of.resize(rhos.size());

  int next_branch = 0;
  std::vector<int> prev_branch;
  for (std::size_t t = 0; t < rhos.size(); ++t) {
    const auto& cur = sweep.solutions[t];
    std::vector<int> branch(cur.size(), -1);
    if (t == 0) {
      for (std::size_t s = 0; s < cur.size(); ++s) branch[s] = next_branch++;
    } else {
      const auto& prev = sweep.solutions[t - 1];
      // Greedy proximity matching under the threshold.
      struct Cand {
        double d;
        int p, c;
      };
      std::vector<Cand> cands;
      for (int p = 0; p < int(prev.size()); ++p)
        for (int c = 0; c < int(cur.size()); ++c) {
          const double d = solution_distance(prev[p], cur[c]);
          if (d <= match_threshold) cands.push_back({d, p, c});
        }
      std::sort(cands.begin(), cands.end(),
                [](const Cand& a, const Cand& b) { return a.d < b.d; });
      std::vector<bool> prev_used(prev.size(), false);
      for (const auto& cd : cands) {
        if (prev_used[cd.p] || branch[cd.c] != -1) continue;
        prev_used[cd.p] = true;
        branch[cd.c] = prev_branch[cd.p];
        if (prev[cd.p].segment != cur[cd.c].segment) {
          sweep.events.push_back(
              {rhos[t], cur[cd.c].segment ? "branch widens into a segment"
                                          : "branch collapses to a point"});
        }
      }
      for (int c = 0; c < int(cur.size()); ++c) {
        if (branch[c] == -1) {
          branch[c] = next_branch++;
          sweep.events.push_back({rhos[t], "branch appears"});
        }
      }
      for (int p = 0; p < int(prev.size()); ++p)
        if (!prev_used[p])
          sweep.events.push_back({rhos[t], "branch disappears"});
    }
    sweep.branch_of[t] = branch;
    prev_branch = branch;
  }
  sweep.branches = next_branch;

  // Principal branch: the solution nearest the uniform profile at the first
  // grid point.
  if (!sweep.solutions.empty() && !sweep.solutions[0].empty()) {
    std::vector<VecD> uni;
    for (int i = 0; i < game.num_players(); ++i)
      uni.push_back(uniform_point<double>(game.actions(i)));
    MuSolutionD uni_sol;
    uni_sol.profile = uni;
    int best = 0;
    double bestd = 1e30;
    for (int s = 0; s < int(sweep.solutions[0].size()); ++s) {
      const double d = solution_distance(sweep.solutions[0][s], uni_sol);
      if (d < bestd) {
        bestd = d;
        best = s;
      }
    }
    sweep.principal_branch = sweep.branch_of[0][best];
  }
  return sweep;
}

MetaInclusionReport verify_meta_inclusion(const Game& game,
                                          const std::vector<double>& rhos) {
  MetaInclusionReport rep;

  // Every swept fixed point satisfies the closure membership conditions.
  auto relaxed_member = [&](const std::vector<VecD>& prof) {
    for (int i = 0; i < game.num_players(); ++i) {
      const VecD pi = game.expected_payoffs_profile<double>(i, prof);
      for (int a = 0; a < game.actions(i); ++a)
        for (int b = a + 1; b < game.actions(i); ++b) {
          const int s = tie_sign(prof[i](a), prof[i](b));
          const int d = tie_sign(pi(a), pi(b));
          const bool pinned = prof[i](a) < kTieEps && prof[i](b) < kTieEps;
          if (s * d < 0 && !pinned) return false;
        }
    }
    return true;
  };
  for (double rho : rhos) {
    for (const auto& sol : mu_equilibria_rho(game, rho)) {
      std::vector<std::vector<VecD>> probes = {sol.profile};
      for (const auto& e : sol.endpoints) probes.push_back(e);
      for (const auto& p : probes) {
        ++rep.checked_solutions;
        if (!relaxed_member(p)) rep.mu_solutions_inside = false;
      }
    }
  }

  // Every colorable set representative is a fixed point for the weight
  // multiset given by its own mixture values.
  const MResult sets = enumerate_m_equilibria(game);
  for (const auto& eq : sets.equilibria) {
    if (!eq.colorable) continue;
    for (const auto& comp : eq.components) {
      if (comp.dim != eq.dim) continue;
      const std::vector<VecQ>& prof = comp.representative;
      ++rep.checked_representatives;
      for (int i = 0; i < 2; ++i) {
        const VecQ pi = game.expected_payoffs_profile<Rational>(i, prof);
        if (!rank_mu(pi, prof[i]).contains(prof[i]))
          rep.set_points_covered = false;
      }
    }
  }
  return rep;
}

}  // namespace meq
