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

#include "meq/lp.hpp"
#include "meq/types.hpp"

namespace meq {

enum class HullKind { kPoint, kSegment, kFace, kHull };

// A correspondence value: the convex hull of a finite vertex list. Vertices
// only, no face descriptions; membership is tested by linear feasibility.
template <typename S>
struct Hull {
  std::vector<Vec<S>> vertices;

  HullKind kind() const {
    switch (vertices.size()) {
      case 1:
        return HullKind::kPoint;
      case 2:
        return HullKind::kSegment;
      case 3:
        return HullKind::kFace;
      default:
        return HullKind::kHull;
    }
  }

  bool contains(const Vec<S>& p, double eps = kTieEps) const {
    MatQ V(vertices[0].size(), vertices.size());
    VecQ q(p.size());
    if constexpr (std::is_same_v<S, Rational>) {
      for (std::size_t j = 0; j < vertices.size(); ++j) V.col(j) = vertices[j];
      q = p;
      return in_hull(V, q);
    } else {
      // Float mode: snap coordinates to nearby small rationals is overkill;
      // test membership with a tolerance by shrinking toward the centroid.
      Vec<S> c = Vec<S>::Zero(p.size());
      for (const auto& v : vertices) c += v;
      c /= S(vertices.size());
      // p is inside iff p is within eps of the hull; approximate via exact
      // test on a rationalized copy after rounding to 12 digits.
      auto rat = [](double x) {
        const long long den = 1000000000000LL;
        return Rational(BigInt(llround(x * double(den))), BigInt(den));
      };
      for (std::size_t j = 0; j < vertices.size(); ++j)
        for (int i = 0; i < p.size(); ++i) V(i, j) = rat(vertices[j](i));
      Vec<S> moved = p + (c - p) * S(eps);
      for (int i = 0; i < p.size(); ++i) q(i) = rat(moved(i));
      return in_hull(V, q);
    }
  }
};

// BR(pi): hull of unit vectors achieving the maximum payoff (Eq. of the
// best-response correspondence; ties collapse under the tie rule).
template <typename S>
Hull<S> best_response(const Vec<S>& payoffs, double eps = kTieEps) {
  const int k = int(payoffs.size());
  const std::vector<int> level = order_levels(payoffs, eps);
  const int top = *std::max_element(level.begin(), level.end());
  Hull<S> h;
  for (int i = 0; i < k; ++i)
    if (level[i] == top) h.vertices.push_back(unit_vector<S>(k, i));
  return h;
}

// rank^mu(pi): hull of permutations of mu consistent with the payoff order.
// The sorted values of mu are assigned to actions from worst payoff to best;
// tied payoffs admit every assignment of the corresponding mu block.
template <typename S>
Hull<S> rank_mu(const Vec<S>& payoffs, const Vec<S>& mu, double eps = kTieEps) {
  const int k = int(payoffs.size());
  std::vector<S> sorted_mu(mu.data(), mu.data() + k);
  std::sort(sorted_mu.begin(), sorted_mu.end());
  Hull<S> h;
  for (const auto& perm : compatible_orderings(payoffs, eps)) {
    // perm[t] = action holding the t-th smallest payoff; it receives the
    // t-th smallest mu weight.
    Vec<S> v(k);
    for (int t = 0; t < k; ++t) v(perm[t]) = sorted_mu[t];
    bool dup = false;
    for (const auto& w : h.vertices) dup = dup || w == v;
    if (!dup) h.vertices.push_back(v);
  }
  return h;
}

template <typename S>
Hull<S> rank(const Vec<S>& payoffs, double eps = kTieEps) {
  return rank_mu(payoffs, rank_basis<S>(int(payoffs.size())), eps);
}

// The ordering(s) of a simplex point's coordinates, worst-to-best; several
// at ties. Used to read a profile's color.
template <typename S>
std::vector<std::vector<int>> rank_assignment_of(const Vec<S>& point,
                                                 double eps = kTieEps) {
  return compatible_orderings(point, eps);
}

inline std::string ordering_to_string(const std::vector<int>& perm) {
  std::string s;
  for (std::size_t t = 0; t < perm.size(); ++t) {
    if (t) s += " < ";
    s += std::to_string(perm[t]);
  }
  return s;
}

}  // namespace meq
