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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "meq/rational.hpp"

namespace meq {

template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VecD = Vec<double>;
using MatD = Mat<double>;
using VecQ = Vec<Rational>;
using MatQ = Mat<Rational>;

inline constexpr double kTieEps = 1e-9;

// Scale-aware tie test: a and b tie iff |a-b| <= eps * max(1, |a|, |b|).
inline bool ties(double a, double b, double eps = kTieEps) {
  return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}
inline bool ties(const Rational& a, const Rational& b, double = 0) {
  return a == b;
}

// Sign of a-b under the tie rule: -1, 0 (tie), or +1.
inline int tie_sign(double a, double b, double eps = kTieEps) {
  if (ties(a, b, eps)) return 0;
  return a < b ? -1 : 1;
}
inline int tie_sign(const Rational& a, const Rational& b, double = 0) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

template <typename S>
Vec<S> uniform_point(int k) {
  Vec<S> v(k);
  for (int i = 0; i < k; ++i) v(i) = S(1) / S(k);
  return v;
}

template <typename S>
Vec<S> unit_vector(int k, int idx) {
  Vec<S> v = Vec<S>::Zero(k);
  v(idx) = S(1);
  return v;
}

// Canonical rank basis (1,2,...,K) / (K(K+1)/2).
template <typename S>
Vec<S> rank_basis(int k) {
  Vec<S> v(k);
  const S denom = S(k) * S(k + 1) / S(2);
  for (int i = 0; i < k; ++i) v(i) = S(i + 1) / denom;
  return v;
}

// Parametric generator mu(rho) = (1^rho, ..., K^rho) / sum_k k^rho.
inline VecD mu_generator(int k, double rho) {
  VecD v(k);
  for (int i = 0; i < k; ++i) v(i) = std::pow(double(i + 1), rho);
  return v / v.sum();
}

// Exact variant for non-negative integer rho.
inline VecQ mu_generator_exact(int k, long rho) {
  VecQ v(k);
  Rational total = 0;
  for (int i = 0; i < k; ++i) {
    v(i) = boost::multiprecision::pow(BigInt(i + 1), unsigned(rho));
    total += v(i);
  }
  for (int i = 0; i < k; ++i) v(i) /= total;
  return v;
}

// Weak ordering of a vector's coordinates as "levels": level(i) = number of
// distinct strictly-smaller values under the tie rule. Equal levels = tied.
template <typename S>
std::vector<int> order_levels(const Vec<S>& v, double eps = kTieEps) {
  const int k = int(v.size());
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return v(a) < v(b); });
  std::vector<int> level(k, 0);
  int cur = 0;
  for (int t = 1; t < k; ++t) {
    if (tie_sign(v(idx[t - 1]), v(idx[t]), eps) != 0) ++cur;
    level[idx[t]] = cur;
  }
  return level;
}

// Pairwise sign matrix entry for (k,l), k<l: sign of v_k - v_l. The full
// tuple identifies a weak ordering pattern exactly.
template <typename S>
std::vector<int> pairwise_signs(const Vec<S>& v, double eps = kTieEps) {
  const int k = int(v.size());
  std::vector<int> out;
  out.reserve(k * (k - 1) / 2);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) out.push_back(tie_sign(v(a), v(b), eps));
  return out;
}

inline bool is_strict_pattern(const std::vector<int>& signs) {
  return std::none_of(signs.begin(), signs.end(),
                      [](int s) { return s == 0; });
}

// All strict orderings (permutations) compatible with a weak-order pattern:
// returns permutations p such that p[0] is the index of the smallest
// coordinate, ..., p[K-1] the largest, breaking ties every way.
template <typename S>
std::vector<std::vector<int>> compatible_orderings(const Vec<S>& v,
                                                   double eps = kTieEps) {
  const int k = int(v.size());
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return v(a) < v(b); });
  const std::vector<int> level = order_levels(v, eps);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return level[a] < level[b]; });
  std::vector<std::vector<int>> out;
  std::vector<int> perm = idx;
  // Permute within each tied block.
  std::vector<std::pair<int, int>> blocks;  // [begin, end) into idx
  int b = 0;
  while (b < k) {
    int e = b + 1;
    while (e < k && level[idx[e]] == level[idx[b]]) ++e;
    blocks.emplace_back(b, e);
    b = e;
  }
  for (auto& [lo, hi] : blocks) std::sort(perm.begin() + lo, perm.begin() + hi);
  // Odometer over per-block permutations.
  while (true) {
    out.push_back(perm);
    int bi = int(blocks.size()) - 1;
    for (; bi >= 0; --bi) {
      auto [lo, hi] = blocks[bi];
      if (std::next_permutation(perm.begin() + lo, perm.begin() + hi)) break;
    }
    if (bi < 0) break;
  }
  return out;
}

template <typename S>
bool on_simplex(const Vec<S>& v, double tol = 1e-12) {
  S total = 0;
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) < S(0)) return false;
    total += v(i);
  }
  if constexpr (std::is_same_v<S, Rational>) {
    return total == S(1);
  } else {
    return std::abs(to_double(total) - 1.0) <= tol;
  }
}

template <typename S, typename T>
Vec<T> cast_vec(const Vec<S>& v) {
  Vec<T> out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<T, double>) {
      out(i) = to_double(v(i));
    } else {
      out(i) = T(v(i));
    }
  }
  return out;
}

inline VecD to_double_vec(const VecQ& v) { return cast_vec<Rational, double>(v); }

}  // namespace meq
