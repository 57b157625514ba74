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

#include <optional>

#include "meq/types.hpp"

namespace meq {

// Phase-1 simplex over exact rationals: decides whether {x >= 0 : A x = b}
// is non-empty and returns a feasible point if so. Bland's rule, so it
// terminates on degenerate systems. Sizes here are tiny (tens of columns).
inline std::optional<VecQ> feasible_point(MatQ A, VecQ b) {
  const int m = int(A.rows());
  const int n = int(A.cols());
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0) {
      b(i) = -b(i);
      A.row(i) = -A.row(i);
    }
  }
  // Tableau with n structural plus m artificial columns.
  MatQ T(m + 1, n + m + 1);
  T.setZero();
  T.block(0, 0, m, n) = A;
  for (int i = 0; i < m; ++i) {
    T(i, n + i) = 1;
    T(i, n + m) = b(i);
  }
  // Objective row: minimize the sum of artificials, in reduced form w.r.t.
  // the initial artificial basis, so basic artificial columns carry reduced
  // cost 0 and only structural columns (and the rhs) are accumulated.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) T(m, j) -= T(i, j);
  for (int i = 0; i < m; ++i) T(m, n + m) -= T(i, n + m);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  auto pivot = [&](int pr, int pc) {
    T.row(pr) /= T(pr, pc);
    for (int i = 0; i <= m; ++i) {
      if (i == pr || T(i, pc) == 0) continue;
      T.row(i) -= T(i, pc) * T.row(pr);
    }
    basis[pr] = pc;
  };

  while (true) {
    int pc = -1;
    for (int j = 0; j < n + m; ++j) {
      if (T(m, j) < 0) {
        pc = j;
        break;
      }
    }
    if (pc < 0) break;
    int pr = -1;
    for (int i = 0; i < m; ++i) {
      if (T(i, pc) <= 0) continue;
      if (pr < 0) {
        pr = i;
        continue;
      }
      const Rational cur = T(i, n + m) / T(i, pc);
      const Rational best = T(pr, n + m) / T(pr, pc);
      if (cur < best || (cur == best && basis[i] < basis[pr])) pr = i;
    }
    if (pr < 0) break;  // unbounded in phase 1 cannot happen; be safe
    pivot(pr, pc);
  }
  if (T(m, n + m) != 0) return std::nullopt;
  // Drive any artificial still in the basis out (or its row is all-zero).
  VecQ x = VecQ::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) x(basis[i]) = T(i, n + m);
  }
  return x;
}

// Membership of p in the convex hull of the columns of V, exactly.
inline bool in_hull(const MatQ& V, const VecQ& p) {
  const int d = int(V.rows());
  const int n = int(V.cols());
  MatQ A(d + 1, n);
  A.block(0, 0, d, n) = V;
  for (int j = 0; j < n; ++j) A(d, j) = 1;
  VecQ b(d + 1);
  b.head(d) = p;
  b(d) = 1;
  return feasible_point(A, b).has_value();
}

}  // namespace meq
