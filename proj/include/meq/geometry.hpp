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
#include <vector>

#include "meq/types.hpp"

// Exact planar geometry over rationals for simplex factors of dimension one
// or two. A K-action simplex is parametrized by dropping the last coordinate:
// K=2 gives x in [0,1] (y pinned to 0 here), K=3 gives the triangle
// {x,y >= 0, x+y <= 1}.
namespace meq::geom {

struct P2 {
  Rational x, y;
  bool operator==(const P2&) const = default;
};

// Affine functional a*x + b*y + c.
struct Lin {
  Rational a, b, c;
  Rational eval(const P2& p) const { return a * p.x + b * p.y + c; }
};

// Full K-vector on the simplex from the parametrized point.
VecQ lift(const P2& p, int k);
P2 drop(const VecQ& v);

// Affine functional on the parametrized simplex equal to coeffs . sigma,
// where sigma is the lifted K-vector.
Lin functional_from_coeffs(const VecQ& coeffs);

// Convex polygon (CCW vertex list), possibly degenerate: 2 vertices for a
// segment, 1 for a point, empty when void.
struct Poly {
  std::vector<P2> pts;

  bool empty() const { return pts.empty(); }
  int dim() const;
  Rational area() const;     // 0 for dim < 2
  Rational length() const;   // segment length along x for dim 1 (used for
                             // interval factors where y = 0)
  P2 representative() const;  // interior point for dim 2, midpoint for dim 1
  bool contains(const P2& p) const;  // closed-set membership, exact

  // Clip by the closed halfplane f >= 0 (Sutherland-Hodgman, exact).
  Poly clip(const Lin& f) const;
  // Intersection with the line f = 0.
  Poly slice(const Lin& f) const;
};

Poly simplex_poly(int k);  // the full parametrized simplex (k = 2 or 3)

// Normalized measure of a polygon as a fraction of the k-simplex.
Rational normalized_measure(const Poly& poly, int k);

// Cells of the arrangement induced on the k-simplex by a set of lines:
// open 2-cells (dim 2), open 1-cells (dim 1), and 0-cells, each stored by
// its closure. Representatives lie in the relative interior.
struct CellComplex {
  int k = 0;
  std::vector<Poly> cells;  // all dims mixed; use cells[i].dim()

  // Indices of cells adjacent to cell i (closures share a point).
  std::vector<std::vector<int>> adjacency;
};

CellComplex build_cell_complex(int k, const std::vector<Lin>& lines);

}  // namespace meq::geom
