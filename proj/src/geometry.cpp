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

#include "meq/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace meq::geom {

namespace {

Rational cross(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const P2& a, const P2& b, const P2& p) {
  if (cross(a, b, p) != 0) return false;
  const Rational dot =
      (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  const Rational len2 =
      (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  return dot >= 0 && dot <= len2;
}

// Remove duplicate and collinear vertices from a CCW ring.
std::vector<P2> normalize_ring(std::vector<P2> pts) {
  std::vector<P2> dedup;
  for (const auto& p : pts) {
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  if (dedup.size() < 3) return dedup;
  std::vector<P2> out;
  const int n = int(dedup.size());
  for (int i = 0; i < n; ++i) {
    const P2& prev = dedup[(i + n - 1) % n];
    const P2& cur = dedup[i];
    const P2& next = dedup[(i + 1) % n];
    if (cross(prev, cur, next) != 0) out.push_back(cur);
  }
  if (out.size() < 3) {
    // Collinear ring: keep the two extreme points.
    auto cmp = [](const P2& a, const P2& b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    };
    auto [lo, hi] = std::minmax_element(dedup.begin(), dedup.end(), cmp);
    if (*lo == *hi) return {*lo};
    return {*lo, *hi};
  }
  return out;
}

}  // namespace

VecQ lift(const P2& p, int k) {
  VecQ v(k);
  if (k == 2) {
    v << p.x, 1 - p.x;
  } else {
    v << p.x, p.y, 1 - p.x - p.y;
  }
  return v;
}

P2 drop(const VecQ& v) {
  if (v.size() == 2) return {v(0), 0};
  return {v(0), v(1)};
}

Lin functional_from_coeffs(const VecQ& coeffs) {
  if (coeffs.size() == 2)
    return {coeffs(0) - coeffs(1), Rational(0), coeffs(1)};
  return {coeffs(0) - coeffs(2), coeffs(1) - coeffs(2), coeffs(2)};
}

int Poly::dim() const {
  if (pts.empty()) return -1;
  if (pts.size() == 1) return 0;
  if (pts.size() == 2) return pts[0] == pts[1] ? 0 : 1;
  return 2;
}

Rational Poly::area() const {
  if (dim() < 2) return 0;
  Rational s = 0;
  const int n = int(pts.size());
  for (int i = 0; i < n; ++i) {
    const P2& a = pts[i];
    const P2& b = pts[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return boost::multiprecision::abs(s) / 2;
}

Rational Poly::length() const {
  if (dim() != 1) return 0;
  const Rational dx = boost::multiprecision::abs(pts[1].x - pts[0].x);
  const Rational dy = boost::multiprecision::abs(pts[1].y - pts[0].y);
  // Used for interval factors where the segment is axis-aligned (y = 0).
  return dx > dy ? dx : dy;
}

P2 Poly::representative() const {
  Rational sx = 0, sy = 0;
  for (const auto& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  const Rational n(int(pts.size()));
  return {sx / n, sy / n};
}

bool Poly::contains(const P2& p) const {
  switch (dim()) {
    case -1:
      return false;
    case 0:
      return pts[0] == p;
    case 1:
      return on_segment(pts[0], pts[1], p);
    default: {
      const int n = int(pts.size());
      for (int i = 0; i < n; ++i) {
        if (cross(pts[i], pts[(i + 1) % n], p) < 0) return false;
      }
      return true;
    }
  }
}

Poly Poly::clip(const Lin& f) const {
  if (empty()) return {};
  if (dim() == 0) return f.eval(pts[0]) >= 0 ? *this : Poly{};
  if (dim() == 1) {
    const Rational fa = f.eval(pts[0]);
    const Rational fb = f.eval(pts[1]);
    if (fa >= 0 && fb >= 0) return *this;
    if (fa <= 0 && fb <= 0) {
      if (fa == 0) return Poly{{pts[0]}};
      if (fb == 0) return Poly{{pts[1]}};
      return {};
    }
    const Rational t = fa / (fa - fb);
    const P2 mid{pts[0].x + t * (pts[1].x - pts[0].x),
                 pts[0].y + t * (pts[1].y - pts[0].y)};
    if (fa > 0) return Poly{{pts[0], mid}};
    return Poly{{mid, pts[1]}};
  }
  std::vector<P2> out;
  const int n = int(pts.size());
  for (int i = 0; i < n; ++i) {
    const P2& cur = pts[i];
    const P2& nxt = pts[(i + 1) % n];
    const Rational fc = f.eval(cur);
    const Rational fn = f.eval(nxt);
    if (fc >= 0) out.push_back(cur);
    if ((fc > 0 && fn < 0) || (fc < 0 && fn > 0)) {
      const Rational t = fc / (fc - fn);
      out.push_back(
          {cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return Poly{normalize_ring(std::move(out))};
}

Poly Poly::slice(const Lin& f) const {
  if (empty()) return {};
  std::set<std::pair<Rational, Rational>> hits;
  auto add = [&](const P2& p) { hits.insert({p.x, p.y}); };
  if (dim() == 0) {
    if (f.eval(pts[0]) == 0) add(pts[0]);
  } else {
    const int n = int(pts.size());
    const int edges = dim() == 1 ? 1 : n;
    for (int i = 0; i < edges; ++i) {
      const P2& cur = pts[i];
      const P2& nxt = pts[(i + 1) % n];
      const Rational fc = f.eval(cur);
      const Rational fn = f.eval(nxt);
      if (fc == 0) add(cur);
      if (fn == 0) add(nxt);
      if ((fc > 0 && fn < 0) || (fc < 0 && fn > 0)) {
        const Rational t = fc / (fc - fn);
        add({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
      }
    }
  }
  std::vector<P2> out;
  for (const auto& [x, y] : hits) out.push_back({x, y});
  if (out.size() > 2) {
    auto cmp = [](const P2& a, const P2& b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    };
    auto [lo, hi] = std::minmax_element(out.begin(), out.end(), cmp);
    out = {*lo, *hi};
  }
  return Poly{std::move(out)};
}

Poly simplex_poly(int k) {
  if (k == 2) return Poly{{{Rational(0), Rational(0)},
                           {Rational(1), Rational(0)}}};
  if (k == 3)
    return Poly{{{Rational(0), Rational(0)},
                 {Rational(1), Rational(0)},
                 {Rational(0), Rational(1)}}};
  throw std::invalid_argument("exact geometry supports 2 or 3 actions");
}

Rational normalized_measure(const Poly& poly, int k) {
  if (k == 2) return poly.length();
  return poly.area() * 2;  // parametrized 2-simplex has area 1/2
}

CellComplex build_cell_complex(int k, const std::vector<Lin>& lines) {
  CellComplex cx;
  cx.k = k;
  std::vector<Poly> full = {simplex_poly(k)};
  for (const auto& f : lines) {
    std::vector<Poly> next;
    for (const auto& poly : full) {
      const Poly above = poly.clip(f);
      const Poly below = poly.clip({-f.a, -f.b, -f.c});
      const int d = poly.dim();
      bool split = false;
      if (above.dim() == d && below.dim() == d) {
        next.push_back(above);
        next.push_back(below);
        split = true;
      }
      if (!split) next.push_back(poly);
    }
    full = std::move(next);
  }

  // Global vertex registry.
  std::map<std::pair<Rational, Rational>, int> vid;
  std::vector<P2> verts;
  auto reg = [&](const P2& p) {
    auto [it, fresh] = vid.try_emplace({p.x, p.y}, int(verts.size()));
    if (fresh) verts.push_back(p);
    return it->second;
  };
  for (const auto& poly : full)
    for (const auto& p : poly.pts) reg(p);

  cx.cells = full;

  if (k == 3) {
    // 1-cells: boundary edges of the 2-cells, refined at every global vertex
    // so that shared boundaries deduplicate exactly.
    std::set<std::pair<int, int>> seen;
    for (const auto& poly : full) {
      const int n = int(poly.pts.size());
      for (int i = 0; i < n; ++i) {
        const P2& a = poly.pts[i];
        const P2& b = poly.pts[(i + 1) % n];
        std::vector<std::pair<Rational, int>> line_pts;
        for (int v = 0; v < int(verts.size()); ++v) {
          if (!on_segment(a, b, verts[v])) continue;
          const Rational t = (verts[v].x - a.x) * (b.x - a.x) +
                             (verts[v].y - a.y) * (b.y - a.y);
          line_pts.push_back({t, v});
        }
        std::sort(line_pts.begin(), line_pts.end());
        for (std::size_t s = 0; s + 1 < line_pts.size(); ++s) {
          int u = line_pts[s].second, w = line_pts[s + 1].second;
          if (u > w) std::swap(u, w);
          if (seen.insert({u, w}).second)
            cx.cells.push_back(Poly{{verts[u], verts[w]}});
        }
      }
    }
  }
  for (const auto& v : verts) cx.cells.push_back(Poly{{v}});

  // Closure adjacency through shared global vertices.
  std::vector<std::vector<int>> cell_verts(cx.cells.size());
  for (std::size_t c = 0; c < cx.cells.size(); ++c)
    for (int v = 0; v < int(verts.size()); ++v)
      if (cx.cells[c].contains(verts[v])) cell_verts[c].push_back(v);
  cx.adjacency.resize(cx.cells.size());
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cx.cells.size(); ++j) {
      bool share = false;
      for (int v : cell_verts[i]) {
        if (std::binary_search(cell_verts[j].begin(), cell_verts[j].end(), v)) {
          share = true;
          break;
        }
      }
      if (share) {
        cx.adjacency[i].push_back(int(j));
        cx.adjacency[j].push_back(int(i));
      }
    }
  }
  return cx;
}

}  // namespace meq::geom
