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

#include "meq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace meq {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

IngestResult ingest_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("empty observation file");
  const std::vector<std::string> header = split_csv(trim(line));
  int col_subject = -1, col_round = -1, col_role = -1, col_game = -1,
      col_choice = -1;
  std::vector<int> col_belief;
  for (int c = 0; c < int(header.size()); ++c) {
    const std::string h = trim(header[c]);
    if (h == "subject") col_subject = c;
    else if (h == "round") col_round = c;
    else if (h == "role") col_role = c;
    else if (h == "game") col_game = c;
    else if (h == "choice") col_choice = c;
    else if (h.rfind("belief", 0) == 0) col_belief.push_back(c);
  }
  if (col_subject < 0 || col_round < 0 || col_role < 0 || col_game < 0 ||
      col_choice < 0 || col_belief.empty())
    throw ValidationError(
        "missing required columns: need subject, round, role, game, choice "
        "and belief components");

  IngestResult res;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const std::vector<std::string> cells = split_csv(trimmed);
    auto fail = [&](const std::string& msg) {
      res.errors.push_back({lineno, msg});
    };
    if (int(cells.size()) <= col_choice) {
      fail("too few columns");
      continue;
    }
    Observation o;
    o.subject = trim(cells[col_subject]);
    o.game_id = trim(cells[col_game]);
    const std::string role = trim(cells[col_role]);
    if (role == "row") o.role = 0;
    else if (role == "column" || role == "col") o.role = 1;
    else {
      fail("unknown role '" + role + "'");
      continue;
    }
    try {
      o.round = std::stoi(trim(cells[col_round]));
      o.choice = std::stoi(trim(cells[col_choice]));
    } catch (const std::exception&) {
      fail("round and choice must be integers");
      continue;
    }
    if (o.choice < 0) {
      fail("choice index must be non-negative");
      continue;
    }
    std::vector<double> belief;
    bool bad = false;
    for (int c : col_belief) {
      if (c >= int(cells.size())) break;
      const std::string cell = trim(cells[c]);
      if (cell.empty()) continue;
      try {
        belief.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail("belief component '" + cell + "' is not a number");
        bad = true;
        break;
      }
    }
    if (bad) continue;
    if (belief.size() < 2) {
      fail("at least two belief components required");
      continue;
    }
    double total = 0;
    for (double b : belief) {
      if (b < -1e-9 || b > 1 + 1e-3) bad = true;
      total += b;
    }
    if (bad || std::abs(total - 1.0) > 1e-3) {
      fail("belief is off the probability simplex beyond tolerance");
      continue;
    }
    o.belief = Eigen::Map<VecD>(belief.data(), belief.size());
    res.observations.push_back(std::move(o));
  }
  return res;
}

IngestResult ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open observation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_text(buf.str());
}

namespace {

double sq_dist(const VecD& a, const VecD& b) { return (a - b).squaredNorm(); }

struct LloydResult {
  std::vector<VecD> centroids;
  std::vector<int> assignment;
  double error = 0;
};

LloydResult lloyd(const std::vector<VecD>& points, int k,
                  std::mt19937_64& rng) {
  const int n = int(points.size());
  // Initial centroids: k distinct points drawn without replacement.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<VecD> centroids;
  for (int idx : order) {
    bool dup = false;
    for (const auto& c : centroids) dup = dup || sq_dist(c, points[idx]) == 0;
    if (!dup) centroids.push_back(points[idx]);
    if (int(centroids.size()) == k) break;
  }

  std::vector<int> assignment(n, -1);
  double prev_error = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 1000; ++iter) {
    // Assignment step.
    double error = 0;
    bool changed = false;
    for (int p = 0; p < n; ++p) {
      int best = 0;
      double bestd = sq_dist(points[p], centroids[0]);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(points[p], centroids[c]);
        if (d < bestd) {
          bestd = d;
          best = c;
        }
      }
      changed = changed || assignment[p] != best;
      assignment[p] = best;
      error += bestd;
    }
    if (error > prev_error + 1e-9)
      throw std::logic_error("k-means error increased across an iteration");
    prev_error = error;
    if (!changed && iter > 0) break;

    // Update step; an empty cluster is re-seeded at the farthest point.
    std::vector<VecD> sums(k, VecD::Zero(points[0].size()));
    std::vector<int> counts(k, 0);
    for (int p = 0; p < n; ++p) {
      sums[assignment[p]] += points[p];
      ++counts[assignment[p]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids[c] = sums[c] / double(counts[c]);
      } else {
        int far_p = 0;
        double far_d = -1;
        for (int p = 0; p < n; ++p) {
          const double d = sq_dist(points[p], centroids[assignment[p]]);
          if (d > far_d) {
            far_d = d;
            far_p = p;
          }
        }
        centroids[c] = points[far_p];
      }
    }
  }
  LloydResult out;
  out.centroids = std::move(centroids);
  out.assignment = std::move(assignment);
  out.error = prev_error;
  return out;
}

}  // namespace

Clustering kmeans(const std::vector<VecD>& points, int k, int restarts,
                  std::uint64_t seed) {
  if (points.empty()) throw ValidationError("k-means requires points");
  if (k < 1) throw ValidationError("k must be positive");
  std::vector<VecD> distinct;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : distinct) dup = dup || sq_dist(p, q) == 0;
    if (!dup) distinct.push_back(p);
  }
  if (k > int(distinct.size()))
    throw ValidationError("k exceeds the number of distinct points");

  Clustering best;
  best.total_error = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (std::uint64_t(r) + 1));
    const LloydResult run = lloyd(points, k, rng);
    if (run.error < best.total_error) {
      best.k = k;
      best.centroids = run.centroids;
      best.assignment = run.assignment;
      best.total_error = run.error;
    }
  }
  best.restarts = restarts;
  return best;
}

ElbowResult elbow(const std::vector<VecD>& points, int k_lo, int k_hi,
                  int restarts, std::uint64_t seed) {
  if (k_lo < 1 || k_hi < k_lo) throw ValidationError("bad k range");
  ElbowResult res;
  for (int k = k_lo; k <= k_hi; ++k) {
    res.ks.push_back(k);
    res.errors.push_back(kmeans(points, k, restarts, seed).total_error);
  }
  // Suggested k: the largest discrete curvature. Error curves of separated
  // equal clusters fall off like a power of k, whose raw second difference
  // always peaks at the smallest k; the log-scale second difference peaks
  // where the curve actually bends.
  res.suggested_k = res.ks.front();
  double best_curv = -std::numeric_limits<double>::infinity();
  auto log_err = [&](std::size_t t) {
    return std::log(std::max(res.errors[t], 1e-300));
  };
  for (std::size_t t = 1; t + 1 < res.ks.size(); ++t) {
    const double curv = log_err(t - 1) - 2 * log_err(t) + log_err(t + 1);
    if (curv > best_curv) {
      best_curv = curv;
      res.suggested_k = res.ks[t];
    }
  }
  return res;
}

namespace {

struct PP {
  double x = 0, y = 0;
};

PP drop_d(const VecD& v) {
  PP p;
  p.x = v(0);
  if (v.size() >= 3) p.y = v(1);
  return p;
}

double seg_dist(const PP& p, const PP& a, const PP& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double wx = p.x - a.x, wy = p.y - a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = p.x - (a.x + t * vx), dy = p.y - (a.y + t * vy);
  return std::sqrt(dx * dx + dy * dy);
}

double poly_dist(const PP& p, const geom::Poly& poly) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  std::vector<PP> v;
  for (const auto& q : poly.pts)
    v.push_back({to_double(q.x), to_double(q.y)});
  if (v.size() == 1) {
    const double dx = p.x - v[0].x, dy = p.y - v[0].y;
    return std::sqrt(dx * dx + dy * dy);
  }
  // Inside test for a CCW polygon; degenerate shapes fall through to edges.
  if (v.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const PP& a = v[i];
      const PP& b = v[(i + 1) % v.size()];
      const double cross =
          (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (cross < -1e-12) inside = false;
    }
    if (inside) return 0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    best = std::min(best, seg_dist(p, v[i], v[(i + 1) % v.size()]));
  return best;
}

// Distance from a simplex point to one equilibrium's choice region at the
// given factor; 0 means closure membership.
double choice_factor_dist(const MEquilibrium& eq, int factor, const PP& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& comp : eq.components)
    for (const auto& cell : comp.cells)
      best = std::min(best, poly_dist(p, cell.factors[factor]));
  return best;
}

}  // namespace

SetClassification classify_into_sets(const Game&,
                                     const std::vector<Observation>& obs,
                                     const MResult& msets) {
  SetClassification out;
  const int nsets = int(msets.equilibria.size());
  out.choice_fraction.assign(nsets + 1, 0.0);
  out.belief_fraction.assign(nsets + 1, 0.0);
  for (const auto& o : obs) {
    const int factor = msets.factors == 1 ? 0 : o.role;
    if (factor >= msets.factors)
      throw ValidationError("observation role outside the set factors");
    const int k = msets.factor_actions[factor];
    if (o.choice >= k)
      throw ValidationError("choice index outside the game's actions");

    // Pure choice as a simplex vertex in the player's own factor.
    VecD vert = VecD::Zero(k);
    vert(o.choice) = 1.0;
    const PP cp = drop_d(vert);
    int cbest = -1;
    double cdist = std::numeric_limits<double>::infinity();
    for (int e = 0; e < nsets; ++e) {
      const double d = choice_factor_dist(msets.equilibria[e], factor, cp);
      if (d <= 1e-9 && cbest == -1) cbest = e;
      cdist = std::min(cdist, d);
    }
    out.choice_set.push_back(cbest);
    out.choice_distance.push_back(cbest >= 0 ? 0.0 : cdist);
    out.choice_fraction[cbest >= 0 ? cbest : nsets] += 1;

    // Stated belief against the exact belief polytopes.
    const VecD nb = o.normalized_belief();
    const PP bp = drop_d(nb);
    int bbest = -1;
    double bdist = std::numeric_limits<double>::infinity();
    for (int e = 0; e < nsets; ++e) {
      const auto& bf = msets.equilibria[e].belief_factors;
      if (int(bf.size()) <= factor) continue;
      const double d = poly_dist(bp, bf[factor]);
      if (d <= 1e-9 && bbest == -1) bbest = e;
      bdist = std::min(bdist, d);
    }
    out.belief_set.push_back(bbest);
    out.belief_distance.push_back(bbest >= 0 ? 0.0 : bdist);
    out.belief_fraction[bbest >= 0 ? bbest : nsets] += 1;
  }
  if (!obs.empty()) {
    for (auto& f : out.choice_fraction) f /= double(obs.size());
    for (auto& f : out.belief_fraction) f /= double(obs.size());
  }
  return out;
}

BestResponseTable best_response_rate(const Game& game,
                                     const std::vector<Observation>& obs) {
  if (game.num_players() != 2)
    throw CapabilityError("best-response tables require 2 players");
  BestResponseTable table;
  long row_best = 0, col_best = 0;
  for (const auto& o : obs) {
    if (o.role != 0 && o.role != 1)
      throw ValidationError("role must be row or column");
    const int opp = 1 - o.role;
    if (o.choice >= game.actions(o.role))
      throw ValidationError("choice index outside the game's actions");
    if (int(o.belief.size()) != game.actions(opp))
      throw ValidationError("belief length must match the opponent's actions");
    std::vector<VecD> prof(2);
    prof[opp] = o.normalized_belief();
    const VecD pi = game.expected_payoffs_profile<double>(o.role, prof);
    const double top = pi.maxCoeff();
    const bool best = ties(pi(o.choice), top);
    if (o.role == 0) {
      ++table.row_count;
      row_best += best;
    } else {
      ++table.column_count;
      col_best += best;
    }
  }
  if (table.row_count) table.row_rate = double(row_best) / table.row_count;
  if (table.column_count)
    table.column_rate = double(col_best) / table.column_count;
  const long total = table.row_count + table.column_count;
  if (total) table.overall = double(row_best + col_best) / total;
  return table;
}

}  // namespace meq
