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

#include "meq/io.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace meq::io {

namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json j_rat(const Rational& q) { return rational_to_string(q); }

ordered_json j_vecq(const VecQ& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(j_rat(v(i)));
  return arr;
}

ordered_json j_vecd(const VecD& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ordered_json j_profile_q(const std::vector<VecQ>& profile) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : profile) arr.push_back(j_vecq(v));
  return arr;
}

ordered_json j_profile_d(const std::vector<VecD>& profile) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : profile) arr.push_back(j_vecd(v));
  return arr;
}

// Ternary plot coordinates of a 3-simplex point (equilateral triangle with
// unit side): x = s1 + s2/2, y = sqrt(3)/2 * s2.
ordered_json ternary_xy(const VecQ& s) {
  ordered_json pt = ordered_json::array();
  pt.push_back(to_double(s(1)) + 0.5 * to_double(s(2)));
  pt.push_back(0.5 * std::sqrt(3.0) * to_double(s(2)));
  return pt;
}

// V representation always; H representation (inward edge halfplanes over the
// parametrized plane, a*x + b*y + c >= 0) only for 2-dimensional factors.
ordered_json poly_json(const geom::Poly& poly, int k) {
  ordered_json doc;
  doc["dimension"] = poly.dim();
  ordered_json verts = ordered_json::array();
  for (const auto& p : poly.pts) verts.push_back(j_vecq(geom::lift(p, k)));
  doc["vertices"] = verts;
  if (poly.dim() == 2) {
    ordered_json hs = ordered_json::array();
    const auto& pts = poly.pts;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const geom::P2& p = pts[i];
      const geom::P2& q = pts[(i + 1) % pts.size()];
      const Rational dx = q.x - p.x, dy = q.y - p.y;
      ordered_json h;
      h["a"] = j_rat(-dy);
      h["b"] = j_rat(dx);
      h["c"] = j_rat(dy * p.x - dx * p.y);
      hs.push_back(h);
    }
    doc["halfplanes"] = hs;
  }
  if (k == 3) {
    ordered_json tri = ordered_json::array();
    for (const auto& p : poly.pts) tri.push_back(ternary_xy(geom::lift(p, 3)));
    doc["plot_ternary"] = tri;
  } else if (k == 2 && !poly.empty()) {
    Rational lo = poly.pts.front().x, hi = lo;
    for (const auto& p : poly.pts) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
    doc["plot_interval"] = {to_double(lo), to_double(hi)};
  }
  return doc;
}

// Unit-square rectangle for a product of two interval factors, in the
// (p, q) convention: p is the column player's first-action probability
// (factor 1), q the row player's (factor 0).
ordered_json rect_json(const MCell& cell) {
  auto range = [](const geom::Poly& poly) {
    Rational lo = poly.pts.front().x, hi = lo;
    for (const auto& p : poly.pts) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
    return std::pair<double, double>(to_double(lo), to_double(hi));
  };
  const auto [plo, phi] = range(cell.factors[1]);
  const auto [qlo, qhi] = range(cell.factors[0]);
  ordered_json r;
  r["p"] = {plo, phi};
  r["q"] = {qlo, qhi};
  return r;
}

ordered_json pattern_json(const std::vector<std::vector<int>>& pattern) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : pattern) arr.push_back(row);
  return arr;
}

ordered_json game_header(const std::string& name, const Game& game) {
  ordered_json doc;
  doc["game"] = name;
  doc["players"] = game.num_players();
  doc["actions"] = game.action_counts();
  doc["symmetric"] = game.symmetric();
  return doc;
}

}  // namespace

std::string msets_document(const std::string& game_name, const Game& game,
                           const MResult& result,
                           const std::vector<NashPoint>& markers) {
  ordered_json doc;
  doc["command"] = "msets";
  doc.update(game_header(game_name, game));
  doc["mode"] = result.options.sampled ? "sampled" : "exact";
  doc["definition"] = result.options.definition;
  doc["diagonal"] = result.options.symmetric;
  doc["factors"] = result.factors;
  doc["factor_actions"] = result.factor_actions;
  if (result.options.sampled) {
    doc["samples"] = result.options.samples;
    if (result.options.seed) doc["seed"] = *result.options.seed;
  }

  ordered_json sets = ordered_json::array();
  for (const auto& eq : result.equilibria) {
    ordered_json e;
    e["pattern"] = pattern_json(eq.pattern);
    e["colorable"] = eq.colorable;
    if (eq.colorable) e["color"] = pattern_json(eq.color);
    e["dimension"] = eq.dim;
    e["disconnected"] = eq.disconnected || eq.disconnected_hint;
    if (result.options.sampled) {
      e["measure_estimate"] = eq.measure_est;
      e["measure_std_error"] = eq.measure_se;
      e["belief_measure_estimate"] = eq.belief_measure_est;
    } else {
      e["measure"] = j_rat(eq.measure);
      ordered_json comps = ordered_json::array();
      for (const auto& comp : eq.components) {
        ordered_json c;
        c["dimension"] = comp.dim;
        c["measure"] = j_rat(comp.measure);
        c["representative"] = j_profile_q(comp.representative);
        ordered_json cells = ordered_json::array();
        for (const auto& cell : comp.cells) {
          ordered_json cj;
          cj["dimension"] = cell.dim;
          cj["measure"] = j_rat(cell.measure);
          ordered_json fs = ordered_json::array();
          for (std::size_t f = 0; f < cell.factors.size(); ++f) {
            fs.push_back(
                poly_json(cell.factors[f], result.factor_actions[f]));
          }
          cj["factors"] = fs;
          if (cell.factors.size() == 2 && result.factor_actions[0] == 2 &&
              result.factor_actions[1] == 2 && cell.dim == 2) {
            cj["plot_rect"] = rect_json(cell);
          }
          cells.push_back(cj);
        }
        c["cells"] = cells;
        comps.push_back(c);
      }
      e["components"] = comps;
      ordered_json beliefs;
      beliefs["measure"] = j_rat(eq.belief_measure);
      ordered_json bfs = ordered_json::array();
      for (std::size_t f = 0; f < eq.belief_factors.size(); ++f) {
        // Belief factors live on the opponent's simplex; with two factors
        // that is the other factor's action count.
        const int other = result.factors == 2 ? 1 - int(f) : int(f);
        bfs.push_back(
            poly_json(eq.belief_factors[f], result.factor_actions[other]));
      }
      beliefs["factors"] = bfs;
      e["beliefs"] = beliefs;
    }
    sets.push_back(e);
  }
  doc["sets"] = sets;

  if (!markers.empty() && !result.options.sampled) {
    std::vector<std::vector<VecQ>> points;
    for (const auto& nash : markers) {
      if (result.factors == 1) {
        points.push_back({nash.profile[0]});
      } else {
        points.push_back(nash.profile);
      }
    }
    const auto hits = boundary_markers(result, points);
    ordered_json ms = ordered_json::array();
    for (std::size_t i = 0; i < markers.size(); ++i) {
      ordered_json m;
      m["profile"] = j_profile_q(markers[i].profile);
      m["kind"] = markers[i].kind == NashKind::kPure
                      ? "pure"
                      : (markers[i].kind == NashKind::kMixed
                             ? "mixed"
                             : "degenerate");
      m["sets"] = hits[i];
      if (result.factor_actions[0] == 3 && result.factors == 1) {
        m["plot_ternary"] = ternary_xy(markers[i].profile[0]);
      }
      ms.push_back(m);
    }
    doc["nash_markers"] = ms;
  }
  return dump(doc);
}

std::string nash_document(const std::string& game_name, const Game& game,
                          const std::vector<NashPoint>& solution) {
  ordered_json doc;
  doc["command"] = "nash";
  doc.update(game_header(game_name, game));
  ordered_json eqs = ordered_json::array();
  for (const auto& nash : solution) {
    ordered_json e;
    e["kind"] = nash.kind == NashKind::kPure
                    ? "pure"
                    : (nash.kind == NashKind::kMixed ? "mixed" : "degenerate");
    e["profile"] = j_profile_q(nash.profile);
    e["support"] = pattern_json(nash.support);
    e["continuum"] = nash.continuum;
    if (nash.continuum) {
      ordered_json ends = ordered_json::array();
      for (const auto& end : nash.endpoints) ends.push_back(j_profile_q(end));
      e["endpoints"] = ends;
    }
    // (p, q) plot convention for 2x2 games: p is the column player's
    // first-action probability, q the row player's.
    if (game.num_players() == 2 && game.actions(0) == 2 &&
        game.actions(1) == 2) {
      e["pq"] = {to_double(nash.profile[1](0)), to_double(nash.profile[0](0))};
    }
    eqs.push_back(e);
  }
  doc["equilibria"] = eqs;
  return dump(doc);
}

std::string mu_sweep_document(const std::string& game_name, const Game& game,
                              const MuSweep& sweep) {
  ordered_json doc;
  doc["command"] = "mu-sweep";
  doc.update(game_header(game_name, game));
  doc["rhos"] = sweep.rhos;
  doc["branches"] = sweep.branches;
  doc["principal_branch"] = sweep.principal_branch;

  ordered_json records = ordered_json::array();
  for (std::size_t r = 0; r < sweep.rhos.size(); ++r) {
    ordered_json rec;
    rec["rho"] = sweep.rhos[r];
    ordered_json sols = ordered_json::array();
    for (std::size_t s = 0; s < sweep.solutions[r].size(); ++s) {
      const auto& sol = sweep.solutions[r][s];
      ordered_json sj;
      sj["branch"] = sweep.branch_of[r][s];
      sj["profile"] = j_profile_d(sol.profile);
      sj["segment"] = sol.segment;
      if (sol.segment) {
        ordered_json ends = ordered_json::array();
        for (const auto& end : sol.endpoints)
          ends.push_back(j_profile_d(end));
        sj["endpoints"] = ends;
      }
      sols.push_back(sj);
    }
    rec["solutions"] = sols;
    records.push_back(rec);
  }
  doc["records"] = records;

  ordered_json events = ordered_json::array();
  for (const auto& ev : sweep.events) {
    ordered_json e;
    e["rho"] = ev.rho;
    e["what"] = ev.what;
    events.push_back(e);
  }
  doc["events"] = events;

  // Plot polylines: per branch, [rho, first own-action probability of each
  // player] at every grid point where the branch is present.
  ordered_json lines = ordered_json::array();
  for (int b = 0; b < sweep.branches; ++b) {
    ordered_json line = ordered_json::array();
    for (std::size_t r = 0; r < sweep.rhos.size(); ++r) {
      for (std::size_t s = 0; s < sweep.solutions[r].size(); ++s) {
        if (sweep.branch_of[r][s] != b) continue;
        ordered_json pt = ordered_json::array();
        pt.push_back(sweep.rhos[r]);
        for (const auto& v : sweep.solutions[r][s].profile)
          pt.push_back(v(0));
        line.push_back(pt);
        break;
      }
    }
    lines.push_back(line);
  }
  doc["plot_polylines"] = lines;
  return dump(doc);
}

std::string qre_document(const std::string& game_name, const Game& game,
                         const std::vector<QrePoint>& trace,
                         const LogitBoundReport& bound) {
  ordered_json doc;
  doc["command"] = "qre-trace";
  doc.update(game_header(game_name, game));
  ordered_json pts = ordered_json::array();
  for (const auto& pt : trace) {
    ordered_json p;
    p["lambda"] = pt.lambda;
    p["profile"] = j_profile_d(pt.profile);
    p["residual"] = pt.residual;
    pts.push_back(p);
  }
  doc["points"] = pts;

  ordered_json bj;
  bj["applicable"] = bound.applicable;
  ordered_json doms = ordered_json::array();
  for (const auto& d : bound.dominated) {
    ordered_json dj;
    dj["player"] = d.player;
    dj["action"] = d.action;
    dj["weight_interval"] = {d.weight_lo, d.weight_hi};
    doms.push_back(dj);
  }
  bj["dominated"] = doms;
  if (bound.applicable) {
    bj["holds"] = bound.holds;
    bj["max_probability_seen"] = bound.max_seen;
  }
  doc["dominated_bound"] = bj;
  return dump(doc);
}

std::string stability_document(const std::string& game_name,
                               const std::vector<VecQ>& profile,
                               const StabilityReport& report, double eps,
                               int trials, unsigned long long seed) {
  ordered_json doc;
  doc["command"] = "stability";
  doc["game"] = game_name;
  doc["profile"] = j_profile_q(profile);
  doc["eps"] = eps;
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["stable"] = report.stable;
  doc["fast_path"] = report.fast_path;
  doc["failure_rate"] = report.failure_rate;
  return dump(doc);
}

std::string elicit_document(const SliderReport& truth, const IcReport& ic,
                            long trials, unsigned long long seed,
                            const std::vector<double>& win_rates) {
  ordered_json doc;
  doc["command"] = "elicit-sim";
  ordered_json blocks = ordered_json::array();
  for (const auto& b : truth.truth) blocks.push_back(j_vecd(b));
  doc["truth"] = blocks;
  doc["prize"] = truth.prize;
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["win_rates"] = win_rates;
  ordered_json icj;
  icj["grid_step"] = ic.grid_step;
  icj["incentive_compatible"] = ic.incentive_compatible;
  icj["max_argmax_gap"] = ic.max_argmax_gap;
  icj["max_gradient"] = ic.max_gradient;
  icj["concave"] = ic.concave;
  doc["incentive_check"] = icj;
  return dump(doc);
}

std::string cluster_document(const Clustering& clustering,
                             const ElbowResult* elbow,
                             unsigned long long seed) {
  ordered_json doc;
  doc["command"] = "cluster";
  doc["k"] = clustering.k;
  doc["seed"] = seed;
  doc["restarts"] = clustering.restarts;
  doc["total_error"] = clustering.total_error;
  std::vector<long> counts(clustering.centroids.size(), 0);
  for (int a : clustering.assignment) counts[a] += 1;
  ordered_json cs = ordered_json::array();
  for (std::size_t c = 0; c < clustering.centroids.size(); ++c) {
    ordered_json cj;
    cj["centroid"] = j_vecd(clustering.centroids[c]);
    cj["count"] = counts[c];
    cs.push_back(cj);
  }
  doc["clusters"] = cs;
  doc["assignment"] = clustering.assignment;
  if (elbow != nullptr) {
    ordered_json ej;
    ej["ks"] = elbow->ks;
    ej["errors"] = elbow->errors;
    ej["suggested_k"] = elbow->suggested_k;
    doc["elbow"] = ej;
  }
  return dump(doc);
}

std::string classify_document(const std::string& game_name,
                              const MResult& sets,
                              const SetClassification& classification,
                              const BestResponseTable& table) {
  ordered_json doc;
  doc["command"] = "classify";
  doc["game"] = game_name;
  doc["sets"] = sets.equilibria.size();
  ordered_json labels = ordered_json::array();
  for (const auto& eq : sets.equilibria) {
    labels.push_back(pattern_json(eq.pattern));
  }
  doc["set_patterns"] = labels;
  doc["observations"] = classification.choice_set.size();
  doc["choice_set"] = classification.choice_set;
  doc["belief_set"] = classification.belief_set;
  doc["choice_fraction"] = classification.choice_fraction;
  doc["belief_fraction"] = classification.belief_fraction;
  ordered_json br;
  br["row_rate"] = table.row_rate;
  br["column_rate"] = table.column_rate;
  br["overall"] = table.overall;
  br["row_count"] = table.row_count;
  br["column_count"] = table.column_count;
  doc["best_response"] = br;
  return dump(doc);
}

}  // namespace meq::io
