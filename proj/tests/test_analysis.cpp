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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "meq/analysis.hpp"
#include "meq/fixtures.hpp"

using namespace meq;

namespace {

VecD d2(double a, double b) {
  VecD v(2);
  v << a, b;
  return v;
}

Observation ob(int role, int choice, VecD belief) {
  Observation o;
  o.subject = "s";
  o.role = role;
  o.choice = choice;
  o.belief = std::move(belief);
  return o;
}

// Gaussian blob around a center, clipped back onto the simplex.
std::vector<VecD> blob(const VecD& center, int n, double radius,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, radius);
  std::vector<VecD> out;
  for (int t = 0; t < n; ++t) {
    VecD p = center;
    for (int i = 0; i < p.size(); ++i) p(i) += noise(rng);
    for (int i = 0; i < p.size(); ++i) p(i) = std::clamp(p(i), 0.0, 1.0);
    p /= p.sum();
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("well-formed file ingests every row") {
  const std::string text =
      "subject,round,role,game,choice,belief0,belief1\n"
      "1,1,row,coord,0,0.5,0.5\n"
      "1,2,column,coord,1,0.25,0.75\n"
      "2,1,row,coord,0,1.0,0.0\n"
      "2,2,col,coord,1,0.3333,0.6667\n"
      "3,1,row,coord,1,0.999,0.0015\n";
  const auto res = ingest_text(text);
  CHECK(res.errors.empty());
  REQUIRE(res.observations.size() == 5);
  CHECK(res.observations[0].subject == "1");
  CHECK(res.observations[1].role == 1);
  CHECK(res.observations[3].role == 1);
  CHECK(res.observations[2].belief(0) == 1.0);
  CHECK(res.observations[4].normalized_belief().sum() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("off-simplex and malformed rows are rejected with line numbers") {
  const std::string text =
      "subject,round,role,game,choice,belief0,belief1\n"
      "1,1,row,coord,0,0.51,0.51\n"        // sums to 1.02
      "1,2,row,coord,0,0.5,0.5\n"          // fine
      "1,3,middle,coord,0,0.5,0.5\n"       // bad role
      "1,x,row,coord,0,0.5,0.5\n"          // bad round
      "1,4,row,coord,zz,0.5,0.5\n"         // bad choice
      "1,5,row,coord,0,oops,0.5\n";        // bad belief
  const auto res = ingest_text(text);
  CHECK(res.observations.size() == 1);
  REQUIRE(res.errors.size() == 5);
  CHECK(res.errors[0].line == 2);
  CHECK(res.errors[1].line == 4);
}

TEST_CASE("a missing required column is a format error") {
  CHECK_THROWS_AS(ingest_text("subject,round,role,game\n1,1,row,g\n"),
                  ValidationError);
  CHECK_THROWS_AS(ingest_text(""), ValidationError);
}

TEST_CASE("synthetic dataset round-trips bit-exactly") {
  const Game g = fixtures::load("amp");
  fixtures::SynthSpec spec;
  spec.n_subjects = 12;
  spec.rounds = 6;
  spec.belief_lo = {0.2, 0.2};
  spec.belief_hi = {0.8, 0.8};
  spec.best_response_rate = 0.7;
  spec.seed = 5;
  spec.game_id = "amp";
  const std::string text = fixtures::synth_dataset(g, spec);

  const auto res = ingest_text(text);
  CHECK(res.errors.empty());
  REQUIRE(res.observations.size() == 12 * 6);

  // Re-serialize in the writer's format and compare byte for byte.
  std::ostringstream out;
  out << "subject,round,role,game,choice,belief0,belief1\n";
  char buf[64];
  for (const auto& o : res.observations) {
    out << o.subject << "," << o.round << ","
        << (o.role == 0 ? "row" : "column") << "," << o.game_id << ","
        << o.choice;
    for (int k = 0; k < 2; ++k) {
      snprintf(buf, sizeof buf, "%.4f", o.belief(k));
      out << "," << buf;
    }
    out << "\n";
  }
  CHECK(out.str() == text);
}

TEST_CASE("k-means on identical points returns the point with zero error") {
  const std::vector<VecD> pts(7, d2(0.25, 0.75));
  const auto c = kmeans(pts, 1, 10, 3);
  CHECK(c.total_error == 0.0);
  CHECK(c.centroids[0] == d2(0.25, 0.75));
  for (int a : c.assignment) CHECK(a == 0);
  CHECK_THROWS_AS(kmeans(pts, 2, 10, 3), ValidationError);
}

TEST_CASE("k-means recovers two well-separated blobs") {
  std::mt19937_64 rng(11);
  std::vector<VecD> pts = blob(d2(0.1, 0.9), 20, 0.01, rng);
  const auto more = blob(d2(0.9, 0.1), 20, 0.01, rng);
  pts.insert(pts.end(), more.begin(), more.end());
  const auto c = kmeans(pts, 2, 50, 17);
  for (int p = 1; p < 20; ++p) CHECK(c.assignment[p] == c.assignment[0]);
  for (int p = 21; p < 40; ++p) CHECK(c.assignment[p] == c.assignment[20]);
  CHECK(c.assignment[0] != c.assignment[20]);
}

TEST_CASE("k-means result is the brute-force optimal 2-partition") {
  // Small instance so every 2-partition can be scored exactly.
  std::mt19937_64 rng(23);
  std::vector<VecD> pts = blob(d2(0.2, 0.8), 6, 0.05, rng);
  const auto more = blob(d2(0.75, 0.25), 6, 0.05, rng);
  pts.insert(pts.end(), more.begin(), more.end());
  const int n = int(pts.size());

  double best = 1e300;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    VecD s0 = VecD::Zero(2), s1 = VecD::Zero(2);
    int n0 = 0, n1 = 0;
    for (int p = 0; p < n; ++p) {
      if (mask & (1 << p)) {
        s0 += pts[p];
        ++n0;
      } else {
        s1 += pts[p];
        ++n1;
      }
    }
    const VecD c0 = s0 / n0, c1 = s1 / n1;
    double err = 0;
    for (int p = 0; p < n; ++p)
      err += (pts[p] - ((mask & (1 << p)) ? c0 : c1)).squaredNorm();
    best = std::min(best, err);
  }

  const auto c = kmeans(pts, 2, 200, 9);
  CHECK(c.total_error == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("k-means is deterministic for a fixed seed") {
  std::mt19937_64 rng(31);
  std::vector<VecD> pts = blob(d2(0.3, 0.7), 15, 0.1, rng);
  const auto more = blob(d2(0.8, 0.2), 15, 0.1, rng);
  pts.insert(pts.end(), more.begin(), more.end());
  const auto a = kmeans(pts, 3, 40, 77);
  const auto b = kmeans(pts, 3, 40, 77);
  CHECK(a.total_error == b.total_error);
  CHECK(a.assignment == b.assignment);
  for (int c = 0; c < 3; ++c) CHECK(a.centroids[c] == b.centroids[c]);
}

TEST_CASE("elbow curve decreases and finds a seven-blob structure") {
  std::mt19937_64 rng(41);
  std::vector<VecD> pts;
  const double centers[7][2] = {{0.05, 0.95}, {0.2, 0.8}, {0.35, 0.65},
                                {0.5, 0.5},   {0.65, 0.35}, {0.8, 0.2},
                                {0.95, 0.05}};
  for (const auto& c : centers) {
    const auto b = blob(d2(c[0], c[1]), 20, 0.004, rng);
    pts.insert(pts.end(), b.begin(), b.end());
  }
  const auto res = elbow(pts, 2, 15, 60, 13);
  REQUIRE(res.ks.size() == 14);
  for (std::size_t t = 1; t < res.errors.size(); ++t)
    CHECK(res.errors[t] <= res.errors[t - 1] + 1e-12);
  CHECK(res.suggested_k == 7);
}

TEST_CASE("coordination beliefs and choices classify into the rectangles") {
  const Game g = fixtures::load("coord");
  const MResult sets = enumerate_m_equilibria(g);
  REQUIRE(sets.equilibria.size() == 2);
  // Identify the two colorable sets by their exact choice measures.
  int red = -1, yellow = -1;
  for (int e = 0; e < 2; ++e) {
    if (sets.equilibria[e].measure == Rational(1, 4)) red = e;
    if (sets.equilibria[e].measure == Rational(1, 9)) yellow = e;
  }
  REQUIRE(red >= 0);
  REQUIRE(yellow >= 0);

  std::vector<Observation> obs = {
      ob(0, 0, d2(0.9, 0.1)),  // belief deep in the [2/3,1] block
      ob(1, 0, d2(0.9, 0.1)),
      ob(0, 1, d2(0.6, 0.4)),  // belief inside [0,2/3]
      ob(1, 1, d2(0.2, 0.8)),
  };
  const auto cls = classify_into_sets(g, obs, sets);
  CHECK(cls.belief_set[0] == yellow);
  CHECK(cls.belief_set[1] == yellow);
  CHECK(cls.belief_set[2] == red);
  CHECK(cls.belief_set[3] == red);
  CHECK(cls.choice_set[0] == yellow);  // action A vertex
  CHECK(cls.choice_set[2] == red);     // action B vertex
  CHECK(cls.belief_distance[0] == 0.0);
  CHECK(cls.belief_fraction[yellow] == doctest::Approx(0.5));
  CHECK(cls.belief_fraction[red] == doctest::Approx(0.5));
}

TEST_CASE("choice classification agrees with the boundary markers") {
  for (const char* name : {"coord", "mondrian"}) {
    const Game g = fixtures::load(name);
    MOptions opts;
    opts.symmetric = (std::string(name) == "mondrian");
    const MResult sets = enumerate_m_equilibria(g, opts);
    const int k = sets.factor_actions[0];
    for (int a = 0; a < k; ++a) {
      VecQ vert = VecQ::Zero(k);
      vert(a) = 1;
      std::vector<std::vector<VecQ>> pts = {
          std::vector<VecQ>(sets.factors, vert)};
      const auto markers = boundary_markers(sets, pts);
      Observation o = ob(0, a, VecD::Ones(k) / double(k));
      const auto cls = classify_into_sets(g, {o}, sets);
      if (cls.choice_set[0] >= 0) {
        bool found = false;
        for (int m : markers[0]) found = found || m == cls.choice_set[0];
        CHECK(found);
      } else {
        CHECK(markers[0].empty());
      }
    }
  }
}

TEST_CASE("a 62 percent cloud reports a 62 percent fraction") {
  const Game g = fixtures::load("coord");
  const MResult sets = enumerate_m_equilibria(g);
  int yellow = -1;
  for (int e = 0; e < 2; ++e)
    if (sets.equilibria[e].measure == Rational(1, 9)) yellow = e;
  REQUIRE(yellow >= 0);

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Observation> obs;
  for (int t = 0; t < 124; ++t) {
    const double x = 0.70 + 0.25 * unif(rng);
    obs.push_back(ob(t % 2, 0, d2(x, 1 - x)));
  }
  for (int t = 0; t < 76; ++t) {
    const double x = 0.05 + 0.55 * unif(rng);
    obs.push_back(ob(t % 2, 1, d2(x, 1 - x)));
  }
  const auto cls = classify_into_sets(g, obs, sets);
  CHECK(cls.belief_fraction[yellow] == doctest::Approx(0.62));
}

TEST_CASE("best-response rates from constructed data") {
  const Game g = fixtures::load("amp");
  {
    fixtures::SynthSpec spec;
    spec.n_subjects = 40;
    spec.rounds = 20;
    spec.belief_lo = {0.1, 0.1};
    spec.belief_hi = {0.9, 0.9};
    spec.best_response_rate = 1.0;
    spec.seed = 61;
    const auto res = ingest_text(fixtures::synth_dataset(g, spec));
    REQUIRE(res.errors.empty());
    const auto table = best_response_rate(g, res.observations);
    CHECK(table.row_rate == 1.0);
    CHECK(table.column_rate == 1.0);
    CHECK(table.overall == 1.0);
  }
  {
    fixtures::SynthSpec spec;
    spec.n_subjects = 40;
    spec.rounds = 20;
    spec.belief_lo = {0.1, 0.1};
    spec.belief_hi = {0.9, 0.9};
    spec.best_response_rate = 0.58;
    spec.seed = 67;
    const auto res = ingest_text(fixtures::synth_dataset(g, spec));
    const auto table = best_response_rate(g, res.observations);
    CHECK(table.row_count == 400);
    CHECK(table.column_count == 400);
    CHECK(std::abs(table.row_rate - 0.58) < 0.08);
    CHECK(std::abs(table.column_rate - 0.58) < 0.08);
  }
}

TEST_CASE("uniform random choices best-respond about half the time") {
  const Game g = fixtures::load("amp");
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Observation> obs;
  for (int t = 0; t < 2000; ++t) {
    const double x = 0.05 + 0.9 * unif(rng);
    obs.push_back(ob(t % 2, rng() % 2, d2(x, 1 - x)));
  }
  const auto table = best_response_rate(g, obs);
  CHECK(std::abs(table.overall - 0.5) < 0.05);
}
