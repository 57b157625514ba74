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

#include <cstdint>
#include <string>
#include <vector>

#include "meq/game.hpp"
#include "meq/msets.hpp"

namespace meq {

// One elicited decision: a chosen action plus the stated belief about the
// opponent. Beliefs are kept as parsed (slider rounding can leave the sum
// off one by up to 1e-3); use normalized_belief() where a simplex point is
// required.
struct Observation {
  std::string subject;
  int round = 0;
  int role = 0;  // 0 = row, 1 = column
  std::string game_id;
  int choice = 0;
  VecD belief;

  VecD normalized_belief() const { return belief / belief.sum(); }
};

struct IngestError {
  int line = 0;  // 1-based line number in the file
  std::string message;
};

struct IngestResult {
  std::vector<Observation> observations;
  std::vector<IngestError> errors;  // malformed rows, collected not fatal
};

// Delimited text with header: subject,round,role,game,choice,belief0,...
// Unknown columns are ignored; a missing required column is a format error.
IngestResult ingest(const std::string& path);
IngestResult ingest_text(const std::string& text);

struct Clustering {
  int k = 0;
  std::vector<VecD> centroids;
  std::vector<int> assignment;  // per point
  double total_error = 0;       // sum of squared euclidean distances
  int restarts = 0;
};

// Lloyd's algorithm, best of `restarts` seeded starts; an empty cluster is
// re-seeded at the point farthest from its current centroid.
Clustering kmeans(const std::vector<VecD>& points, int k, int restarts = 5000,
                  std::uint64_t seed = 0);

struct ElbowResult {
  std::vector<int> ks;
  std::vector<double> errors;
  int suggested_k = 0;  // largest discrete curvature of the error curve
};

ElbowResult elbow(const std::vector<VecD>& points, int k_lo = 2, int k_hi = 15,
                  int restarts = 200, std::uint64_t seed = 0);

struct SetClassification {
  // Per observation: index into msets.equilibria, or -1 when no set's
  // closure contains the point.
  std::vector<int> choice_set;
  std::vector<int> belief_set;
  std::vector<double> choice_distance;  // 0 when inside some set
  std::vector<double> belief_distance;
  // Per equilibrium: fraction of observations landing in it (plus a final
  // entry for "none").
  std::vector<double> choice_fraction;
  std::vector<double> belief_fraction;
};

// Assign every observation's pure choice and stated belief to the enumerated
// monotone sets by closure membership; belief sets require the exact mode.
SetClassification classify_into_sets(const Game& game,
                                     const std::vector<Observation>& obs,
                                     const MResult& msets);

struct BestResponseTable {
  double row_rate = 0;
  double column_rate = 0;
  double overall = 0;
  long row_count = 0;
  long column_count = 0;
};

// Fraction of observations whose choice maximizes the expected payoff under
// the subject's own stated belief; payoff ties count as best responses.
BestResponseTable best_response_rate(const Game& game,
                                     const std::vector<Observation>& obs);

}  // namespace meq
