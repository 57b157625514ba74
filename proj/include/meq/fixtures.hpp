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

#include "meq/game.hpp"

namespace meq::fixtures {

// Catalog of the benchmark games used throughout the tests and the CLI.
std::vector<std::string> names();
bool has(const std::string& name);
Game load(const std::string& name);

// The asymmetric-matching-pennies family in parametric form; amp1..amp5 are
// instances of this for specific (X, Y, Z, W).
Game amp_parametric(long X, long Y, long Z, long W);

struct SynthSpec {
  int n_subjects = 20;
  int rounds = 8;
  // Beliefs drawn uniformly from this box (per opponent-action coordinate,
  // then renormalized onto the simplex): lo/hi per coordinate.
  std::vector<double> belief_lo;
  std::vector<double> belief_hi;
  double best_response_rate = 1.0;  // chance a choice best-responds to belief
  std::uint64_t seed = 0;
  std::string game_id = "game";
};

// Reproducible observation file (delimited text) for analysis-pipeline tests.
std::string synth_dataset(const Game& game, const SynthSpec& spec);

}  // namespace meq::fixtures
