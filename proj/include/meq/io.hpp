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

#include "meq/analysis.hpp"
#include "meq/elicitation.hpp"
#include "meq/game.hpp"
#include "meq/msets.hpp"
#include "meq/mu.hpp"
#include "meq/nash.hpp"
#include "meq/qre.hpp"

// Machine-readable result documents (JSON text, deterministic key order and
// formatting) plus plot data: ternary coordinates for 3-action factors and
// unit-square rectangles for 2-action games. Exact rationals serialize as
// "num/den" strings.
namespace meq::io {

std::string msets_document(const std::string& game_name, const Game& game,
                           const MResult& result,
                           const std::vector<NashPoint>& markers = {});

std::string nash_document(const std::string& game_name, const Game& game,
                          const std::vector<NashPoint>& solution);

std::string mu_sweep_document(const std::string& game_name, const Game& game,
                              const MuSweep& sweep);

std::string qre_document(const std::string& game_name, const Game& game,
                         const std::vector<QrePoint>& trace,
                         const LogitBoundReport& bound);

std::string stability_document(const std::string& game_name,
                               const std::vector<VecQ>& profile,
                               const StabilityReport& report, double eps,
                               int trials, unsigned long long seed);

std::string elicit_document(const SliderReport& truth, const IcReport& ic,
                            long trials, unsigned long long seed,
                            const std::vector<double>& win_rates);

std::string cluster_document(const Clustering& clustering,
                             const ElbowResult* elbow,
                             unsigned long long seed);

std::string classify_document(const std::string& game_name,
                              const MResult& sets,
                              const SetClassification& classification,
                              const BestResponseTable& table);

}  // namespace meq::io
