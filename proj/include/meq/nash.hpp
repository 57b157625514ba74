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

#include "meq/game.hpp"
#include "meq/geometry.hpp"

namespace meq {

enum class NashKind { kPure, kMixed, kDegenerateMixed };

struct NashPoint {
  std::vector<VecQ> profile;           // per-player mixed strategy
  NashKind kind = NashKind::kPure;
  std::vector<std::vector<int>> support;  // per-player action subsets
  // Degenerate continuum: a 1-parameter family, reported by its endpoints;
  // `profile` then holds the family midpoint.
  bool continuum = false;
  std::vector<std::vector<VecQ>> endpoints;  // [end][player]
};

// All pure-strategy equilibria by exhaustive deviation checks (any n).
std::vector<NashPoint> pure_nash(const Game& game);

// All equilibria of a 2-player game by support enumeration with exact
// rational solves; degenerate supports yield flagged continuum families.
// Games larger than 4 actions per player are rejected.
std::vector<NashPoint> mixed_nash_bimatrix(const Game& game);

struct Beaune {
  std::vector<VecQ> choice;
  // Per player: the closure of the belief polytope (in the opponent's
  // parametrized simplex) inducing the same best-response set.
  std::vector<geom::Poly> belief_factors;
  Rational belief_measure;  // product of normalized factor measures
};

// The belief-augmented equilibrium for a choice profile: the largest belief
// set whose induced best responses equal those at the profile, or nothing
// when the choice is not a best response to any such belief. Exact for n=2.
std::optional<Beaune> beaune(const Game& game,
                             const std::vector<VecQ>& choice);

// True iff every support action of every player attains the maximum expected
// payoff against the others (independent verification used by tests).
bool is_nash(const Game& game, const std::vector<VecQ>& profile);

}  // namespace meq
