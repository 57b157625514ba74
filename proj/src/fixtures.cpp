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

#include "meq/fixtures.hpp"

#include <random>
#include <sstream>

namespace meq::fixtures {

namespace {

// Build a 2-player game from per-cell (row payoff, column payoff) pairs laid
// out row-major: cells[r][c] = {P1, P2}.
Game bimatrix(const std::vector<std::vector<std::pair<long, long>>>& cells,
              std::vector<std::vector<std::string>> labels, bool symmetric) {
  const int kr = int(cells.size());
  const int kc = int(cells[0].size());
  std::vector<std::vector<Rational>> payoffs(2);
  for (int r = 0; r < kr; ++r) {
    for (int c = 0; c < kc; ++c) {
      payoffs[0].push_back(cells[r][c].first);
      payoffs[1].push_back(cells[r][c].second);
    }
  }
  return Game({kr, kc}, std::move(payoffs), std::move(labels), symmetric);
}

// Symmetric 2-player game from the row player's payoff rows.
Game symmetric3(const std::vector<std::vector<long>>& rows,
                std::vector<std::string> actions) {
  std::vector<std::vector<std::pair<long, long>>> cells(3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) cells[r].push_back({rows[r][c], rows[c][r]});
  return bimatrix(cells, {actions, actions}, true);
}

const std::vector<std::string> kAB = {"A", "B"};
const std::vector<std::string> kRBY = {"R", "B", "Y"};
const std::vector<std::string> kABC = {"A", "B", "C"};

}  // namespace

Game amp_parametric(long X, long Y, long Z, long W) {
  return bimatrix({{{X + 10, Z}, {W, Z + 50}}, {{X, Y + 10}, {W + 10, Y}}},
                  {kAB, kAB}, false);
}

std::vector<std::string> names() {
  return {"mondrian",  "intro_dominance", "nongeneric_3x3_left",
          "nongeneric_3x3_right", "three_player", "coord", "chicken", "amp",
          "nongeneric_2x2", "unique_mixed", "ds_mid", "seven_eq", "amp1",
          "amp2", "amp3", "amp4", "amp5", "ds1", "ds2", "nl", "km",
          "matching_pennies"};
}

bool has(const std::string& name) {
  for (const auto& n : names())
    if (n == name) return true;
  return false;
}

Game load(const std::string& name) {
  if (name == "mondrian")
    return symmetric3({{9, 6, 4}, {8, 8, 2}, {4, 4, 5}}, kRBY);
  if (name == "intro_dominance")
    return bimatrix({{{1, 6}, {2, 7}}, {{4, 5}, {3, 8}}},
                    {{"U", "D"}, {"L", "R"}}, false);
  if (name == "nongeneric_3x3_left")
    return symmetric3({{6, 2, 1}, {6, 3, 1}, {1, 8, 9}}, kRBY);
  if (name == "nongeneric_3x3_right")
    return symmetric3({{3, 6, 9}, {6, 3, 9}, {5, 2, 10}}, kRBY);
  if (name == "three_player") {
    // Symmetric 3-player game: each player's payoff is M[own][other][other],
    // with every M[a] symmetric in the two opponents.
    const long M[3][3][3] = {
        {{14, 12, 30}, {12, 4, 32}, {30, 32, 10}},
        {{32, 17, 22}, {17, 36, 8}, {22, 8, 40}},
        {{4, 26, 23}, {26, 32, 20}, {23, 20, 6}}};
    std::vector<std::vector<Rational>> payoffs(3);
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) {
            const int own = i == 0 ? a : (i == 1 ? b : c);
            const int o1 = i == 0 ? b : a;
            const int o2 = i == 2 ? b : c;
            payoffs[i].push_back(M[own][o1][o2]);
          }
    }
    return Game({3, 3, 3}, std::move(payoffs), {kRBY, kRBY, kRBY}, false);
  }
  if (name == "coord")
    return bimatrix({{{2, 2}, {2, 1}}, {{1, 2}, {4, 4}}}, {kAB, kAB}, true);
  if (name == "chicken")
    return bimatrix({{{0, 0}, {6, 1}}, {{1, 10}, {2, 2}}}, {kAB, kAB}, false);
  if (name == "amp")
    return bimatrix({{{1, 0}, {0, 5}}, {{0, 1}, {5, 0}}}, {kAB, kAB}, false);
  if (name == "nongeneric_2x2")
    return bimatrix({{{2, 2}, {0, 0}}, {{2, 2}, {1, 1}}}, {kAB, kAB}, false);
  if (name == "unique_mixed")
    return symmetric3({{6, 7, 2}, {1, 6, 7}, {7, 0, 6}}, kRBY);
  if (name == "ds_mid")
    return symmetric3({{6, 2, 2}, {20, 0, 0}, {0, 5, 5}}, kRBY);
  if (name == "seven_eq")
    return symmetric3({{6, 0, 1}, {2, 5, 1}, {2, 3, 4}}, kRBY);
  if (name == "amp1") return amp_parametric(10, 10, 10, 10);
  if (name == "amp2") return amp_parametric(50, 10, 10, 10);
  if (name == "amp3") return amp_parametric(50, 10, 50, 10);
  if (name == "amp4") return amp_parametric(50, 50, 50, 10);
  if (name == "amp5") return amp_parametric(50, 50, 50, 50);
  if (name == "ds1")
    return symmetric3({{80, 30, 20}, {160, 30, 10}, {10, 40, 30}}, kABC);
  if (name == "ds2")
    return symmetric3({{75, 5, 190}, {155, 5, 180}, {5, 15, 200}}, kABC);
  if (name == "nl")
    return symmetric3({{70, 60, 10}, {500, 40, 0}, {50, 61, 30}}, kABC);
  if (name == "km")
    return symmetric3({{120, 90, 60}, {60, 90, 60}, {120, 90, 30}}, kABC);
  if (name == "matching_pennies")
    return bimatrix({{{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}}},
                    {{"H", "T"}, {"H", "T"}}, false);
  throw ValidationError("unknown fixture game: " + name);
}

std::string synth_dataset(const Game& game, const SynthSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::ostringstream out;
  out << "subject,round,role,game,choice";
  const int kmax = *std::max_element(game.action_counts().begin(),
                                     game.action_counts().end());
  for (int k = 0; k < kmax; ++k) out << ",belief" << k;
  out << "\n";
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  char buf[64];
  for (int s = 0; s < spec.n_subjects; ++s) {
    for (int r = 0; r < spec.rounds; ++r) {
      const int role = s % game.num_players();
      const int opp = role == 0 ? 1 : 0;
      const int kb = game.actions(opp);
      VecD belief(kb);
      double total = 0;
      for (int k = 0; k < kb; ++k) {
        const double lo =
            k < int(spec.belief_lo.size()) ? spec.belief_lo[k] : 0.0;
        const double hi =
            k < int(spec.belief_hi.size()) ? spec.belief_hi[k] : 1.0;
        belief(k) = lo + (hi - lo) * unit(rng);
        total += belief(k);
      }
      belief /= total;
      // Round to 4 decimals the way slider interfaces do, keeping the sum 1.
      double acc = 0;
      for (int k = 0; k < kb; ++k) {
        belief(k) = std::round(belief(k) * 1e4) / 1e4;
        acc += belief(k);
      }
      belief(kb - 1) += 1.0 - acc;

      std::vector<VecD> prof(game.num_players());
      prof[opp] = belief;
      const VecD pi = game.expected_payoffs_profile<double>(role, prof);
      int choice;
      if (unit(rng) < spec.best_response_rate) {
        pi.maxCoeff(&choice);
      } else {
        int best;
        pi.maxCoeff(&best);
        do {
          choice = int(rng() % game.actions(role));
        } while (choice == best);
      }
      out << s << "," << r << "," << (role == 0 ? "row" : "column") << ","
          << spec.game_id << "," << choice;
      for (int k = 0; k < kmax; ++k) {
        if (k < kb) {
          snprintf(buf, sizeof buf, "%.4f", belief(k));
          out << "," << buf;
        } else {
          out << ",";
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace meq::fixtures
