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

#include <stdexcept>
#include <string>
#include <vector>

#include "meq/types.hpp"

namespace meq {

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-player belief profile: belief[j] is player i's belief over player j's
// actions for every opponent j != i. The own slot (j == i) is implicitly the
// player's own choice and is never stored.
template <typename S>
struct Beliefs {
  // beliefs[j] for j != i; entry at the own index is an empty vector.
  std::vector<Vec<S>> about;
};

// Finite normal-form game with exact rational payoff tensors.
class Game {
 public:
  Game(std::vector<int> action_counts,
       std::vector<std::vector<Rational>> payoffs,
       std::vector<std::vector<std::string>> labels = {},
       bool symmetric = false);

  int num_players() const { return int(action_counts_.size()); }
  int actions(int player) const { return action_counts_[player]; }
  const std::vector<int>& action_counts() const { return action_counts_; }
  bool symmetric() const { return symmetric_; }
  const std::vector<std::vector<std::string>>& labels() const {
    return labels_;
  }

  // Payoff to `player` at the pure profile (row-player index first, i.e. the
  // profile is laid out with player 0's action as the slowest index).
  const Rational& payoff(int player, const std::vector<int>& profile) const {
    return payoffs_[player][flat_index(profile)];
  }
  const std::vector<Rational>& payoff_tensor(int player) const {
    return payoffs_[player];
  }

  std::size_t flat_index(const std::vector<int>& profile) const;
  std::size_t profile_count() const { return profile_size_; }
  std::vector<int> unflatten(std::size_t flat) const;

  // Expected payoff per own action of `player`, given a belief point per
  // opponent. Multilinear in each opponent block.
  template <typename S>
  Vec<S> expected_payoffs(int player, const Beliefs<S>& belief) const;

  // Convenience for profiles: opponents' mixed strategies read off a full
  // choice profile (belief = correct beliefs about opponents' play).
  template <typename S>
  Vec<S> expected_payoffs_profile(int player,
                                  const std::vector<Vec<S>>& profile) const;

  // Copy with every payoff entry shifted by the given (dense) deltas, used by
  // perturbation tests. deltas[player] has profile_count() entries.
  Game perturbed(const std::vector<std::vector<Rational>>& deltas) const;

  std::string to_json() const;
  static Game from_json(const std::string& text);

 private:
  std::vector<int> action_counts_;
  std::vector<std::size_t> strides_;
  std::size_t profile_size_ = 1;
  std::vector<std::vector<Rational>> payoffs_;  // [player][flat profile]
  std::vector<std::vector<std::string>> labels_;
  bool symmetric_ = false;
};

template <typename S>
Vec<S> Game::expected_payoffs(int player, const Beliefs<S>& belief) const {
  const int n = num_players();
  for (int j = 0; j < n; ++j) {
    if (j == player) continue;
    if (j >= int(belief.about.size()) ||
        belief.about[j].size() != action_counts_[j]) {
      throw ShapeError("belief dimensions do not match game");
    }
  }
  const int k = action_counts_[player];
  Vec<S> pi = Vec<S>::Zero(k);
  std::vector<int> profile(n, 0);
  for (std::size_t f = 0; f < profile_size_; ++f) {
    const std::vector<int> p = unflatten(f);
    S w = S(1);
    for (int j = 0; j < n; ++j) {
      if (j == player) continue;
      w *= belief.about[j](p[j]);
    }
    if (w == S(0)) continue;
    S u;
    if constexpr (std::is_same_v<S, double>) {
      u = to_double(payoffs_[player][f]);
    } else {
      u = payoffs_[player][f];
    }
    pi(p[player]) += w * u;
  }
  return pi;
}

template <typename S>
Vec<S> Game::expected_payoffs_profile(
    int player, const std::vector<Vec<S>>& profile) const {
  Beliefs<S> b;
  b.about.resize(num_players());
  for (int j = 0; j < num_players(); ++j) {
    if (j != player) b.about[j] = profile[j];
  }
  return expected_payoffs(player, b);
}

}  // namespace meq
