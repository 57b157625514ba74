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

#include "meq/game.hpp"

#include <json.hpp>

namespace meq {

using nlohmann::json;
using nlohmann::ordered_json;

Game::Game(std::vector<int> action_counts,
           std::vector<std::vector<Rational>> payoffs,
           std::vector<std::vector<std::string>> labels, bool symmetric)
    : action_counts_(std::move(action_counts)),
      payoffs_(std::move(payoffs)),
      labels_(std::move(labels)),
      symmetric_(symmetric) {
  const int n = int(action_counts_.size());
  if (n < 2) throw ValidationError("need at least two players");
  for (int k : action_counts_)
    if (k < 2) throw ValidationError("need at least two actions per player");
  strides_.assign(n, 1);
  for (int j = n - 2; j >= 0; --j)
    strides_[j] = strides_[j + 1] * std::size_t(action_counts_[j + 1]);
  profile_size_ = strides_[0] * std::size_t(action_counts_[0]);
  if (int(payoffs_.size()) != n)
    throw ValidationError("one payoff tensor per player required");
  for (const auto& t : payoffs_)
    if (t.size() != profile_size_)
      throw ValidationError("payoff tensor shape mismatch");
  if (labels_.empty()) {
    labels_.resize(n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < action_counts_[i]; ++a)
        labels_[i].push_back("a" + std::to_string(a));
  }
  if (int(labels_.size()) != n)
    throw ValidationError("one label list per player required");
  for (int i = 0; i < n; ++i)
    if (int(labels_[i].size()) != action_counts_[i])
      throw ValidationError("label count mismatch");
  if (symmetric_) {
    if (n != 2 || action_counts_[0] != action_counts_[1])
      throw ValidationError("symmetric flag requires a square 2-player game");
    const int k = action_counts_[0];
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (payoffs_[0][std::size_t(a) * k + b] !=
            payoffs_[1][std::size_t(b) * k + a])
          throw ValidationError("symmetric flag requires P1(a,b) == P2(b,a)");
  }
}

std::size_t Game::flat_index(const std::vector<int>& profile) const {
  if (profile.size() != action_counts_.size())
    throw ShapeError("profile length mismatch");
  std::size_t f = 0;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (profile[j] < 0 || profile[j] >= action_counts_[j])
      throw ShapeError("action index out of range");
    f += strides_[j] * std::size_t(profile[j]);
  }
  return f;
}

std::vector<int> Game::unflatten(std::size_t flat) const {
  std::vector<int> p(action_counts_.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    p[j] = int(flat / strides_[j]);
    flat %= strides_[j];
  }
  return p;
}

Game Game::perturbed(const std::vector<std::vector<Rational>>& deltas) const {
  auto payoffs = payoffs_;
  if (deltas.size() != payoffs.size())
    throw ShapeError("delta tensor count mismatch");
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (deltas[i].size() != payoffs[i].size())
      throw ShapeError("delta tensor shape mismatch");
    for (std::size_t f = 0; f < payoffs[i].size(); ++f)
      payoffs[i][f] += deltas[i][f];
  }
  // Perturbations break exact symmetry; the flag is dropped rather than
  // re-validated.
  return Game(action_counts_, std::move(payoffs), labels_, false);
}

namespace {

json payoff_to_json(const Rational& q) {
  if (denominator(q) == 1 && numerator(q) >= INT64_MIN &&
      numerator(q) <= INT64_MAX) {
    return json(numerator(q).convert_to<std::int64_t>());
  }
  return json(rational_to_string(q));
}

Rational payoff_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    auto q = parse_rational(v.get<std::string>());
    if (!q) throw ValidationError("bad rational literal: " + v.dump());
    return *q;
  }
  throw ValidationError("payoff entries must be integers or \"num/den\"");
}

// Nested payoff arrays follow action-profile order with the row player's
// (player 0's) index outermost.
json tensor_to_json(const Game& g, int player, std::size_t base, int depth,
                    const std::vector<Rational>& t,
                    const std::vector<std::size_t>& strides) {
  json arr = json::array();
  for (int a = 0; a < g.actions(depth); ++a) {
    const std::size_t off = base + strides[depth] * std::size_t(a);
    if (depth + 1 == g.num_players()) {
      arr.push_back(payoff_to_json(t[off]));
    } else {
      arr.push_back(tensor_to_json(g, player, off, depth + 1, t, strides));
    }
  }
  return arr;
}

void tensor_from_json(const json& arr, const std::vector<int>& counts,
                      int depth, std::vector<Rational>& out) {
  if (!arr.is_array() || int(arr.size()) != counts[depth])
    throw ValidationError("payoff array shape mismatch");
  for (const auto& v : arr) {
    if (depth + 1 == int(counts.size())) {
      out.push_back(payoff_from_json(v));
    } else {
      tensor_from_json(v, counts, depth + 1, out);
    }
  }
}

}  // namespace

std::string Game::to_json() const {
  ordered_json doc;
  doc["players"] = num_players();
  json actions = json::array();
  for (const auto& l : labels_) actions.push_back(l);
  doc["actions"] = actions;
  std::vector<std::size_t> strides(num_players(), 1);
  for (int j = num_players() - 2; j >= 0; --j)
    strides[j] = strides[j + 1] * std::size_t(action_counts_[j + 1]);
  json payoffs = json::array();
  for (int i = 0; i < num_players(); ++i)
    payoffs.push_back(tensor_to_json(*this, i, 0, 0, payoffs_[i], strides));
  doc["payoffs"] = payoffs;
  doc["symmetric"] = symmetric_;
  return doc.dump(2) + "\n";
}

Game Game::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("game file is not valid JSON: ") +
                          e.what());
  }
  for (const char* field : {"players", "actions", "payoffs", "symmetric"})
    if (!doc.contains(field))
      throw ValidationError(std::string("missing field: ") + field);
  const int n = doc["players"].get<int>();
  if (!doc["actions"].is_array() || int(doc["actions"].size()) != n)
    throw ValidationError("actions must list one label array per player");
  std::vector<std::vector<std::string>> labels;
  std::vector<int> counts;
  for (const auto& l : doc["actions"]) {
    labels.push_back(l.get<std::vector<std::string>>());
    counts.push_back(int(labels.back().size()));
  }
  if (!doc["payoffs"].is_array() || int(doc["payoffs"].size()) != n)
    throw ValidationError("payoffs must list one tensor per player");
  std::vector<std::vector<Rational>> payoffs(n);
  for (int i = 0; i < n; ++i)
    tensor_from_json(doc["payoffs"][i], counts, 0, payoffs[i]);
  return Game(std::move(counts), std::move(payoffs), std::move(labels),
              doc["symmetric"].get<bool>());
}

}  // namespace meq
