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

// Command-line front end. Exit codes: 0 success, 2 capability limit (a
// request the solver cannot honor exactly), 3 invalid input or options.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meq/analysis.hpp"
#include "meq/elicitation.hpp"
#include "meq/fixtures.hpp"
#include "meq/game.hpp"
#include "meq/io.hpp"
#include "meq/msets.hpp"
#include "meq/mu.hpp"
#include "meq/nash.hpp"
#include "meq/qre.hpp"

namespace fs = std::filesystem;
using namespace meq;

namespace {

Game load_game(const std::string& name_or_path) {
  if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path)) {
    std::ifstream in(name_or_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return Game::from_json(buf.str());
  }
  if (fixtures::has(name_or_path)) return fixtures::load(name_or_path);
  throw ValidationError("unknown game '" + name_or_path +
                        "': not a bundled game name or a readable file");
}

std::string game_label(const std::string& name_or_path) {
  if (fixtures::has(name_or_path)) return name_or_path;
  return fs::path(name_or_path).stem().string();
}

void emit(const std::string& text, const std::string& out, bool force) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  if (fs::exists(out) && !force) {
    throw ValidationError("refusing to overwrite existing file " + out +
                          " (pass --force to allow)");
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ValidationError("cannot write file: " + out);
  f << text;
}

// "a:b:step" inclusive grid (the endpoint is kept when it lands within half
// a step of the nominal end).
std::vector<double> parse_grid(const std::string& text) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof()) {
    throw ValidationError("grid must be start:end:step, got '" + text + "'");
  }
  if (step <= 0 || b < a) throw ValidationError("grid must be increasing");
  std::vector<double> grid;
  for (double x = a; x <= b + step / 2; x += step)
    grid.push_back(std::min(x, b));
  return grid;
}

Rational parse_rat(const std::string& tok) {
  const auto q = parse_rational(tok);
  if (!q) throw ValidationError("bad rational: '" + tok + "'");
  return *q;
}

// "1/2,1/2;1/3,2/3" -> one vector per ';' block.
std::vector<VecQ> parse_profile(const std::string& text) {
  std::vector<VecQ> profile;
  std::istringstream blocks(text);
  std::string block;
  while (std::getline(blocks, block, ';')) {
    std::vector<Rational> vals;
    std::istringstream items(block);
    std::string tok;
    while (std::getline(items, tok, ',')) vals.push_back(parse_rat(tok));
    VecQ v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(int(i)) = vals[i];
    profile.push_back(v);
  }
  if (profile.empty()) throw ValidationError("empty profile");
  return profile;
}

std::vector<VecD> parse_profile_d(const std::string& text) {
  std::vector<VecD> out;
  std::istringstream blocks(text);
  std::string block;
  while (std::getline(blocks, block, ';')) {
    std::vector<double> vals;
    std::istringstream items(block);
    std::string tok;
    while (std::getline(items, tok, ',')) {
      if (const auto q = parse_rational(tok)) {
        vals.push_back(to_double(*q));
      } else {
        try {
          std::size_t used = 0;
          vals.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ValidationError("bad number: '" + tok + "'");
        }
      }
    }
    VecD v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(int(i)) = vals[i];
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty profile");
  return out;
}

struct CommonOut {
  std::string out;
  bool force = false;
};

void add_out_options(CLI::App* cmd, CommonOut* common) {
  cmd->add_option("--out", common->out, "Write the result document here");
  cmd->add_flag("--force", common->force, "Allow overwriting --out");
}

std::vector<NashPoint> try_nash(const Game& game) {
  try {
    return mixed_nash_bimatrix(game);
  } catch (const CapabilityError&) {
    return pure_nash(game);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for monotone set-valued equilibria of finite games"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker thread cap")
      ->check(CLI::PositiveNumber);

  std::function<void()> run;

  // ----- msets -----
  auto* c_msets = app.add_subcommand(
      "msets", "Enumerate monotone choice/belief set pairs");
  {
    auto game = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("exact");
    auto opts = std::make_shared<MOptions>();
    auto seed = std::make_shared<long long>(-1);
    auto common = std::make_shared<CommonOut>();
    c_msets->add_option("--game", *game, "Bundled game name or game file")
        ->required();
    c_msets->add_option("--mode", *mode, "exact or sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    c_msets->add_option("--definition", opts->definition,
                        "Boundary handling: 1 strict, 2 tolerant")
        ->check(CLI::IsMember({1, 2}));
    c_msets->add_flag("--symmetric", opts->symmetric,
                      "Restrict to the diagonal of a symmetric game");
    c_msets->add_option("--samples", opts->samples, "Monte Carlo samples");
    c_msets->add_option("--seed", *seed, "RNG seed (required when sampled)");
    add_out_options(c_msets, common.get());
    c_msets->callback([=, &run]() {
      run = [=]() {
        const Game g = load_game(*game);
        MOptions o = *opts;
        o.sampled = *mode == "sampled";
        if (*seed >= 0) o.seed = (unsigned long long)(*seed);
        const MResult result = enumerate_m_equilibria(g, o);
        std::vector<NashPoint> markers;
        if (!o.sampled && g.num_players() == 2) markers = try_nash(g);
        emit(io::msets_document(game_label(*game), g, result, markers),
             common->out, common->force);
      };
    });
  }

  // ----- nash -----
  auto* c_nash = app.add_subcommand("nash", "Enumerate Nash equilibria");
  {
    auto game = std::make_shared<std::string>();
    auto common = std::make_shared<CommonOut>();
    c_nash->add_option("--game", *game, "Bundled game name or game file")
        ->required();
    add_out_options(c_nash, common.get());
    c_nash->callback([=, &run]() {
      run = [=]() {
        const Game g = load_game(*game);
        const auto solution =
            g.num_players() == 2 ? mixed_nash_bimatrix(g) : pure_nash(g);
        emit(io::nash_document(game_label(*game), g, solution), common->out,
             common->force);
      };
    });
  }

  // ----- mu-sweep -----
  auto* c_sweep = app.add_subcommand(
      "mu-sweep", "Trace weighted-rank fixed points over a weight exponent");
  {
    auto game = std::make_shared<std::string>();
    auto grid = std::make_shared<std::string>("0:5:0.5");
    auto common = std::make_shared<CommonOut>();
    c_sweep->add_option("--game", *game, "Bundled game name or game file")
        ->required();
    c_sweep->add_option("--rho", *grid, "Exponent grid start:end:step");
    add_out_options(c_sweep, common.get());
    c_sweep->callback([=, &run]() {
      run = [=]() {
        const Game g = load_game(*game);
        const MuSweep sweep = sweep_correspondence(g, parse_grid(*grid));
        emit(io::mu_sweep_document(game_label(*game), g, sweep), common->out,
             common->force);
      };
    });
  }

  // ----- qre-trace -----
  auto* c_qre = app.add_subcommand(
      "qre-trace", "Follow the principal logit quantal-response path");
  {
    auto game = std::make_shared<std::string>();
    auto steps = std::make_shared<int>(20);
    auto common = std::make_shared<CommonOut>();
    c_qre->add_option("--game", *game, "Bundled game name or game file")
        ->required();
    c_qre->add_option("--steps", *steps, "Geometric grid length")
        ->check(CLI::PositiveNumber);
    add_out_options(c_qre, common.get());
    c_qre->callback([=, &run]() {
      run = [=]() {
        const Game g = load_game(*game);
        const auto trace = logit_qre_trace(g, default_lambda_grid(*steps));
        const auto bound = logit_dominated_bound_check(g, trace);
        emit(io::qre_document(game_label(*game), g, trace, bound),
             common->out, common->force);
      };
    });
  }

  // ----- stability -----
  auto* c_stab = app.add_subcommand(
      "stability", "Perturb payoffs and test set membership of a profile");
  {
    auto game = std::make_shared<std::string>();
    auto profile = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(0.01);
    auto trials = std::make_shared<int>(1000);
    auto seed = std::make_shared<unsigned long long>();
    auto common = std::make_shared<CommonOut>();
    c_stab->add_option("--game", *game, "Bundled game name or game file")
        ->required();
    c_stab
        ->add_option("--profile", *profile,
                     "Rational profile, e.g. 1/2,1/2;1/3,2/3")
        ->required();
    c_stab->add_option("--eps", *eps, "Perturbation half-width");
    c_stab->add_option("--trials", *trials, "Perturbation draws")
        ->check(CLI::PositiveNumber);
    c_stab->add_option("--seed", *seed, "RNG seed")->required();
    add_out_options(c_stab, common.get());
    c_stab->callback([=, &run]() {
      run = [=]() {
        const Game g = load_game(*game);
        const auto prof = parse_profile(*profile);
        const auto report =
            behavioral_stability(g, prof, *eps, *trials, *seed);
        emit(io::stability_document(game_label(*game), prof, report, *eps,
                                    *trials, *seed),
             common->out, common->force);
      };
    });
  }

  // ----- elicit-sim -----
  auto* c_elicit = app.add_subcommand(
      "elicit-sim", "Simulate the belief-slider reward mechanism");
  {
    auto truth = std::make_shared<std::string>();
    auto prize = std::make_shared<double>(1.0);
    auto trials = std::make_shared<long>(100000);
    auto seed = std::make_shared<unsigned long long>();
    auto grid_step = std::make_shared<double>(0.001);
    auto common = std::make_shared<CommonOut>();
    c_elicit
        ->add_option("--truth", *truth,
                     "True beliefs, one block per opponent: 0.5,0.5;0.2,0.8")
        ->required();
    c_elicit->add_option("--prize", *prize, "Payment per winning slider");
    c_elicit->add_option("--trials", *trials, "Monte Carlo rounds")
        ->check(CLI::PositiveNumber);
    c_elicit->add_option("--seed", *seed, "RNG seed")->required();
    c_elicit->add_option("--grid-step", *grid_step,
                         "Report grid for the incentive check");
    add_out_options(c_elicit, common.get());
    c_elicit->callback([=, &run]() {
      run = [=]() {
        SliderReport rep;
        rep.truth = parse_profile_d(*truth);
        rep.report = rep.truth;
        rep.prize = *prize;
        const IcReport ic = verify_incentive_compatibility(rep, *grid_step);
        std::vector<double> rates;
        unsigned long long s = *seed;
        for (const auto& block : rep.truth) {
          for (Eigen::Index i = 0; i < block.size(); ++i) {
            rates.push_back(
                elicit_win_rate(block(i), block(i), *trials, s++));
          }
        }
        emit(io::elicit_document(rep, ic, *trials, *seed, rates),
             common->out, common->force);
      };
    });
  }

  // ----- cluster -----
  auto* c_cluster =
      app.add_subcommand("cluster", "K-means over stated beliefs");
  {
    auto data = std::make_shared<std::string>();
    auto k = std::make_shared<int>(0);
    auto k_max = std::make_shared<int>(15);
    auto restarts = std::make_shared<int>(200);
    auto seed = std::make_shared<unsigned long long>();
    auto common = std::make_shared<CommonOut>();
    c_cluster->add_option("--data", *data, "Observation file")->required();
    c_cluster->add_option("--k", *k, "Cluster count (0 = pick by elbow)");
    c_cluster->add_option("--k-max", *k_max, "Largest k for the elbow scan");
    c_cluster->add_option("--restarts", *restarts, "Seeded restarts")
        ->check(CLI::PositiveNumber);
    c_cluster->add_option("--seed", *seed, "RNG seed")->required();
    add_out_options(c_cluster, common.get());
    c_cluster->callback([=, &run]() {
      run = [=]() {
        const auto ingested = ingest(*data);
        if (ingested.observations.empty())
          throw ValidationError("no usable observations in " + *data);
        std::vector<VecD> points;
        for (const auto& obs : ingested.observations)
          points.push_back(obs.normalized_belief());
        std::optional<ElbowResult> curve;
        int kk = *k;
        if (kk == 0) {
          curve = elbow(points, 2, *k_max, *restarts, *seed);
          kk = curve->suggested_k;
        }
        const Clustering clustering = kmeans(points, kk, *restarts, *seed);
        emit(io::cluster_document(clustering,
                                  curve ? &*curve : nullptr, *seed),
             common->out, common->force);
      };
    });
  }

  // ----- classify -----
  auto* c_classify = app.add_subcommand(
      "classify", "Assign observed choices and beliefs to enumerated sets");
  {
    auto game = std::make_shared<std::string>();
    auto data = std::make_shared<std::string>();
    auto definition = std::make_shared<int>(2);
    auto common = std::make_shared<CommonOut>();
    c_classify->add_option("--game", *game, "Bundled game name or game file")
        ->required();
    c_classify->add_option("--data", *data, "Observation file")->required();
    c_classify->add_option("--definition", *definition,
                           "Boundary handling: 1 strict, 2 tolerant")
        ->check(CLI::IsMember({1, 2}));
    add_out_options(c_classify, common.get());
    c_classify->callback([=, &run]() {
      run = [=]() {
        const Game g = load_game(*game);
        const auto ingested = ingest(*data);
        MOptions o;
        o.definition = *definition;
        const MResult sets = enumerate_m_equilibria(g, o);
        const auto cls = classify_into_sets(g, ingested.observations, sets);
        const auto table = best_response_rate(g, ingested.observations);
        emit(io::classify_document(game_label(*game), sets, cls, table),
             common->out, common->force);
      };
    });
  }

  // ----- export-game -----
  auto* c_export = app.add_subcommand(
      "export-game", "Write a bundled game in the standard game file format");
  {
    auto game = std::make_shared<std::string>();
    auto common = std::make_shared<CommonOut>();
    c_export->add_option("--game", *game, "Bundled game name")->required();
    add_out_options(c_export, common.get());
    c_export->callback([=, &run]() {
      run = [=]() {
        emit(load_game(*game).to_json(), common->out, common->force);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    run();
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const ShapeError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
