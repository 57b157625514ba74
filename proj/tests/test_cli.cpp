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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "meq/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MEQ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args) {
  const RunResult r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  return json::parse(r.out);
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("msets document for a 2x2 coordination game") {
  const json doc = run_json("msets --game coord");
  CHECK(doc["command"] == "msets");
  CHECK(doc["mode"] == "exact");
  REQUIRE(doc["sets"].size() == 2);
  for (const auto& set : doc["sets"]) {
    CHECK(set["colorable"] == true);
    CHECK(set["dimension"] == 2);
    CHECK(set["components"][0]["cells"][0].contains("plot_rect"));
  }
  // Measures 1/4 and 1/9 in pattern order (-1 first).
  CHECK(doc["sets"][0]["measure"] == "1/4");
  CHECK(doc["sets"][1]["measure"] == "1/9");
  CHECK(doc["sets"][0]["beliefs"]["measure"] == "4/9");
  CHECK(doc["sets"][1]["beliefs"]["measure"] == "1/9");
  // Three Nash markers; the pure ones sit on exactly one set each.
  REQUIRE(doc["nash_markers"].size() == 3);
}

TEST_CASE("msets on the symmetric diagonal emits ternary plot data") {
  const json doc = run_json("msets --game mondrian --symmetric");
  CHECK(doc["diagonal"] == true);
  CHECK(doc["factors"] == 1);
  int colorable = 0;
  bool saw_ternary = false;
  for (const auto& set : doc["sets"]) {
    if (set["colorable"] == true) {
      colorable += 1;
      const auto& cells = set["components"][0]["cells"];
      for (const auto& cell : cells) {
        for (const auto& f : cell["factors"]) {
          if (f.contains("plot_ternary")) saw_ternary = true;
          if (f["dimension"] == 2) CHECK(f.contains("halfplanes"));
        }
      }
    }
  }
  CHECK(colorable == 3);
  CHECK(saw_ternary);
}

TEST_CASE("sampled mode echoes the seed and is byte-identical per seed") {
  const std::string args =
      "msets --game three_player --mode sampled --samples 20000 --seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["seed"] == 7);
  CHECK(doc["samples"] == 20000);
  for (const auto& set : doc["sets"]) CHECK(set.contains("measure_estimate"));

  const RunResult c = run_cli(
      "msets --game three_player --mode sampled --samples 20000 --seed 8");
  CHECK(c.out != a.out);
}

TEST_CASE("exit codes: capability 2, validation 3") {
  CHECK(run_cli("msets --game three_player --mode exact").exit_code == 2);
  CHECK(run_cli("msets --game three_player --mode sampled").exit_code == 3);
  CHECK(run_cli("msets --game no_such_game").exit_code == 3);
  CHECK(run_cli("msets").exit_code == 3);            // missing --game
  CHECK(run_cli("mu-sweep --game chicken --rho 5:0:1").exit_code == 3);
  CHECK(run_cli("no-such-command").exit_code == 3);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("game files load the same as bundled names") {
  const fs::path file = fs::path(MEQ_FIXTURE_DIR) / "coord.json";
  REQUIRE(fs::exists(file));
  const json from_file = run_json("msets --game " + file.string());
  const json from_name = run_json("msets --game coord");
  CHECK(from_file == from_name);
}

TEST_CASE("output files are never overwritten without --force") {
  const fs::path out = temp_file("meq_cli_out_test.json");
  std::error_code ec;
  fs::remove(out, ec);
  CHECK(run_cli("nash --game coord --out " + out.string()).exit_code == 0);
  REQUIRE(fs::exists(out));
  CHECK(run_cli("nash --game coord --out " + out.string()).exit_code == 3);
  CHECK(run_cli("nash --game coord --out " + out.string() + " --force")
            .exit_code == 0);
  // The written file parses and round-trips to the stdout document.
  std::ifstream in(out);
  const json written = json::parse(in);
  CHECK(written == run_json("nash --game coord"));
  fs::remove(out, ec);
}

TEST_CASE("nash on the asymmetric matching-pennies instance amp3") {
  const json doc = run_json("nash --game amp3");
  REQUIRE(doc["equilibria"].size() == 1);
  const auto& eq = doc["equilibria"][0];
  CHECK(eq["kind"] == "mixed");
  // (p, q) convention: p = column player's first-action probability.
  CHECK(eq["pq"][0].get<double>() == doctest::Approx(0.5));
  CHECK(eq["pq"][1].get<double>() == doctest::Approx(1.0 / 6.0));
  CHECK(eq["profile"][0][0] == "1/6");
  CHECK(eq["profile"][1][0] == "1/2");
}

TEST_CASE("mu-sweep reports branch events near the tie exponents") {
  const json doc = run_json("mu-sweep --game chicken --rho 0:5:0.1");
  CHECK(doc["branches"].get<int>() >= 3);
  CHECK(doc["principal_branch"].get<int>() >= 0);
  bool near2 = false, near3 = false;
  for (const auto& ev : doc["events"]) {
    const double rho = ev["rho"].get<double>();
    if (std::abs(rho - 2.0) <= 0.1001) near2 = true;
    if (std::abs(rho - 3.0) <= 0.1001) near3 = true;
  }
  CHECK(near2);
  CHECK(near3);
  CHECK(doc["plot_polylines"].size() == doc["branches"].get<std::size_t>());
}

TEST_CASE("qre-trace keeps a mixture-dominated action under one third") {
  const json doc = run_json("qre-trace --game ds_mid");
  REQUIRE(doc["dominated_bound"]["applicable"] == true);
  CHECK(doc["dominated_bound"]["holds"] == true);
  double max_p = 0;
  for (const auto& pt : doc["points"]) {
    max_p = std::max(max_p, pt["profile"][0][0].get<double>());
    CHECK(pt["residual"].get<double>() <= 1e-10);
  }
  CHECK(max_p <= 1.0 / 3.0 + 1e-12);
}

TEST_CASE("stability verdicts for an interior point and the uniform profile") {
  const json inside = run_json(
      "stability --game coord --profile '1/4,3/4;1/4,3/4' --eps 0.01 "
      "--trials 200 --seed 5");
  CHECK(inside["stable"] == true);
  const json pennies = run_json(
      "stability --game matching_pennies --profile '1/2,1/2;1/2,1/2' "
      "--eps 0.01 --trials 200 --seed 5");
  CHECK(pennies["stable"] == true);
  CHECK(pennies["seed"] == 5);
}

TEST_CASE("elicit-sim is reproducible and reports the incentive check") {
  const std::string args =
      "elicit-sim --truth 0.5,0.5 --trials 20000 --seed 11";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["incentive_check"]["incentive_compatible"] == true);
  REQUIRE(doc["win_rates"].size() == 2);
  CHECK(doc["win_rates"][0].get<double>() == doctest::Approx(0.75).epsilon(0.02));
  CHECK(run_cli("elicit-sim --truth 0.5,0.5 --trials 100").exit_code == 3);
}

TEST_CASE("cluster and classify run on a synthesized observation file") {
  const meq::Game game = meq::fixtures::load("coord");
  meq::fixtures::SynthSpec spec;
  spec.n_subjects = 10;
  spec.rounds = 6;
  spec.belief_lo = {0.75, 0.05};
  spec.belief_hi = {0.95, 0.25};
  spec.best_response_rate = 1.0;
  spec.seed = 99;
  spec.game_id = "coord";
  const fs::path data = temp_file("meq_cli_synth.csv");
  {
    std::ofstream f(data);
    f << meq::fixtures::synth_dataset(game, spec);
  }

  const json cl =
      run_json("cluster --data " + data.string() + " --k 2 --seed 3");
  CHECK(cl["k"] == 2);
  CHECK(cl["clusters"].size() == 2);
  long total = 0;
  for (const auto& c : cl["clusters"]) total += c["count"].get<long>();
  CHECK(total == 60);
  const RunResult again =
      run_cli("cluster --data " + data.string() + " --k 2 --seed 3");
  CHECK(json::parse(again.out) == cl);

  const json cls =
      run_json("classify --game coord --data " + data.string());
  CHECK(cls["observations"] == 60);
  CHECK(cls["best_response"]["overall"].get<double>() == doctest::Approx(1.0));
  // Beliefs put at least 3/4 on the first action, so they land in the
  // first-action coordination set (index 1, the strictly-positive pattern).
  CHECK(cls["belief_fraction"][1].get<double>() > 0.99);
  std::error_code ec;
  fs::remove(data, ec);
}
