// Copyright 2026 The qgame Authors
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


#include "qgame/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qgame {
namespace {

const char* kBuiltinJson = R"({
  "game": "bayesian",
  "payoffs": {
    "A_vs_B1": {"A": [11, 1, 10, 6], "B": [9, 10, 1, 6]},
    "A_vs_B2": {"A": [11, 1, 10, 6], "B": [9, 6, 1, 0]}
  }
})";

std::string expect_config_error(const std::string& text) {
  try {
    game_from_json(Json::parse(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no ConfigError for " << text;
  return {};
}

SweepResult small_sweep() {
  SweepSpec spec;
  spec.p_values = {0.0, 0.5, 0.9};
  spec.gamma_values = {0.0, 0.3, 1.0};
  return run_sweep(spec);
}

TEST(GameJsonTest, BuiltinEquivalent) {
  const GameVariant g = game_from_json(Json::parse(kBuiltinJson));
  ASSERT_TRUE(std::holds_alternative<BayesianGame>(g));
  EXPECT_EQ(std::get<BayesianGame>(g), builtin_bayesian(0.5));
}

TEST(GameJsonTest, SchemaErrorsNameTheField) {
  EXPECT_NE(expect_config_error(R"({"game": "two-player", "payoffs": {"A_vs_B1": {"A": [1, 2, 3], "B": [1, 2, 3, 4]}}})")
                .find("payoffs.A_vs_B1.A"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"game": "bayesian", "payoffs": {"A_vs_B1": {"A": [1, 2, 3, 4], "B": [1, 2, 3, 4]}}})")
                .find("A_vs_B2"),
            std::string::npos);
  expect_config_error(R"({"payoffs": {}})");
  expect_config_error(R"({"game": "three-player", "payoffs": {}})");
  expect_config_error(R"({"game": "two-player", "payoffs": {"A_vs_B1": {"A": [1, 2, "x", 4], "B": [1, 2, 3, 4]}}})");
  expect_config_error(R"({"game": "bayesian", "p": 2.0, "payoffs": {"A_vs_B1": {"A": [1, 2, 3, 4], "B": [1, 2, 3, 4]},
                         "A_vs_B2": {"A": [1, 2, 3, 4], "B": [1, 2, 3, 4]}}})");
}

TEST(GameJsonTest, RoundTrip) {
  for (const GameVariant& g : {GameVariant(builtin_pd()), GameVariant(builtin_bayesian(0.25))}) {
    EXPECT_EQ(game_from_json(game_to_json(g)), g);
  }
}

TEST(GameJsonTest, SampleFiles) {
  const GameVariant bayes = load_game(std::string(QGAME_SAMPLES_DIR) + "/bayesian_game.json");
  EXPECT_EQ(bayes, GameVariant(builtin_bayesian(0.8)));
  const GameVariant two = load_game(std::string(QGAME_SAMPLES_DIR) + "/two_player_game.json");
  EXPECT_EQ(two, GameVariant(builtin_pd()));
  EXPECT_THROW(load_game("/nonexistent/game.json"), ConfigError);
}

TEST(ResultJsonTest, RoundTripIsByteIdentical) {
  const SweepResult r = small_sweep();
  const std::string first = result_to_json(r).dump(2);
  const std::string second = result_to_json(result_from_json(Json::parse(first))).dump(2);
  EXPECT_EQ(first, second);
}

TEST(ResultJsonTest, TwoPlayerAndFullCircuitRoundTrip) {
  SweepSpec spec;
  spec.game = builtin_da();
  spec.gamma_values = {0.0, 1.0};
  const std::string a = result_to_json(run_sweep(spec)).dump(2);
  EXPECT_EQ(result_to_json(result_from_json(Json::parse(a))).dump(2), a);

  SweepSpec full;
  full.p_values = {0.3};
  full.gamma_values = {0.8};
  full.circuit = CircuitMode::kFull;
  full.phi_q = 1.1;
  const std::string b = result_to_json(run_sweep(full)).dump(2);
  EXPECT_EQ(result_to_json(result_from_json(Json::parse(b))).dump(2), b);
}

TEST(ResultJsonTest, IndependentOfThreadCount) {
  SweepSpec spec;
  spec.p_values = default_p_grid(0.1);
  spec.gamma_values = default_gamma_grid(0.1);
  spec.threads = 1;
  const std::string one = result_to_json(run_sweep(spec)).dump(2);
  spec.threads = 4;
  EXPECT_EQ(result_to_json(run_sweep(spec)).dump(2), one);
}

TEST(ResultJsonTest, MalformedResult) {
  EXPECT_THROW(result_from_json(Json::parse(R"({"kind": "bayesian"})")), ConfigError);
  Json j = result_to_json(small_sweep());
  j["kind"] = "two-player";
  EXPECT_THROW(result_from_json(j), ConfigError);
}

TEST(CsvTest, EmptyCellGivesNoneRow) {
  SweepSpec spec;
  spec.p_values = {0.5};
  spec.gamma_values = {0.3};
  std::ostringstream out;
  write_csv(run_sweep(spec), out);
  EXPECT_EQ(out.str(),
            "p,gamma,class_id,theta_A,theta_B1,theta_B2,payoff_A,payoff_B1,payoff_B2,n_profiles\n"
            "0.5,0.3,NONE,,,,,,,0\n");
}

TEST(CsvTest, TwoPlayerRows) {
  SweepSpec spec;
  spec.game = builtin_pd();
  spec.gamma_values = {0.0, 1.3};
  std::ostringstream out;
  write_csv(run_sweep(spec), out);
  EXPECT_EQ(out.str(),
            "gamma,payoff_A,payoff_B,class_id,theta_A,theta_B,n_profiles\n"
            "0,6,6,1:1,3.14159265,3.14159265,16\n"
            "1.3,,,NONE,,,0\n");
}

TEST(WriteOutputTest, FileAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "qgame_io_test.csv";
  std::ostringstream unused;
  emit(small_sweep(), Format::kCsv, path.string(), unused);
  EXPECT_TRUE(unused.str().empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("p,gamma,", 0), 0U);
  std::filesystem::remove(path);
  EXPECT_THROW(emit(small_sweep(), Format::kJson, "/nonexistent/dir/out.json", unused), IoError);
}

TEST(RegionsTest, JsonAndCsv) {
  const auto regions = summarize_regions(small_sweep());
  const Json j = regions_to_json(regions);
  ASSERT_EQ(j.size(), regions.size());
  std::ostringstream csv;
  write_regions_csv(regions, csv);
  EXPECT_EQ(csv.str().rfind("class_id,p_min,p_max,gamma_min,gamma_max,n_cells,operator_labels\n", 0), 0U);
}

}  // namespace
}  // namespace qgame
