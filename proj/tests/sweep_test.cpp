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


#include "qgame/sweep.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace qgame {
namespace {

using Profile = std::vector<std::size_t>;

SweepResult default_bayesian_sweep(unsigned threads = 1) {
  SweepSpec spec;
  spec.p_values = default_p_grid();
  spec.gamma_values = default_gamma_grid();
  spec.threads = threads;
  return run_sweep(spec);
}

const SweepResult& cached_sweep() {
  static const SweepResult r = default_bayesian_sweep();
  return r;
}

const EquilibriumClass* find_class(const SweepCell& cell, const std::string& id) {
  for (const auto& c : cell.classes)
    if (class_id(c.theta_profile) == id) return &c;
  return nullptr;
}

TEST(UniformGridTest, DefaultGrids) {
  const auto p = default_p_grid();
  ASSERT_EQ(p.size(), 21U);
  EXPECT_EQ(p.front(), 0.0);
  EXPECT_EQ(p.back(), 1.0);
  const auto g = default_gamma_grid();
  ASSERT_EQ(g.size(), 32U);
  EXPECT_NEAR(g[30], 1.5, 1e-12);
  EXPECT_EQ(g.back(), kPi / 2);
  EXPECT_THROW(uniform_grid(1.0, 0.0), std::invalid_argument);
}

TEST(SweepSpecTest, Validation) {
  SweepSpec spec;
  spec.p_values = {0.0, 0.5};
  spec.gamma_values = {};
  EXPECT_THROW(validate(spec), std::invalid_argument);
  spec.gamma_values = {0.0, 2.0};
  EXPECT_THROW(validate(spec), std::out_of_range);
  spec.gamma_values = {0.5, 0.1};
  EXPECT_THROW(validate(spec), std::invalid_argument);
  spec.gamma_values = {0.1};
  spec.p_values = {1.5};
  EXPECT_THROW(validate(spec), std::out_of_range);
  spec.game = builtin_pd();
  EXPECT_NO_THROW(validate(spec));  // p ignored for two-player games
  spec.eps_tie = -1;
  EXPECT_THROW(validate(spec), std::invalid_argument);
}

TEST(SweepTest, CellLayoutIsGammaMajor) {
  const SweepResult& r = cached_sweep();
  ASSERT_EQ(r.cells.size(), 21U * 32U);
  EXPECT_EQ(r.cells[0].p, 0.0);
  EXPECT_EQ(r.cells[20].p, 1.0);
  EXPECT_EQ(r.cells[21].p, 0.0);
  EXPECT_NEAR(r.cells[21].gamma, 0.05, 1e-15);
}

TEST(SweepTest, ThreadCountDoesNotChangeResult) {
  const SweepResult& one = cached_sweep();
  const SweepResult many = default_bayesian_sweep(4);
  ASSERT_EQ(one.cells.size(), many.cells.size());
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    ASSERT_EQ(one.cells[i].classes.size(), many.cells[i].classes.size());
    for (std::size_t k = 0; k < one.cells[i].classes.size(); ++k) {
      const auto& a = one.cells[i].classes[k];
      const auto& b = many.cells[i].classes[k];
      EXPECT_EQ(a.theta_profile, b.theta_profile);
      EXPECT_EQ(a.payoffs, b.payoffs);
      ASSERT_EQ(a.members.size(), b.members.size());
      for (std::size_t m = 0; m < a.members.size(); ++m) EXPECT_EQ(a.members[m].profile, b.members[m].profile);
    }
  }
}

std::set<Profile> project(const SweepCell& cell, std::size_t other) {
  std::set<Profile> out;
  for (const auto& c : cell.classes)
    for (const auto& m : c.members) out.insert({m.profile[0], m.profile[other]});
  return out;
}

std::set<Profile> two_player_profiles(const SweepCell& cell) {
  std::set<Profile> out;
  for (const auto& c : cell.classes)
    for (const auto& m : c.members) out.insert(m.profile);
  return out;
}

// At p = 1 A ignores B2, so the (A, B1) projection is the PD equilibrium
// set; at p = 0 the (A, B2) projection is the DA set.
TEST(SweepInvariant, EdgeColumnsMatchTwoPlayerSweeps) {
  const SweepResult& bayes = cached_sweep();
  for (const auto& [game, column, other] :
       std::vector<std::tuple<TwoPlayerGame, std::size_t, std::size_t>>{{builtin_pd(), 20, 1}, {builtin_da(), 0, 2}}) {
    SweepSpec spec;
    spec.game = game;
    spec.gamma_values = default_gamma_grid();
    const SweepResult two = run_sweep(spec);
    ASSERT_EQ(two.cells.size(), 32U);
    for (std::size_t gi = 0; gi < 32; ++gi) {
      EXPECT_EQ(project(bayes.cells[gi * 21 + column], other), two_player_profiles(two.cells[gi]))
          << game.name << " gamma=" << two.cells[gi].gamma;
    }
  }
}

// E1 and E2 keep B payoffs fixed in p and A's payoff affine in p.
TEST(SweepInvariant, FirstAndSecondClassesAffineInP) {
  const SweepResult& r = cached_sweep();
  for (const std::string id : {"1:1:0", "0:1:0"}) {
    for (std::size_t gi = 0; gi < 32; ++gi) {
      std::vector<std::pair<double, const EquilibriumClass*>> seen;
      for (std::size_t pi = 0; pi < 21; ++pi) {
        const SweepCell& cell = r.cells[gi * 21 + pi];
        if (const auto* c = find_class(cell, id)) seen.emplace_back(cell.p, c);
      }
      if (seen.size() < 3) continue;
      const auto& [p0, c0] = seen.front();
      const auto& [p1, c1] = seen.back();
      const double slope = (c1->payoffs[0] - c0->payoffs[0]) / (p1 - p0);
      for (const auto& [p, c] : seen) {
        EXPECT_NEAR(c->payoffs[0], c0->payoffs[0] + slope * (p - p0), 1e-9) << id;
        EXPECT_NEAR(c->payoffs[1], c0->payoffs[1], 1e-9);
        EXPECT_NEAR(c->payoffs[2], c0->payoffs[2], 1e-9);
      }
    }
  }
}

TEST(SummarizeRegionsTest, Ranges) {
  const auto regions = summarize_regions(cached_sweep());
  auto find = [&](const std::string& id) {
    return std::find_if(regions.begin(), regions.end(), [&](const RegionSummary& s) { return s.class_id == id; });
  };
  const auto third = find("1:1:1");
  ASSERT_NE(third, regions.end());
  EXPECT_EQ(third->p_min, 0.0);
  EXPECT_EQ(third->p_max, 1.0);
  EXPECT_NEAR(third->gamma_min, 0.55, 0.05 + 1e-9);
  EXPECT_NEAR(third->gamma_max, 1.1, 0.05 + 1e-9);
  EXPECT_TRUE(third->operator_labels.count("Y⊗X⊗X"));
  const auto second = find("0:1:0");
  ASSERT_NE(second, regions.end());
  EXPECT_EQ(second->gamma_min, 0.0);
  EXPECT_EQ(second->gamma_max, kPi / 2);
}

TEST(SummarizeRegionsTest, EmptyResult) {
  SweepResult empty;
  EXPECT_TRUE(summarize_regions(empty).empty());
}

TEST(SweepTest, FullCircuitModeMatchesMixture) {
  SweepSpec spec;
  spec.p_values = {0.0, 0.1, 0.5, 0.9, 1.0};
  spec.gamma_values = {0.0, 0.6, 1.3};
  const SweepResult mix = run_sweep(spec);
  spec.circuit = CircuitMode::kFull;
  spec.phi_q = 1.1;
  spec.alpha_q = 1.1;
  const SweepResult full = run_sweep(spec);
  ASSERT_EQ(mix.cells.size(), full.cells.size());
  for (std::size_t i = 0; i < mix.cells.size(); ++i) {
    ASSERT_EQ(mix.cells[i].classes.size(), full.cells[i].classes.size()) << i;
    for (std::size_t k = 0; k < mix.cells[i].classes.size(); ++k) {
      EXPECT_EQ(mix.cells[i].classes[k].theta_profile, full.cells[i].classes[k].theta_profile);
      EXPECT_EQ(mix.cells[i].classes[k].members.size(), full.cells[i].classes[k].members.size());
    }
  }
}

}  // namespace
}  // namespace qgame
