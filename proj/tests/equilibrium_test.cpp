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


#include "qgame/equilibrium.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"

namespace qgame {
namespace {

using Profile = std::vector<std::size_t>;

const StrategySet& default_set() {
  static const StrategySet set = enumerate(GridSteps{});
  return set;
}

std::size_t index_of(const StrategySet& set, double theta, double free_phase) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& s = set[i].params;
    if (std::abs(s.theta - theta) > 1e-12) continue;
    const double v = theta == 0.0 ? s.phi : s.alpha;
    if (std::abs(detail::wrap_phase(v - free_phase)) < 1e-9 ||
        std::abs(detail::wrap_phase(v - free_phase) - kTwoPi) < 1e-9) {
      return i;
    }
  }
  return set.size();
}

std::set<Profile> profiles(const std::vector<EquilibriumRecord>& records) {
  std::set<Profile> out;
  for (const auto& r : records) out.insert(r.profile);
  return out;
}

bool has_offsets(const PhaseRelation& rel, const std::vector<double>& expected) {
  auto same = [&](const std::vector<double>& got) {
    if (got.size() != expected.size()) return false;
    for (std::size_t k = 0; k < got.size(); ++k)
      if (std::abs(got[k] - expected[k]) > 1e-9) return false;
    return true;
  };
  return (rel.difference_uniform && same(rel.difference_offsets)) || (rel.sum_uniform && same(rel.sum_offsets));
}

TEST(BestResponsesTest, ConstantPayoffTiesEverything) {
  const BestResponse br = best_responses(8, [](std::size_t) { return 3.0; }, 1e-9);
  EXPECT_EQ(br.indices.size(), 8U);
  EXPECT_EQ(br.value, 3.0);
  EXPECT_THROW(best_responses(0, [](std::size_t) { return 0.0; }, 1e-9), std::invalid_argument);
  EXPECT_THROW(best_responses(3, [](std::size_t) { return 0.0; }, -1.0), std::invalid_argument);
}

TEST(BestResponsesTest, TieToleranceIsAbsolute) {
  const std::vector<double> v{1.0, 1.0 - 5e-10, 1.0 - 2e-9};
  const BestResponse br = best_responses(v.size(), [&](std::size_t i) { return v[i]; }, 1e-9);
  EXPECT_EQ(br.indices, (std::vector<std::size_t>{0, 1}));
}

TEST(BestResponsesTest, PdAgainstDefectMatchesReevaluation) {
  const StrategySet& set = default_set();
  const TwoPlayerGame pd = builtin_pd();
  const std::size_t opp = index_of(set, kPi, 0.0);
  const TwoPlayerCircuit circuit(EntanglerAngle(1.0));
  const BestResponse br = best_responses(
      set, [&](std::size_t b) { return payoff_expectation(circuit.probabilities(set[opp].matrix, set[b].matrix), pd.payoff_b); },
      1e-9);
  double best = -1e9;
  std::vector<double> vals;
  for (const auto& s : set) {
    const auto pr = testing::oracle_probabilities(
        testing::oracle_two_player(1.0, to_dense(set[opp].matrix), to_dense(s.matrix)));
    vals.push_back(testing::dot(pr, pd.payoff_b));
    best = std::max(best, vals.back());
  }
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] >= best - 1e-9) expected.push_back(i);
  EXPECT_NEAR(br.value, best, 1e-12);
  EXPECT_EQ(br.indices, expected);
}

TEST(TwoPlayerNeTest, PdWithoutEntanglement) {
  const auto classes = classify(find_ne_two_player(builtin_pd(), EntanglerAngle(0), default_set()), default_set());
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_EQ(classes[0].theta_profile, (std::vector<double>{kPi, kPi}));
  EXPECT_NEAR(classes[0].payoffs[0], 6, 1e-12);
  EXPECT_NEAR(classes[0].payoffs[1], 6, 1e-12);
}

TEST(TwoPlayerNeTest, PdStrongEntanglementHasNone) {
  EXPECT_TRUE(find_ne_two_player(builtin_pd(), EntanglerAngle(1.3), default_set()).empty());
}

TEST(TwoPlayerNeTest, DaHasTwoClassesAtOne) {
  const auto classes = classify(find_ne_two_player(builtin_da(), EntanglerAngle(1.0), default_set()), default_set());
  ASSERT_EQ(classes.size(), 2U);
  EXPECT_EQ(classes[0].theta_profile, (std::vector<double>{0, 0}));
  EXPECT_NEAR(classes[0].payoffs[0], 11, 1e-9);
  EXPECT_NEAR(classes[0].payoffs[1], 9, 1e-9);
  EXPECT_EQ(classes[1].theta_profile, (std::vector<double>{kPi, kPi}));
  EXPECT_LT(classes[1].payoffs[0], 11);
  EXPECT_LT(classes[1].payoffs[1], 9);
}

TEST(TwoPlayerNeTest, OracleEquivalence) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> gamma(0, kPi / 2);
  for (int i = 0; i < 10; ++i) {
    const double g = gamma(rng);
    for (const TwoPlayerGame& game : {builtin_pd(), builtin_da()}) {
      const auto fast = find_ne_two_player(game, EntanglerAngle(g), default_set());
      EXPECT_EQ(profiles(fast), testing::oracle_two_player_ne(game, g, default_set(), 1e-9)) << game.name << " " << g;
    }
  }
}

TEST(BayesianNeTest, NoEquilibriumInGap) {
  EXPECT_TRUE(find_ne_bayesian(builtin_bayesian(0.5), EntanglerAngle(0.3), default_set()).empty());
}

TEST(BayesianNeTest, ClassicalLowP) {
  const auto classes = classify(find_ne_bayesian(builtin_bayesian(0.1), EntanglerAngle(0), default_set()),
                                default_set());
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_EQ(classes[0].theta_profile, (std::vector<double>{0, kPi, 0}));
  EXPECT_NEAR(classes[0].payoffs[0], 10, 1e-9);
  EXPECT_NEAR(classes[0].payoffs[1], 10, 1e-9);
  EXPECT_NEAR(classes[0].payoffs[2], 9, 1e-9);
}

TEST(BayesianNeTest, FirstRegion) {
  const auto classes = classify(find_ne_bayesian(builtin_bayesian(0.9), EntanglerAngle(0.3), default_set()),
                                default_set());
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_EQ(classes[0].theta_profile, (std::vector<double>{kPi, kPi, 0}));
}

TEST(BayesianNeTest, OracleEquivalenceAtRandomPoints) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_real_distribution<double> gamma(0, kPi / 2);
  for (int i = 0; i < 20; ++i) {
    const double p = unit(rng);
    const double g = gamma(rng);
    const BayesianGame game = builtin_bayesian(p);
    const auto fast = find_ne_bayesian(game, EntanglerAngle(g), default_set());
    EXPECT_EQ(profiles(fast), testing::oracle_bayesian_ne(game, g, default_set(), 1e-9)) << "p=" << p << " gamma=" << g;
  }
}

TEST(BayesianNeTest, FullCircuitAgreesWithMixture) {
  for (const auto& [p, g] : std::vector<std::pair<double, double>>{{0.9, 0.3}, {0.1, 1.0}, {0.05, 1.3}, {0.5, 0.8}}) {
    const BayesianGame game = builtin_bayesian(p);
    const auto mix = find_ne_bayesian(game, EntanglerAngle(g), default_set());
    const auto full = find_ne_bayesian_circuit(game, ControlSpec::from_probability(p, 1.1, 0.4), EntanglerAngle(g),
                                               default_set());
    EXPECT_EQ(profiles(mix), profiles(full)) << p << " " << g;
  }
}

TEST(BayesianNeTest, ThreadCountDoesNotChangeResult) {
  const BayesianGame game = builtin_bayesian(0.3);
  const auto one = find_ne_bayesian(game, EntanglerAngle(0.9), default_set(), kDefaultEpsTie, 1);
  const auto many = find_ne_bayesian(game, EntanglerAngle(0.9), default_set(), kDefaultEpsTie, 4);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].profile, many[i].profile);
    EXPECT_EQ(one[i].payoffs, many[i].payoffs);
  }
}

TEST(VerifyNeTest, AcceptsFinderOutput) {
  for (double p : {0.05, 0.5, 0.9}) {
    for (double g : {0.0, 0.3, 0.8, 1.3}) {
      const BayesianGame game = builtin_bayesian(p);
      for (const auto& r : find_ne_bayesian(game, EntanglerAngle(g), default_set())) {
        EXPECT_TRUE(verify_ne(r, game, EntanglerAngle(g), default_set()));
      }
    }
  }
}

TEST(VerifyNeTest, RejectsPerturbedProfile) {
  const BayesianGame game = builtin_bayesian(0.9);
  const auto records = find_ne_bayesian(game, EntanglerAngle(0.3), default_set());
  ASSERT_FALSE(records.empty());
  EquilibriumRecord bad = records.front();
  bad.profile[0] = index_of(default_set(), 0.0, 0.0);
  EXPECT_FALSE(verify_ne(bad, game, EntanglerAngle(0.3), default_set()));
}

TEST(VerifyNeTest, RejectsClassicalCooperation) {
  const std::size_t c = index_of(default_set(), 0.0, 0.0);
  const EquilibriumRecord cc{{c, c}, {11, 9}};
  EXPECT_FALSE(verify_ne(cc, builtin_pd(), EntanglerAngle(0), default_set()));
  EXPECT_FALSE(verify_ne(EquilibriumRecord{{c}, {}}, builtin_pd(), EntanglerAngle(0), default_set()));
  EXPECT_FALSE(verify_ne(EquilibriumRecord{{c, 99}, {}}, builtin_pd(), EntanglerAngle(0), default_set()));
}

TEST(ClassifyTest, PdPhaseRelationAndLabel) {
  const auto classes = classify(find_ne_two_player(builtin_pd(), EntanglerAngle(0.5), default_set()), default_set());
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_EQ(class_id(classes[0].theta_profile), "1:1");
  ASSERT_EQ(classes[0].phase_relations.size(), 1U);
  EXPECT_TRUE(has_offsets(classes[0].phase_relations[0], {kPi / 2, 3 * kPi / 2}));
  EXPECT_EQ(classes[0].operator_label.value_or(""), "Y⊗X");
}

TEST(ClassifyTest, SecondBayesianClass) {
  const auto classes = classify(find_ne_bayesian(builtin_bayesian(0.1), EntanglerAngle(0.7), default_set()),
                                default_set());
  const auto it = std::find_if(classes.begin(), classes.end(),
                               [](const EquilibriumClass& c) { return class_id(c.theta_profile) == "0:1:0"; });
  ASSERT_NE(it, classes.end());
  EXPECT_EQ(it->operator_label.value_or(""), "I⊗Y⊗I");
  for (const auto& rel : it->phase_relations) {
    if (rel.first == 0) {
      EXPECT_TRUE(has_offsets(rel, {0, kPi}));
    }
  }
}

TEST(ClassifyTest, SingletonHasNoRelations) {
  const std::size_t c = index_of(default_set(), 0.0, 0.0);
  const auto classes = classify({EquilibriumRecord{{c, c}, {11, 9}}}, default_set());
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_EQ(classes[0].members.size(), 1U);
  EXPECT_TRUE(classes[0].phase_relations.empty());
}

TEST(ClassifyTest, SplitsByPayoff) {
  const std::size_t c = index_of(default_set(), 0.0, 0.0);
  const std::size_t z = index_of(default_set(), 0.0, kPi / 2);
  const auto classes = classify({EquilibriumRecord{{c, c}, {1, 1}}, EquilibriumRecord{{z, z}, {2, 1}}}, default_set());
  EXPECT_EQ(classes.size(), 2U);
  EXPECT_TRUE(classify({}, default_set()).empty());
}

// Every reported class is closed under its own phase relations: shifting one
// player's free phase to another allowed offset from A's yields a member, and
// A's free phase takes every grid value.
TEST(ClassifyProperty, PhaseClassClosure) {
  const StrategySet& set = default_set();
  const std::vector<double> grid_phases{0, kPi / 2, kPi, 3 * kPi / 2};
  for (double p : {0.05, 0.3, 0.9}) {
    for (double g : {0.0, 0.3, 0.8, 1.3, kPi / 2}) {
      for (const auto& cls : classify(find_ne_bayesian(builtin_bayesian(p), EntanglerAngle(g), set), set)) {
        if (cls.members.size() < 2) continue;
        std::set<Profile> members;
        for (const auto& m : cls.members) members.insert(m.profile);
        std::set<double> anchors;
        for (const auto& m : cls.members) anchors.insert(std::round(*detail::free_phase(set[m.profile[0]].params) * 1e6));
        EXPECT_EQ(anchors.size(), grid_phases.size());
        for (const auto& rel : cls.phase_relations) {
          if (rel.first != 0) continue;
          const bool use_diff = rel.difference_uniform;
          if (!use_diff && !rel.sum_uniform) continue;
          const auto& offsets = use_diff ? rel.difference_offsets : rel.sum_offsets;
          for (const auto& m : cls.members) {
            const double anchor = *detail::free_phase(set[m.profile[0]].params);
            for (double off : offsets) {
              Profile sibling = m.profile;
              const double target = use_diff ? anchor + off : off - anchor;
              sibling[rel.second] = index_of(set, cls.theta_profile[rel.second], detail::wrap_phase(target));
              EXPECT_TRUE(members.count(sibling)) << "p=" << p << " g=" << g << " class " << class_id(cls.theta_profile);
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace qgame
