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

#ifndef QGAME_GAME_HPP_
#define QGAME_GAME_HPP_

// Payoff data for the asymmetric prisoner's dilemma, the DA's-brother
// variant, and the three-player Bayesian game built from the two, plus the
// classical pure-strategy equilibria used as baselines.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgame {

// Payoff per measurement outcome, in basis order |00>, |01>, |10>, |11>
// with player A's qubit written first.
class PayoffSpec {
 public:
  PayoffSpec() = default;
  PayoffSpec(double v00, double v01, double v10, double v11) : values_{v00, v01, v10, v11} {
    validate();
  }
  explicit PayoffSpec(std::span<const double> values) {
    if (values.size() != 4) throw std::invalid_argument("PayoffSpec: expected 4 values");
    std::copy(values.begin(), values.end(), values_.begin());
    validate();
  }

  double operator[](std::size_t outcome) const { return values_[outcome]; }
  const std::array<double, 4>& values() const { return values_; }
  double min() const { return *std::min_element(values_.begin(), values_.end()); }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }

  // Payoff when A's qubit reads `a` and B's reads `b` (0 = C, 1 = D).
  double at(int a, int b) const { return values_[static_cast<std::size_t>(2 * a + b)]; }

  friend bool operator==(const PayoffSpec&, const PayoffSpec&) = default;

 private:
  void validate() const {
    for (double v : values_) {
      if (!std::isfinite(v)) throw std::invalid_argument("PayoffSpec: non-finite payoff");
    }
  }

  std::array<double, 4> values_{};
};

struct TwoPlayerGame {
  std::string name;
  PayoffSpec payoff_a;
  PayoffSpec payoff_b;

  friend bool operator==(const TwoPlayerGame&, const TwoPlayerGame&) = default;
};

// A faces type B1 with probability p and type B2 with probability 1 - p.
struct BayesianGame {
  TwoPlayerGame subgame_b1;
  TwoPlayerGame subgame_b2;
  double p = 0.5;

  friend bool operator==(const BayesianGame&, const BayesianGame&) = default;
};

inline void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::out_of_range(std::string(who) + ": probability must lie in [0, 1]");
  }
}

inline TwoPlayerGame builtin_pd() {
  return {"pd", PayoffSpec(11, 1, 10, 6), PayoffSpec(9, 10, 1, 6)};
}

inline TwoPlayerGame builtin_da() {
  return {"da", PayoffSpec(11, 1, 10, 6), PayoffSpec(9, 6, 1, 0)};
}

inline BayesianGame builtin_bayesian(double p) {
  check_probability(p, "builtin_bayesian");
  return {builtin_pd(), builtin_da(), p};
}

inline BayesianGame with_probability(BayesianGame game, double p) {
  check_probability(p, "with_probability");
  game.p = p;
  return game;
}

enum class Action { kCooperate = 0, kDefect = 1 };

inline char action_symbol(Action a) { return a == Action::kCooperate ? 'C' : 'D'; }

struct ClassicalOutcome {
  std::vector<Action> actions;  // one per player
  std::vector<double> payoffs;  // one per player

  friend bool operator==(const ClassicalOutcome&, const ClassicalOutcome&) = default;
};

// Pure profiles over {C, D}^2 where neither player gains by deviating.
inline std::vector<ClassicalOutcome> classical_pure_ne(const TwoPlayerGame& g) {
  constexpr double tol = 1e-12;
  std::vector<ClassicalOutcome> out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const bool a_stays = g.payoff_a.at(a, b) >= g.payoff_a.at(1 - a, b) - tol;
      const bool b_stays = g.payoff_b.at(a, b) >= g.payoff_b.at(a, 1 - b) - tol;
      if (a_stays && b_stays) {
        out.push_back({{static_cast<Action>(a), static_cast<Action>(b)},
                       {g.payoff_a.at(a, b), g.payoff_b.at(a, b)}});
      }
    }
  }
  return out;
}

// Classical payoffs of profile (a, b1, b2) with A's payoff weighted by p.
inline std::array<double, 3> classical_bayesian_payoffs(const BayesianGame& g, int a, int b1,
                                                        int b2) {
  const double pa = g.p * g.subgame_b1.payoff_a.at(a, b1) +
                    (1.0 - g.p) * g.subgame_b2.payoff_a.at(a, b2);
  return {pa, g.subgame_b1.payoff_b.at(a, b1), g.subgame_b2.payoff_b.at(a, b2)};
}

// Exhaustive deviation check over {C, D}^3. Ties within 1e-12 count as
// stable so that both branches survive at the p = 1/6 threshold.
inline std::vector<ClassicalOutcome> classical_bayesian_ne(const BayesianGame& g) {
  check_probability(g.p, "classical_bayesian_ne");
  constexpr double tol = 1e-12;
  std::vector<ClassicalOutcome> out;
  for (int a = 0; a < 2; ++a) {
    for (int b1 = 0; b1 < 2; ++b1) {
      for (int b2 = 0; b2 < 2; ++b2) {
        const auto here = classical_bayesian_payoffs(g, a, b1, b2);
        const bool stable = here[0] >= classical_bayesian_payoffs(g, 1 - a, b1, b2)[0] - tol &&
                            here[1] >= classical_bayesian_payoffs(g, a, 1 - b1, b2)[1] - tol &&
                            here[2] >= classical_bayesian_payoffs(g, a, b1, 1 - b2)[2] - tol;
        if (stable) {
          out.push_back({{static_cast<Action>(a), static_cast<Action>(b1), static_cast<Action>(b2)},
                         {here.begin(), here.end()}});
        }
      }
    }
  }
  return out;
}

inline std::vector<ClassicalOutcome> classical_bayesian_ne(double p) {
  return classical_bayesian_ne(builtin_bayesian(p));
}

}  // namespace qgame

#endif  // QGAME_GAME_HPP_
