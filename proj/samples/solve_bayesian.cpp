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


// Solves the Bayesian game at one (p, gamma) and prints each equilibrium
// class. Usage: qgame_sample [p] [gamma]

#include <cstdio>
#include <cstdlib>

#include "qgame/qgame.hpp"

int main(int argc, char** argv) {
  const double p = argc > 1 ? std::atof(argv[1]) : 0.8;
  const double gamma = argc > 2 ? std::atof(argv[2]) : 0.3;

  const qgame::StrategySet set = qgame::enumerate(qgame::GridSteps{});
  const qgame::BayesianGame game = qgame::builtin_bayesian(p);
  const auto records = qgame::find_ne_bayesian(game, qgame::EntanglerAngle(gamma), set);
  const auto classes = qgame::classify(records, set);

  std::printf("p = %.3f, gamma = %.3f: %zu strategies, %zu equilibria in %zu classes\n", p, gamma,
              set.size(), records.size(), classes.size());
  for (const auto& c : classes) {
    std::printf("  theta/pi = %s  payoffs = (%.4f, %.4f, %.4f)  members = %zu  label = %s\n",
                qgame::class_id(c.theta_profile).c_str(), c.payoffs[0], c.payoffs[1], c.payoffs[2],
                c.members.size(), c.operator_label.value_or("-").c_str());
  }
  return 0;
}
