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

#ifndef QGAME_SWEEP_HPP_
#define QGAME_SWEEP_HPP_

// Sweeps of the (p, gamma) plane for the Bayesian game, or of gamma alone
// for a two-player game, recording the equilibrium classes of each cell.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qgame/equilibrium.hpp"
#include "qgame/ewl.hpp"
#include "qgame/game.hpp"
#include "qgame/parallel.hpp"
#include "qgame/strategy_grid.hpp"

namespace qgame {

using GameVariant = std::variant<TwoPlayerGame, BayesianGame>;

enum class CircuitMode { kMixture, kFull };

// `step`-spaced values from 0 to `max` with the final step clamped so the
// grid ends exactly at `max`: round(max / step) + 1 values.
inline std::vector<double> uniform_grid(double max, double step) {
  if (!(step > 0.0) || !(max > 0.0)) throw std::invalid_argument("uniform_grid: positive step and range required");
  const auto count = static_cast<std::size_t>(std::llround(max / step)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i + 1 < count; ++i) out.push_back(static_cast<double>(i) * step);
  out.push_back(max);
  return out;
}

inline std::vector<double> default_p_grid(double step = 0.05) { return uniform_grid(1.0, step); }
inline std::vector<double> default_gamma_grid(double step = 0.05) { return uniform_grid(kPi / 2, step); }

struct SweepSpec {
  std::vector<double> p_values;  // ignored for two-player games
  std::vector<double> gamma_values;
  GridSteps grid_steps;
  GameVariant game = builtin_bayesian(0.5);
  double eps_tie = kDefaultEpsTie;
  CircuitMode circuit = CircuitMode::kMixture;
  double phi_q = 0.0;    // control-qubit phases for CircuitMode::kFull
  double alpha_q = 0.0;
  unsigned threads = 1;  // 0 = hardware concurrency

  bool bayesian() const { return std::holds_alternative<BayesianGame>(game); }
};

struct SweepCell {
  double p = 0.0;  // meaningful for Bayesian sweeps only
  double gamma = 0.0;
  std::vector<EquilibriumClass> classes;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepCell> cells;  // gamma-major, then p
  double elapsed_seconds = 0.0;  // not serialized
};

namespace detail {

inline void validate_axis(const std::vector<double>& values, double lo, double hi, const char* name) {
  if (values.empty()) throw std::invalid_argument(std::string("SweepSpec: empty ") + name + " grid");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= lo - kAngleSlack && values[i] <= hi + kAngleSlack)) {
      throw std::out_of_range(std::string("SweepSpec: ") + name + " value out of range");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw std::invalid_argument(std::string("SweepSpec: ") + name + " grid must be ascending");
    }
  }
}

}  // namespace detail

inline void validate(const SweepSpec& spec) {
  detail::validate_axis(spec.gamma_values, 0.0, kPi / 2, "gamma");
  if (spec.bayesian()) detail::validate_axis(spec.p_values, 0.0, 1.0, "p");
  if (!(spec.eps_tie >= 0.0)) throw std::invalid_argument("SweepSpec: eps_tie must be >= 0");
}

// Per-cell equilibrium classes. Outcome tables are built once per gamma and
// shared by every p in that row; rows run in parallel and land in fixed
// slots, so the output does not depend on the thread count.
inline SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto start = std::chrono::steady_clock::now();
  const StrategySet set = enumerate(spec.grid_steps);
  const unsigned threads = resolve_threads(spec.threads);

  SweepResult result{spec, {}, 0.0};
  const std::size_t np = spec.bayesian() ? spec.p_values.size() : 1;
  result.cells.resize(spec.gamma_values.size() * np);

  // A single gamma row gets the workers for its table instead.
  const unsigned inner = spec.gamma_values.size() == 1 ? threads : 1;
  parallel_for(spec.gamma_values.size(), threads, [&](std::size_t gi) {
    const EntanglerAngle g(std::clamp(spec.gamma_values[gi], 0.0, kPi / 2));
    if (const auto* two = std::get_if<TwoPlayerGame>(&spec.game)) {
      SweepCell& cell = result.cells[gi];
      cell.gamma = spec.gamma_values[gi];
      cell.classes = classify(find_ne_two_player(*two, g, set, spec.eps_tie, inner), set);
      return;
    }
    const auto& game = std::get<BayesianGame>(spec.game);
    std::optional<BayesianTables> tables;
    if (spec.circuit == CircuitMode::kMixture) tables.emplace(OutcomeTable(set, g, inner), game);
    for (std::size_t col = 0; col < np; ++col) {
      const double p = std::clamp(spec.p_values[col], 0.0, 1.0);
      SweepCell& cell = result.cells[gi * np + col];
      cell.p = spec.p_values[col];
      cell.gamma = spec.gamma_values[gi];
      std::vector<EquilibriumRecord> records;
      if (tables) {
        records = find_ne_bayesian(*tables, p, spec.eps_tie);
      } else {
        records = find_ne_bayesian_circuit(with_probability(game, p),
                                           ControlSpec::from_probability(p, spec.phi_q, spec.alpha_q),
                                           g, set, spec.eps_tie, inner);
      }
      cell.classes = classify(std::move(records), set);
    }
  });

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// Occupied-cell extent of one theta-profile across a sweep.
struct RegionSummary {
  std::string class_id;
  std::vector<double> theta_profile;
  std::set<std::string> operator_labels;  // labels seen across cells
  double p_min = std::numeric_limits<double>::infinity();
  double p_max = -std::numeric_limits<double>::infinity();
  double gamma_min = std::numeric_limits<double>::infinity();
  double gamma_max = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> cells;  // (p, gamma)
};

// Classes are matched across cells by theta-profile.
inline std::vector<RegionSummary> summarize_regions(const SweepResult& r) {
  std::map<std::string, RegionSummary> by_id;
  for (const auto& cell : r.cells) {
    std::set<std::string> seen_here;
    for (const auto& c : cell.classes) {
      const std::string id = class_id(c.theta_profile);
      RegionSummary& s = by_id[id];
      if (s.cells.empty()) {
        s.class_id = id;
        s.theta_profile = c.theta_profile;
      }
      if (c.operator_label) s.operator_labels.insert(*c.operator_label);
      if (!seen_here.insert(id).second) continue;
      s.p_min = std::min(s.p_min, cell.p);
      s.p_max = std::max(s.p_max, cell.p);
      s.gamma_min = std::min(s.gamma_min, cell.gamma);
      s.gamma_max = std::max(s.gamma_max, cell.gamma);
      s.cells.emplace_back(cell.p, cell.gamma);
    }
  }
  std::vector<RegionSummary> out;
  for (auto& [id, s] : by_id) out.push_back(std::move(s));
  return out;
}

}  // namespace qgame

#endif  // QGAME_SWEEP_HPP_
