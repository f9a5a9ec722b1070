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

#ifndef QGAME_IO_HPP_
#define QGAME_IO_HPP_

// Game definitions and sweep results on disk.
//
// Game file:
//   {"game": "two-player" | "bayesian",
//    "payoffs": {"A_vs_B1": {"A": [4 reals], "B": [4 reals]},
//                "A_vs_B2": {...}}}              // bayesian only
// Payoff vectors are in basis order |00>, |01>, |10>, |11> (A first).
// Optional keys: "p" (bayesian prior), "name" inside each payoff block.
//
// Results are JSON (full fidelity, reloadable) or CSV (one row per class,
// floats with 9 significant digits, "NONE" rows for empty cells).

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/strategy_grid.hpp"
#include "qgame/sweep.hpp"

namespace qgame {

using Json = nlohmann::ordered_json;

// Malformed game or result file; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kJson, kCsv };

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace detail {

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError("missing field \"" + where + key + "\"");
  }
  return obj.at(key);
}

inline double require_number(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number()) throw ConfigError("field \"" + where + key + "\" must be a number");
  return v.get<double>();
}

inline PayoffSpec payoff_from_json(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError("field \"" + field + "\" must be an array of 4 numbers");
  if (v.size() != 4) {
    throw ConfigError("field \"" + field + "\" must have length 4, got " + std::to_string(v.size()));
  }
  std::vector<double> values;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("field \"" + field + "\" must contain only numbers");
    values.push_back(x.get<double>());
  }
  try {
    return PayoffSpec(values);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("field \"" + field + "\": " + e.what());
  }
}

inline TwoPlayerGame subgame_from_json(const Json& payoffs, const std::string& block,
                                       const std::string& default_name) {
  const Json& b = require(payoffs, block, "payoffs.");
  const std::string where = "payoffs." + block + ".";
  TwoPlayerGame g;
  g.name = default_name;
  if (b.contains("name")) {
    if (!b.at("name").is_string()) throw ConfigError("field \"" + where + "name\" must be a string");
    g.name = b.at("name").get<std::string>();
  }
  g.payoff_a = payoff_from_json(require(b, "A", where), where + "A");
  g.payoff_b = payoff_from_json(require(b, "B", where), where + "B");
  return g;
}

inline Json payoff_to_json(const PayoffSpec& s) {
  return Json(std::vector<double>(s.values().begin(), s.values().end()));
}

inline Json subgame_to_json(const TwoPlayerGame& g) {
  Json j;
  j["name"] = g.name;
  j["A"] = payoff_to_json(g.payoff_a);
  j["B"] = payoff_to_json(g.payoff_b);
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

}  // namespace detail

inline GameVariant game_from_json(const Json& j) {
  const Json& kind = detail::require(j, "game", "");
  if (!kind.is_string()) throw ConfigError("field \"game\" must be a string");
  const Json& payoffs = detail::require(j, "payoffs", "");
  if (!payoffs.is_object()) throw ConfigError("field \"payoffs\" must be an object");
  const std::string type = kind.get<std::string>();
  if (type == "two-player") return detail::subgame_from_json(payoffs, "A_vs_B1", "custom");
  if (type == "bayesian") {
    BayesianGame g{detail::subgame_from_json(payoffs, "A_vs_B1", "pd"),
                   detail::subgame_from_json(payoffs, "A_vs_B2", "da"), 0.5};
    if (j.contains("p")) {
      g.p = detail::require_number(j, "p", "");
      if (!(g.p >= 0.0 && g.p <= 1.0)) throw ConfigError("field \"p\" must lie in [0, 1]");
    }
    return g;
  }
  throw ConfigError("field \"game\" must be \"two-player\" or \"bayesian\", got \"" + type + "\"");
}

inline Json game_to_json(const GameVariant& game) {
  Json j;
  if (const auto* two = std::get_if<TwoPlayerGame>(&game)) {
    j["game"] = "two-player";
    j["payoffs"]["A_vs_B1"] = detail::subgame_to_json(*two);
  } else {
    const auto& b = std::get<BayesianGame>(game);
    j["game"] = "bayesian";
    j["p"] = b.p;
    j["payoffs"]["A_vs_B1"] = detail::subgame_to_json(b.subgame_b1);
    j["payoffs"]["A_vs_B2"] = detail::subgame_to_json(b.subgame_b2);
  }
  return j;
}

inline GameVariant load_game(const std::string& path) {
  return game_from_json(detail::read_json_file(path));
}

inline Json result_to_json(const SweepResult& r) {
  const SweepSpec& s = r.spec;
  Json j;
  j["kind"] = s.bayesian() ? "bayesian" : "two-player";
  j["game"] = game_to_json(s.game);
  j["grid_steps"] = {{"d_theta", s.grid_steps.d_theta},
                     {"d_phi", s.grid_steps.d_phi},
                     {"d_alpha", s.grid_steps.d_alpha}};
  j["eps_tie"] = s.eps_tie;
  j["circuit"] = s.circuit == CircuitMode::kFull ? "full" : "mixture";
  if (s.circuit == CircuitMode::kFull) j["control"] = {{"phi_q", s.phi_q}, {"alpha_q", s.alpha_q}};
  if (s.bayesian()) j["p_values"] = s.p_values;
  j["gamma_values"] = s.gamma_values;
  Json cells = Json::array();
  for (const auto& cell : r.cells) {
    Json c;
    if (s.bayesian()) c["p"] = cell.p;
    c["gamma"] = cell.gamma;
    Json classes = Json::array();
    for (const auto& k : cell.classes) {
      Json kj;
      kj["class_id"] = class_id(k.theta_profile);
      kj["theta"] = k.theta_profile;
      kj["payoffs"] = k.payoffs;
      kj["operator_label"] = k.operator_label ? Json(*k.operator_label) : Json(nullptr);
      Json members = Json::array();
      for (const auto& m : k.members) members.push_back(m.profile);
      kj["members"] = std::move(members);
      Json rels = Json::array();
      for (const auto& rel : k.phase_relations) {
        rels.push_back({{"players", {rel.first, rel.second}},
                        {"difference", rel.difference_offsets},
                        {"difference_uniform", rel.difference_uniform},
                        {"sum", rel.sum_offsets},
                        {"sum_uniform", rel.sum_uniform}});
      }
      kj["phase_relations"] = std::move(rels);
      classes.push_back(std::move(kj));
    }
    c["classes"] = std::move(classes);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j;
}

inline SweepResult result_from_json(const Json& j) {
  using detail::require;
  using detail::require_number;
  try {
    SweepResult r;
    SweepSpec& s = r.spec;
    s.game = game_from_json(require(j, "game", ""));
    const std::string kind = require(j, "kind", "").get<std::string>();
    if ((kind == "bayesian") != s.bayesian()) throw ConfigError("field \"kind\" does not match \"game\"");
    const Json& steps = require(j, "grid_steps", "");
    s.grid_steps = {require_number(steps, "d_theta", "grid_steps."),
                    require_number(steps, "d_phi", "grid_steps."),
                    require_number(steps, "d_alpha", "grid_steps.")};
    s.eps_tie = require_number(j, "eps_tie", "");
    const std::string circuit = require(j, "circuit", "").get<std::string>();
    if (circuit != "mixture" && circuit != "full") throw ConfigError("field \"circuit\" must be mixture or full");
    s.circuit = circuit == "full" ? CircuitMode::kFull : CircuitMode::kMixture;
    if (s.circuit == CircuitMode::kFull) {
      const Json& control = require(j, "control", "");
      s.phi_q = require_number(control, "phi_q", "control.");
      s.alpha_q = require_number(control, "alpha_q", "control.");
    }
    if (s.bayesian()) s.p_values = require(j, "p_values", "").get<std::vector<double>>();
    s.gamma_values = require(j, "gamma_values", "").get<std::vector<double>>();
    for (const auto& c : require(j, "cells", "")) {
      SweepCell cell;
      if (s.bayesian()) cell.p = require_number(c, "p", "cells[].");
      cell.gamma = require_number(c, "gamma", "cells[].");
      for (const auto& kj : require(c, "classes", "cells[].")) {
        EquilibriumClass k;
        k.theta_profile = require(kj, "theta", "cells[].classes[].").get<std::vector<double>>();
        k.payoffs = require(kj, "payoffs", "cells[].classes[].").get<std::vector<double>>();
        const Json& label = require(kj, "operator_label", "cells[].classes[].");
        if (!label.is_null()) k.operator_label = label.get<std::string>();
        for (const auto& m : require(kj, "members", "cells[].classes[].")) {
          k.members.push_back({m.get<std::vector<std::size_t>>(), k.payoffs});
        }
        for (const auto& rel : require(kj, "phase_relations", "cells[].classes[].")) {
          const auto players = require(rel, "players", "phase_relations[].").get<std::vector<std::size_t>>();
          if (players.size() != 2) throw ConfigError("field \"phase_relations[].players\" must have 2 entries");
          k.phase_relations.push_back({players[0], players[1],
                                       require(rel, "difference", "").get<std::vector<double>>(),
                                       require(rel, "difference_uniform", "").get<bool>(),
                                       require(rel, "sum", "").get<std::vector<double>>(),
                                       require(rel, "sum_uniform", "").get<bool>()});
        }
        cell.classes.push_back(std::move(k));
      }
      r.cells.push_back(std::move(cell));
    }
    return r;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed result file: ") + e.what());
  }
}

inline SweepResult load_result(const std::string& path) {
  return result_from_json(detail::read_json_file(path));
}

inline void write_csv(const SweepResult& r, std::ostream& out) {
  const bool bayes = r.spec.bayesian();
  if (bayes) {
    out << "p,gamma,class_id,theta_A,theta_B1,theta_B2,payoff_A,payoff_B1,payoff_B2,n_profiles\n";
  } else {
    out << "gamma,payoff_A,payoff_B,class_id,theta_A,theta_B,n_profiles\n";
  }
  for (const auto& cell : r.cells) {
    const std::string lead =
        bayes ? format_double(cell.p) + "," + format_double(cell.gamma) : format_double(cell.gamma);
    if (cell.classes.empty()) {
      out << lead << (bayes ? ",NONE,,,,,,,0\n" : ",,,NONE,,,0\n");
      continue;
    }
    for (const auto& k : cell.classes) {
      auto join = [](const std::vector<double>& v, double scale) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i] * scale);
        return s;
      };
      const std::string id = class_id(k.theta_profile);
      if (bayes) {
        out << lead << ',' << id << ',' << join(k.theta_profile, 1.0) << ',' << join(k.payoffs, 1.0)
            << ',' << k.members.size() << '\n';
      } else {
        out << lead << ',' << join(k.payoffs, 1.0) << ',' << id << ',' << join(k.theta_profile, 1.0)
            << ',' << k.members.size() << '\n';
      }
    }
  }
}

inline Json regions_to_json(const std::vector<RegionSummary>& regions) {
  Json out = Json::array();
  for (const auto& s : regions) {
    out.push_back({{"class_id", s.class_id},
                   {"theta", s.theta_profile},
                   {"operator_labels", std::vector<std::string>(s.operator_labels.begin(), s.operator_labels.end())},
                   {"p_range", {s.p_min, s.p_max}},
                   {"gamma_range", {s.gamma_min, s.gamma_max}},
                   {"n_cells", s.cells.size()}});
  }
  return out;
}

inline void write_regions_csv(const std::vector<RegionSummary>& regions, std::ostream& out) {
  out << "class_id,p_min,p_max,gamma_min,gamma_max,n_cells,operator_labels\n";
  for (const auto& s : regions) {
    std::string labels;
    for (const auto& l : s.operator_labels) labels += (labels.empty() ? "" : " ") + l;
    out << s.class_id << ',' << format_double(s.p_min) << ',' << format_double(s.p_max) << ','
        << format_double(s.gamma_min) << ',' << format_double(s.gamma_max) << ',' << s.cells.size()
        << ',' << labels << '\n';
  }
}

inline void emit(const SweepResult& r, Format format, std::ostream& out) {
  if (format == Format::kCsv) {
    write_csv(r, out);
  } else {
    out << result_to_json(r).dump(2) << '\n';
  }
  if (!out) throw IoError("write failed");
}

// Writes to `path`, or to stdout when path is "-".
template <class Writer>
void write_output(const std::string& path, std::ostream& stdout_stream, Writer&& writer) {
  if (path == "-" || path.empty()) {
    writer(stdout_stream);
    if (!stdout_stream) throw IoError("write to stdout failed");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open \"" + path + "\" for writing");
  writer(file);
  file.flush();
  if (!file) throw IoError("write to \"" + path + "\" failed");
}

inline void emit(const SweepResult& r, Format format, const std::string& path,
                 std::ostream& stdout_stream) {
  write_output(path, stdout_stream, [&](std::ostream& os) { emit(r, format, os); });
}

}  // namespace qgame

#endif  // QGAME_IO_HPP_
