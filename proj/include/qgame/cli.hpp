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

#ifndef QGAME_CLI_HPP_
#define QGAME_CLI_HPP_

// Command-line front end: solve, sweep, classify, emit-figure, verify.
// Exit codes: 0 success, 1 argument error, 2 config error, 3 I/O or
// numerical failure.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/io.hpp"
#include "qgame/strategy_grid.hpp"
#include "qgame/sweep.hpp"

namespace qgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitFailure = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string game = "bayesian";  // pd | da | bayesian
  std::string config_path;        // overrides `game` when set
  double p = 0.5;
  bool p_given = false;  // --p overrides a config file's prior
  double gamma = 0.0;
  GridSteps steps;
  double p_step = 0.05;
  double gamma_step = 0.05;
  double eps_tie = kDefaultEpsTie;
  bool eps_given = false;  // verify falls back to the result file's value
  std::string input_path;
  std::string out_path = "-";
  Format format = Format::kJson;
  CircuitMode circuit = CircuitMode::kMixture;
  std::optional<double> theta_q;
  double phi_q = 0.0;
  double alpha_q = 0.0;
  unsigned threads = 0;
  std::string figure;  // pd | da | bayesian
};

// Radians, either a plain number or a multiple of pi: "pi", "pi/8",
// "3pi/2", "3*pi/2", "-pi/4".
inline double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid angle \"" + text + "\"");
    }
    if (used != part.size() || !std::isfinite(v)) throw UsageError("invalid angle \"" + text + "\"");
    return v;
  };
  const auto at = s.find("pi");
  if (at == std::string::npos) return number(s);
  std::string coeff = s.substr(0, at);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  double value = kPi;
  if (coeff == "-") {
    value = -kPi;
  } else if (!coeff.empty() && coeff != "+") {
    value *= number(coeff);
  }
  const std::string rest = s.substr(at + 2);
  if (rest.empty()) return value;
  if (rest.front() != '/') throw UsageError("invalid angle \"" + text + "\"");
  const double denom = number(rest.substr(1));
  if (denom == 0.0) throw UsageError("invalid angle \"" + text + "\"");
  return value / denom;
}

inline std::optional<Format> format_from_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".csv")) return Format::kCsv;
  if (ends_with(".json")) return Format::kJson;
  return std::nullopt;
}

// Parses arguments (program name excluded). Throws UsageError on bad flags
// or out-of-range values and HelpRequested for --help.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Nash equilibria of EWL-quantized two-player and Bayesian prisoner's dilemma games",
               "qgame"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string gamma_text = "0";
  std::string d_theta = "pi", d_phi = "pi/2", d_alpha = "pi/2";
  std::string theta_q, phi_q = "0", alpha_q = "0";
  std::string format_text, circuit_text = "mixture";

  auto add_game = [&](CLI::App* sub, const std::string& default_game) {
    cfg.game = default_game;
    sub->add_option("--game", cfg.game, "Built-in game: pd, da or bayesian")
        ->check(CLI::IsMember({"pd", "da", "bayesian"}));
    sub->add_option("--config", cfg.config_path, "Game definition JSON file");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--d-theta", d_theta, "Theta step in radians (accepts pi/8 etc.)");
    sub->add_option("--d-phi", d_phi, "Phi step in radians");
    sub->add_option("--d-alpha", d_alpha, "Alpha step in radians");
    sub->add_option("--eps-tie", cfg.eps_tie, "Absolute payoff tie tolerance");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores; capped by QGAME_THREADS)");
  };
  auto add_circuit = [&](CLI::App* sub) {
    sub->add_option("--circuit", circuit_text, "Bayesian evaluation: mixture or full")
        ->check(CLI::IsMember({"mixture", "full"}));
    sub->add_option("--theta-q", theta_q, "Control-qubit theta (full circuit; sets p)");
    sub->add_option("--phi-q", phi_q, "Control-qubit phi (full circuit)");
    sub->add_option("--alpha-q", alpha_q, "Control-qubit alpha (full circuit)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output path, '-' for stdout");
    sub->add_option("--format", format_text, "json or csv (default: from --out extension)")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "Equilibria at one (p, gamma)");
  add_game(solve, "bayesian");
  solve->add_option("--gamma", gamma_text, "Entanglement gamma in [0, pi/2]");
  solve->add_option("--p", cfg.p, "Probability of facing B1 (bayesian)");
  add_grid(solve);
  add_circuit(solve);
  add_output(solve);

  CLI::App* sweep = app.add_subcommand("sweep", "Equilibria over a (p, gamma) grid, or gamma only for two-player games");
  add_game(sweep, "bayesian");
  sweep->add_option("--p-step", cfg.p_step, "Step of the p grid over [0, 1]");
  sweep->add_option("--gamma-step", cfg.gamma_step, "Step of the gamma grid over [0, pi/2]");
  add_grid(sweep);
  add_circuit(sweep);
  add_output(sweep);

  CLI::App* classify_cmd = app.add_subcommand("classify", "Region summary of a sweep result");
  classify_cmd->add_option("--in", cfg.input_path, "Result JSON file")->required();
  add_output(classify_cmd);

  CLI::App* figure = app.add_subcommand("emit-figure", "Write the data behind a payoff figure");
  figure->add_option("--fig", cfg.figure, "pd, da or bayesian")
      ->required()
      ->check(CLI::IsMember({"pd", "da", "bayesian"}));
  figure->add_option("--p-step", cfg.p_step, "Step of the p grid");
  figure->add_option("--gamma-step", cfg.gamma_step, "Step of the gamma grid");
  add_grid(figure);
  add_output(figure);

  CLI::App* verify = app.add_subcommand("verify", "Re-check every equilibrium in a result file");
  verify->add_option("--in", cfg.input_path, "Result JSON file")->required();
  verify->add_option("--eps-tie", cfg.eps_tie, "Absolute payoff tie tolerance (default: the file's)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  cfg.p_given = solve->get_option("--p")->count() > 0;
  const CLI::Option* eps_opt = chosen->get_option_no_throw("--eps-tie");
  cfg.eps_given = eps_opt != nullptr && eps_opt->count() > 0;
  cfg.gamma = parse_angle(gamma_text);
  cfg.steps = {parse_angle(d_theta), parse_angle(d_phi), parse_angle(d_alpha)};
  cfg.circuit = circuit_text == "full" ? CircuitMode::kFull : CircuitMode::kMixture;
  cfg.phi_q = parse_angle(phi_q);
  cfg.alpha_q = parse_angle(alpha_q);
  if (!theta_q.empty()) cfg.theta_q = parse_angle(theta_q);
  if (cfg.command == "emit-figure") cfg.game = cfg.figure;

  if (!format_text.empty()) {
    cfg.format = format_text == "csv" ? Format::kCsv : Format::kJson;
  } else if (auto f = format_from_path(cfg.out_path)) {
    cfg.format = *f;
  } else {
    cfg.format = cfg.command == "emit-figure" ? Format::kCsv : Format::kJson;
  }

  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= kPi / 2 + kAngleSlack)) throw UsageError("--gamma must lie in [0, pi/2]");
  if (!(cfg.eps_tie >= 0.0)) throw UsageError("--eps-tie must be >= 0");
  if (!(cfg.p_step > 0.0 && cfg.p_step <= 1.0)) throw UsageError("--p-step must lie in (0, 1]");
  if (!(cfg.gamma_step > 0.0 && cfg.gamma_step <= kPi / 2)) throw UsageError("--gamma-step must lie in (0, pi/2]");
  if (cfg.theta_q && !(*cfg.theta_q >= 0.0 && *cfg.theta_q <= kPi + kAngleSlack)) {
    throw UsageError("--theta-q must lie in [0, pi]");
  }
  try {
    (void)detail::step_count(kPi, cfg.steps.d_theta, "--d-theta");
    (void)detail::step_count(kTwoPi, cfg.steps.d_phi, "--d-phi");
    (void)detail::step_count(kTwoPi, cfg.steps.d_alpha, "--d-alpha");
  } catch (const GridError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

namespace detail {

inline GameVariant resolve_game(const RunConfig& cfg) {
  if (!cfg.config_path.empty()) {
    GameVariant g = load_game(cfg.config_path);
    if (auto* b = std::get_if<BayesianGame>(&g); b && cfg.p_given) b->p = cfg.p;
    return g;
  }
  if (cfg.game == "pd") return builtin_pd();
  if (cfg.game == "da") return builtin_da();
  return builtin_bayesian(cfg.p);
}

inline SweepSpec base_spec(const RunConfig& cfg, GameVariant game) {
  SweepSpec s;
  s.game = std::move(game);
  s.grid_steps = cfg.steps;
  s.eps_tie = cfg.eps_tie;
  s.circuit = cfg.circuit;
  s.phi_q = cfg.phi_q;
  s.alpha_q = cfg.alpha_q;
  s.threads = cfg.threads;
  return s;
}

inline int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepSpec s = base_spec(cfg, resolve_game(cfg));
  double p = cfg.p;
  if (const auto* b = std::get_if<BayesianGame>(&s.game)) p = b->p;
  if (cfg.theta_q) p = ControlSpec{*cfg.theta_q, 0.0, 0.0}.probability();
  if (auto* b = std::get_if<BayesianGame>(&s.game)) b->p = p;
  s.p_values = {p};
  s.gamma_values = {cfg.gamma};
  const SweepResult r = run_sweep(s);
  emit(r, cfg.format, cfg.out_path, out);
  err << "solve: " << r.cells.front().classes.size() << " equilibrium classes in "
      << format_double(r.elapsed_seconds) << " s\n";
  return kExitOk;
}

inline int run_sweep_cmd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepSpec s = base_spec(cfg, resolve_game(cfg));
  if (s.bayesian()) s.p_values = default_p_grid(cfg.p_step);
  s.gamma_values = default_gamma_grid(cfg.gamma_step);
  const SweepResult r = run_sweep(s);
  emit(r, cfg.format, cfg.out_path, out);
  err << "sweep: " << r.cells.size() << " cells in " << format_double(r.elapsed_seconds) << " s\n";
  return kExitOk;
}

inline int run_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto regions = summarize_regions(load_result(cfg.input_path));
  write_output(cfg.out_path, out, [&](std::ostream& os) {
    if (cfg.format == Format::kCsv) {
      write_regions_csv(regions, os);
    } else {
      os << regions_to_json(regions).dump(2) << '\n';
    }
  });
  return kExitOk;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SweepResult r = load_result(cfg.input_path);
  const double eps = cfg.eps_given ? cfg.eps_tie : r.spec.eps_tie;
  const StrategySet set = enumerate(r.spec.grid_steps);
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (const auto& cell : r.cells) {
    const EntanglerAngle g(std::clamp(cell.gamma, 0.0, kPi / 2));
    for (const auto& k : cell.classes) {
      for (const auto& m : k.members) {
        bool ok = false;
        if (const auto* two = std::get_if<TwoPlayerGame>(&r.spec.game)) {
          ok = verify_ne(m, *two, g, set, eps);
        } else {
          ok = verify_ne(m, with_probability(std::get<BayesianGame>(r.spec.game), cell.p), g, set, eps);
        }
        ++checked;
        if (!ok) {
          ++failed;
          err << "not an equilibrium: gamma=" << format_double(cell.gamma);
          if (r.spec.bayesian()) err << " p=" << format_double(cell.p);
          err << " profile=";
          for (std::size_t idx : m.profile) err << idx << ' ';
          err << '\n';
        }
      }
    }
  }
  out << "verified " << checked - failed << " of " << checked << " profiles in " << r.cells.size()
      << " cells\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

inline int run_figure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig sweep_cfg = cfg;
  sweep_cfg.game = cfg.figure;
  sweep_cfg.config_path.clear();
  return run_sweep_cmd(sweep_cfg, out, err);
}

}  // namespace detail

// Executes a parsed configuration. Library exceptions propagate.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "solve") return detail::run_solve(cfg, out, err);
  if (cfg.command == "sweep") return detail::run_sweep_cmd(cfg, out, err);
  if (cfg.command == "classify") return detail::run_classify(cfg, out, err);
  if (cfg.command == "verify") return detail::run_verify(cfg, out, err);
  if (cfg.command == "emit-figure") return detail::run_figure(cfg, out, err);
  throw UsageError("unknown command \"" + cfg.command + "\"");
}

// parse_args + run with exceptions mapped to exit codes.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "qgame: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "qgame: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "qgame: I/O error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "qgame: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qgame::cli

#endif  // QGAME_CLI_HPP_
