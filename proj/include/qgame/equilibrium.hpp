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

#ifndef QGAME_EQUILIBRIUM_HPP_
#define QGAME_EQUILIBRIUM_HPP_

// Pure-strategy Nash equilibria over a discretized strategy set by brute-force
// best response, an independent deviation-scan verifier, and grouping of
// equilibria into classes that share a theta-profile and payoffs and differ
// only by correlated phases.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgame/ewl.hpp"
#include "qgame/game.hpp"
#include "qgame/parallel.hpp"
#include "qgame/strategy_grid.hpp"

namespace qgame {

inline constexpr double kDefaultEpsTie = 1e-9;
// Payoffs within this distance belong to the same equilibrium class.
inline constexpr double kClassPayoffTol = 1e-9;

struct BestResponse {
  std::vector<std::size_t> indices;  // every strategy within eps_tie of the max
  double value = -std::numeric_limits<double>::infinity();
};

// Scans payoff_of(i) for i in [0, n) and keeps every index whose payoff is
// at least max - eps_tie.
template <class PayoffFn>
BestResponse best_responses(std::size_t n, PayoffFn&& payoff_of, double eps_tie) {
  if (n == 0) throw std::invalid_argument("best_responses: empty strategy set");
  if (!(eps_tie >= 0.0)) throw std::invalid_argument("best_responses: eps_tie must be >= 0");
  std::vector<double> values(n);
  BestResponse br;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = payoff_of(i);
    br.value = std::max(br.value, values[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] >= br.value - eps_tie) br.indices.push_back(i);
  }
  return br;
}

template <class PayoffFn>
BestResponse best_responses(const StrategySet& set, PayoffFn&& payoff_of, double eps_tie) {
  return best_responses(set.size(), std::forward<PayoffFn>(payoff_of), eps_tie);
}

// Outcome probabilities of the two-player circuit for every (a, b) pair at
// one gamma. Independent of payoffs and of p, so it is shared across games.
class OutcomeTable {
 public:
  OutcomeTable(const StrategySet& set, EntanglerAngle g, unsigned threads = 1)
      : n_(set.size()), gamma_(g.value()), probs_(n_ * n_) {
    const TwoPlayerCircuit circuit(g);
    parallel_for(n_, threads, [&](std::size_t a) {
      for (std::size_t b = 0; b < n_; ++b) {
        probs_[a * n_ + b] = circuit.probabilities(set[a].matrix, set[b].matrix);
      }
    });
  }

  std::size_t size() const { return n_; }
  double gamma() const { return gamma_; }
  const std::array<double, 4>& at(std::size_t a, std::size_t b) const { return probs_[a * n_ + b]; }

 private:
  std::size_t n_;
  double gamma_;
  std::vector<std::array<double, 4>> probs_;
};

// Expected payoffs T_A[a, b] and T_B[a, b] of one two-player subgame.
class PayoffTable {
 public:
  PayoffTable(const OutcomeTable& outcomes, const TwoPlayerGame& game)
      : n_(outcomes.size()), a_(n_ * n_), b_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& pr = outcomes.at(i, j);
        a_[i * n_ + j] = payoff_expectation(pr, game.payoff_a);
        b_[i * n_ + j] = payoff_expectation(pr, game.payoff_b);
      }
  }

  std::size_t size() const { return n_; }
  double a(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }
  double b(std::size_t row, std::size_t col) const { return b_[row * n_ + col]; }

 private:
  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> b_;
};

// Best responses of one player, one entry per opponent strategy.
struct BestResponseMap {
  std::vector<BestResponse> by_opponent;
};

// A's best responses to each B strategy (column scan of T_A).
inline BestResponseMap row_player_responses(const PayoffTable& t, double eps_tie) {
  BestResponseMap map;
  map.by_opponent.reserve(t.size());
  for (std::size_t b = 0; b < t.size(); ++b) {
    map.by_opponent.push_back(best_responses(t.size(), [&](std::size_t a) { return t.a(a, b); }, eps_tie));
  }
  return map;
}

// B's best responses to each A strategy (row scan of T_B).
inline BestResponseMap column_player_responses(const PayoffTable& t, double eps_tie) {
  BestResponseMap map;
  map.by_opponent.reserve(t.size());
  for (std::size_t a = 0; a < t.size(); ++a) {
    map.by_opponent.push_back(best_responses(t.size(), [&](std::size_t b) { return t.b(a, b); }, eps_tie));
  }
  return map;
}

struct EquilibriumRecord {
  std::vector<std::size_t> profile;  // strategy index per player
  std::vector<double> payoffs;       // per player

  friend bool operator<(const EquilibriumRecord& x, const EquilibriumRecord& y) {
    return x.profile < y.profile;
  }
};

inline std::vector<EquilibriumRecord> find_ne_two_player(const PayoffTable& t, double eps_tie) {
  const BestResponseMap br_a = row_player_responses(t, eps_tie);
  const BestResponseMap br_b = column_player_responses(t, eps_tie);
  std::vector<EquilibriumRecord> out;
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b : br_b.by_opponent[a].indices) {
      const auto& col = br_a.by_opponent[b].indices;
      if (std::binary_search(col.begin(), col.end(), a)) out.push_back({{a, b}, {t.a(a, b), t.b(a, b)}});
    }
  }
  return out;
}

inline std::vector<EquilibriumRecord> find_ne_two_player(const TwoPlayerGame& game, EntanglerAngle g,
                                                         const StrategySet& set,
                                                         double eps_tie = kDefaultEpsTie,
                                                         unsigned threads = 1) {
  return find_ne_two_player(PayoffTable(OutcomeTable(set, g, threads), game), eps_tie);
}

// Per-gamma tables of both subgames; A's Bayesian payoff for any p is
// p * pd.a + (1 - p) * da.a.
struct BayesianTables {
  PayoffTable b1;
  PayoffTable b2;

  BayesianTables(const OutcomeTable& outcomes, const BayesianGame& game)
      : b1(outcomes, game.subgame_b1), b2(outcomes, game.subgame_b2) {}
};

// b1 in BR_B1(a), b2 in BR_B2(a), then a in BR_A(b1, b2).
inline std::vector<EquilibriumRecord> find_ne_bayesian(const BayesianTables& t, double p,
                                                       double eps_tie) {
  check_probability(p, "find_ne_bayesian");
  const std::size_t n = t.b1.size();
  const BestResponseMap br_b1 = column_player_responses(t.b1, eps_tie);
  const BestResponseMap br_b2 = column_player_responses(t.b2, eps_tie);
  auto payoff_a = [&](std::size_t a, std::size_t b1, std::size_t b2) {
    return p * t.b1.a(a, b1) + (1.0 - p) * t.b2.a(a, b2);
  };
  std::vector<EquilibriumRecord> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b1 : br_b1.by_opponent[a].indices) {
      for (std::size_t b2 : br_b2.by_opponent[a].indices) {
        const double here = payoff_a(a, b1, b2);
        bool stable = true;
        for (std::size_t dev = 0; dev < n && stable; ++dev) {
          stable = payoff_a(dev, b1, b2) <= here + eps_tie;
        }
        // Same acceptance rule as best_responses: here >= max - eps_tie.
        if (stable) out.push_back({{a, b1, b2}, {here, t.b1.b(a, b1), t.b2.b(a, b2)}});
      }
    }
  }
  return out;
}

inline std::vector<EquilibriumRecord> find_ne_bayesian(const BayesianGame& game, EntanglerAngle g,
                                                       const StrategySet& set,
                                                       double eps_tie = kDefaultEpsTie,
                                                       unsigned threads = 1) {
  const OutcomeTable outcomes(set, g, threads);
  return find_ne_bayesian(BayesianTables(outcomes, game), game.p, eps_tie);
}

// Bayesian equilibria with every payoff taken from the four-qubit circuit
// (no mixture shortcut): n^3 circuit runs, then a deviation scan per profile.
inline std::vector<EquilibriumRecord> find_ne_bayesian_circuit(const BayesianGame& game,
                                                               const ControlSpec& control,
                                                               EntanglerAngle g,
                                                               const StrategySet& set,
                                                               double eps_tie = kDefaultEpsTie,
                                                               unsigned threads = 1) {
  const std::size_t n = set.size();
  std::vector<BayesianPayoffs> cube(n * n * n);
  auto at = [&](std::size_t a, std::size_t b1, std::size_t b2) -> const BayesianPayoffs& {
    return cube[(a * n + b1) * n + b2];
  };
  parallel_for(n, threads, [&](std::size_t a) {
    for (std::size_t b1 = 0; b1 < n; ++b1)
      for (std::size_t b2 = 0; b2 < n; ++b2) {
        cube[(a * n + b1) * n + b2] = bayesian_payoffs_full_circuit(
            control, g, set[a].matrix, set[b1].matrix, set[b2].matrix, game);
      }
  });
  std::vector<EquilibriumRecord> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b1 = 0; b1 < n; ++b1)
      for (std::size_t b2 = 0; b2 < n; ++b2) {
        const BayesianPayoffs& here = at(a, b1, b2);
        bool stable = true;
        for (std::size_t d = 0; d < n && stable; ++d) {
          stable = at(d, b1, b2).a <= here.a + eps_tie && at(a, d, b2).b1 <= here.b1 + eps_tie &&
                   at(a, b1, d).b2 <= here.b2 + eps_tie;
        }
        if (stable) out.push_back({{a, b1, b2}, {here.a, here.b1, here.b2}});
      }
  return out;
}

// Recomputes every payoff from the circuit and checks that no unilateral
// deviation over the full set gains more than eps_tie. Does not use tables
// or best-response maps.
inline bool verify_ne(const EquilibriumRecord& record, const TwoPlayerGame& game, EntanglerAngle g,
                      const StrategySet& set, double eps_tie = kDefaultEpsTie) {
  if (record.profile.size() != 2) return false;
  const std::size_t a = record.profile[0];
  const std::size_t b = record.profile[1];
  if (a >= set.size() || b >= set.size()) return false;
  const TwoPlayerCircuit circuit(g);
  auto payoffs = [&](std::size_t i, std::size_t j) {
    const auto pr = circuit.probabilities(set[i].matrix, set[j].matrix);
    return std::pair{payoff_expectation(pr, game.payoff_a), payoff_expectation(pr, game.payoff_b)};
  };
  const auto [here_a, here_b] = payoffs(a, b);
  for (std::size_t d = 0; d < set.size(); ++d) {
    if (payoffs(d, b).first > here_a + eps_tie) return false;
    if (payoffs(a, d).second > here_b + eps_tie) return false;
  }
  return true;
}

inline bool verify_ne(const EquilibriumRecord& record, const BayesianGame& game, EntanglerAngle g,
                      const StrategySet& set, double eps_tie = kDefaultEpsTie) {
  if (record.profile.size() != 3) return false;
  const std::size_t a = record.profile[0];
  const std::size_t b1 = record.profile[1];
  const std::size_t b2 = record.profile[2];
  if (a >= set.size() || b1 >= set.size() || b2 >= set.size()) return false;
  auto eval = [&](std::size_t i, std::size_t j, std::size_t k) {
    return bayesian_payoffs_mixture(game, g, set[i].matrix, set[j].matrix, set[k].matrix);
  };
  const BayesianPayoffs here = eval(a, b1, b2);
  for (std::size_t d = 0; d < set.size(); ++d) {
    if (eval(d, b1, b2).a > here.a + eps_tie) return false;
    if (eval(a, d, b2).b1 > here.b1 + eps_tie) return false;
    if (eval(a, b1, d).b2 > here.b2 + eps_tie) return false;
  }
  return true;
}

// Observed pairwise relations between the free phases of two players: phi
// when theta = 0, alpha when theta = pi. Offsets are reduced mod 2pi.
struct PhaseRelation {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<double> difference_offsets;  // psi_second - psi_first
  bool difference_uniform = false;         // same offset set for every psi_first
  std::vector<double> sum_offsets;         // psi_second + psi_first
  bool sum_uniform = false;
};

struct EquilibriumClass {
  std::vector<double> theta_profile;
  std::vector<EquilibriumRecord> members;
  std::vector<double> payoffs;
  std::vector<PhaseRelation> phase_relations;
  std::optional<std::string> operator_label;  // e.g. "Y⊗X⊗Z", from one representative member
};

namespace detail {

inline constexpr double kPhaseTol = 1e-9;

inline double wrap_phase(double v) {
  double r = std::fmod(v, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r < kPhaseTol || kTwoPi - r < kPhaseTol) r = 0.0;
  return r;
}

inline void insert_phase(std::vector<double>& set, double v) {
  for (double x : set) {
    if (std::abs(x - v) < kPhaseTol) return;
  }
  set.insert(std::upper_bound(set.begin(), set.end(), v), v);
}

inline bool same_phase_set(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) >= kPhaseTol) return false;
  }
  return true;
}

inline std::optional<double> free_phase(const StrategyParams& s) {
  if (std::abs(s.theta) < 1e-12) return s.phi;
  if (std::abs(s.theta - kPi) < 1e-12) return s.alpha;
  return std::nullopt;
}

// Offsets observed per value of the first player's phase.
struct OffsetsByAnchor {
  std::vector<std::pair<double, std::vector<double>>> groups;

  void add(double anchor, double offset) {
    for (auto& [key, set] : groups) {
      if (std::abs(key - anchor) < kPhaseTol) {
        insert_phase(set, offset);
        return;
      }
    }
    groups.push_back({anchor, {}});
    insert_phase(groups.back().second, offset);
  }

  bool uniform() const {
    for (const auto& [key, set] : groups) {
      if (!same_phase_set(set, groups.front().second)) return false;
    }
    return true;
  }

  std::vector<double> all() const {
    std::vector<double> out;
    for (const auto& [key, set] : groups)
      for (double v : set) insert_phase(out, v);
    return out;
  }
};

inline PhaseRelation relate(const std::vector<EquilibriumRecord>& members, const StrategySet& set,
                            std::size_t i, std::size_t j) {
  OffsetsByAnchor diff;
  OffsetsByAnchor sum;
  for (const auto& m : members) {
    const double pi_phase = *free_phase(set[m.profile[i]].params);
    const double pj_phase = *free_phase(set[m.profile[j]].params);
    diff.add(wrap_phase(pi_phase), wrap_phase(pj_phase - pi_phase));
    sum.add(wrap_phase(pi_phase), wrap_phase(pj_phase + pi_phase));
  }
  return {i, j, diff.all(), diff.uniform(), sum.all(), sum.uniform()};
}

inline std::optional<std::string> label_of(const EquilibriumRecord& r, const StrategySet& set) {
  std::string label;
  for (std::size_t k = 0; k < r.profile.size(); ++k) {
    const auto pl = pauli_label(set[r.profile[k]].matrix);
    if (!pl) return std::nullopt;
    if (k > 0) label += "⊗";
    label += pauli_symbol(pl->symbol);
  }
  return label;
}

inline bool is_pole(double theta) {
  return std::abs(theta) < 1e-12 || std::abs(theta - kPi) < 1e-12;
}

}  // namespace detail

// Identifier of a theta-profile: theta / pi per player joined by ':'.
inline std::string class_id(const std::vector<double>& theta_profile) {
  std::string id;
  for (std::size_t k = 0; k < theta_profile.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", theta_profile[k] / kPi);
    if (k > 0) id += ':';
    id += buf;
  }
  return id;
}

// Groups records by theta-profile and payoffs (1e-9). Members, classes and
// relations come out in a deterministic order.
inline std::vector<EquilibriumClass> classify(std::vector<EquilibriumRecord> records,
                                              const StrategySet& set) {
  std::sort(records.begin(), records.end());
  std::vector<EquilibriumClass> classes;
  for (auto& r : records) {
    std::vector<double> thetas;
    for (std::size_t idx : r.profile) thetas.push_back(set[idx].params.theta);
    auto match = std::find_if(classes.begin(), classes.end(), [&](const EquilibriumClass& c) {
      if (c.theta_profile.size() != thetas.size()) return false;
      for (std::size_t k = 0; k < thetas.size(); ++k) {
        if (std::abs(c.theta_profile[k] - thetas[k]) > 1e-12) return false;
        if (std::abs(c.payoffs[k] - r.payoffs[k]) > kClassPayoffTol) return false;
      }
      return true;
    });
    if (match == classes.end()) {
      classes.push_back({thetas, {}, r.payoffs, {}, std::nullopt});
      match = classes.end() - 1;
    }
    match->members.push_back(std::move(r));
  }
  for (auto& c : classes) {
    // A lone profile constrains nothing.
    for (std::size_t i = 0; c.members.size() > 1 && i < c.theta_profile.size(); ++i) {
      if (!detail::is_pole(c.theta_profile[i])) continue;
      for (std::size_t j = i + 1; j < c.theta_profile.size(); ++j) {
        if (!detail::is_pole(c.theta_profile[j])) continue;
        c.phase_relations.push_back(detail::relate(c.members, set, i, j));
      }
    }
    for (const auto& m : c.members) {
      if ((c.operator_label = detail::label_of(m, set))) break;
    }
  }
  std::sort(classes.begin(), classes.end(), [](const EquilibriumClass& x, const EquilibriumClass& y) {
    if (x.theta_profile != y.theta_profile) return x.theta_profile < y.theta_profile;
    return x.payoffs < y.payoffs;
  });
  return classes;
}

}  // namespace qgame

#endif  // QGAME_EQUILIBRIUM_HPP_
