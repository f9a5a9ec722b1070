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

#ifndef QGAME_EWL_HPP_
#define QGAME_EWL_HPP_

// EWL quantization: the entangling gate J(gamma), three-parameter strategy
// unitaries, the two-player circuit J^dag (U_A (x) U_B) J |00>, the
// four-qubit Bayesian circuit with a control qubit Q selecting the B type,
// expected payoffs, and a no-signaling check on conditional distributions.
//
// Qubit orders: two-player (A, B); Bayesian (Q, A, B1, B2). Q = |1> selects
// the (A, B1) subgame, so P(Q = 1) = sin^2(theta_Q / 2) plays the role of p.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "qgame/game.hpp"
#include "qgame/tensor.hpp"

namespace qgame {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Slack for range checks on angles produced by floating-point grids.
inline constexpr double kAngleSlack = 1e-12;

struct StrategyParams {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2pi]
  double alpha = 0.0;  // [0, 2pi]

  friend bool operator==(const StrategyParams&, const StrategyParams&) = default;
};

inline void validate(const StrategyParams& s) {
  auto in = [](double v, double hi) { return v >= -kAngleSlack && v <= hi + kAngleSlack; };
  if (!in(s.theta, kPi)) throw std::out_of_range("StrategyParams: theta outside [0, pi]");
  if (!in(s.phi, kTwoPi)) throw std::out_of_range("StrategyParams: phi outside [0, 2pi]");
  if (!in(s.alpha, kTwoPi)) throw std::out_of_range("StrategyParams: alpha outside [0, 2pi]");
}

// Entanglement parameter gamma in [0, pi/2].
class EntanglerAngle {
 public:
  explicit EntanglerAngle(double gamma) : gamma_(gamma) {
    if (!(gamma >= -kAngleSlack && gamma <= kPi / 2 + kAngleSlack)) {
      throw std::out_of_range("EntanglerAngle: gamma outside [0, pi/2]");
    }
  }
  double value() const { return gamma_; }

 private:
  double gamma_;
};

// Rotation on the control qubit; P(Q = 1) = sin^2(theta_q / 2).
struct ControlSpec {
  double theta_q = 0.0;
  double phi_q = 0.0;
  double alpha_q = 0.0;

  double probability() const {
    const double s = std::sin(theta_q / 2);
    return s * s;
  }

  static ControlSpec from_probability(double p, double phi_q = 0.0, double alpha_q = 0.0) {
    check_probability(p, "ControlSpec::from_probability");
    return {2.0 * std::asin(std::sqrt(p)), phi_q, alpha_q};
  }
};

// Fixed-size 2x2 unitary, row-major. Used on hot paths instead of DenseMatrix.
using Unitary2 = std::array<Complex, 4>;

inline Unitary2 strategy_matrix(const StrategyParams& s) {
  validate(s);
  const double c = std::cos(s.theta / 2);
  const double sn = std::sin(s.theta / 2);
  return {std::polar(c, -s.phi), std::polar(sn, s.alpha), -std::polar(sn, -s.alpha),
          std::polar(c, s.phi)};
}

inline DenseMatrix to_dense(const Unitary2& u) { return {{u[0], u[1]}, {u[2], u[3]}}; }

inline Unitary2 to_unitary2(const DenseMatrix& m) {
  if (m.dim() != 2) throw DimensionError("to_unitary2: expected a 2x2 matrix");
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

// U(theta, phi, alpha) = [[e^{-i phi} cos(theta/2), e^{i alpha} sin(theta/2)],
//                         [-e^{-i alpha} sin(theta/2), e^{i phi} cos(theta/2)]]
inline DenseMatrix strategy_unitary(const StrategyParams& s) { return to_dense(strategy_matrix(s)); }

// J(gamma): cos(gamma/2) on the diagonal; anti-diagonal (i, -i, -i, i) sin(gamma/2).
inline DenseMatrix entangler(EntanglerAngle g) {
  const Complex c = std::cos(g.value() / 2);
  const Complex is = Complex(0.0, std::sin(g.value() / 2));
  return {{c, 0.0, 0.0, is}, {0.0, c, -is, 0.0}, {0.0, -is, c, 0.0}, {is, 0.0, 0.0, c}};
}

// Precomputed J and J^dag for repeated two-player evaluation at one gamma.
class TwoPlayerCircuit {
 public:
  explicit TwoPlayerCircuit(EntanglerAngle g) : gamma_(g.value()) {
    const DenseMatrix j = entangler(g);
    for (std::size_t r = 0; r < 4; ++r) {
      initial_[r] = j(r, 0);
      for (std::size_t c = 0; c < 4; ++c) undo_[r * 4 + c] = std::conj(j(c, r));
    }
  }

  double gamma() const { return gamma_; }

  // Amplitudes of J^dag (ua (x) ub) J |00>.
  std::array<Complex, 4> amplitudes(const Unitary2& ua, const Unitary2& ub) const {
    std::array<Complex, 4> mid{};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) {
        Complex acc{};
        for (std::size_t j = 0; j < 2; ++j)
          for (std::size_t l = 0; l < 2; ++l) acc += ua[i * 2 + j] * ub[k * 2 + l] * initial_[j * 2 + l];
        mid[i * 2 + k] = acc;
      }
    std::array<Complex, 4> out{};
    for (std::size_t r = 0; r < 4; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < 4; ++c) acc += undo_[r * 4 + c] * mid[c];
      out[r] = acc;
    }
    return out;
  }

  std::array<double, 4> probabilities(const Unitary2& ua, const Unitary2& ub) const {
    const auto amp = amplitudes(ua, ub);
    return {std::norm(amp[0]), std::norm(amp[1]), std::norm(amp[2]), std::norm(amp[3])};
  }

 private:
  double gamma_;
  std::array<Complex, 4> initial_{};  // J |00>
  std::array<Complex, 16> undo_{};    // J^dag
};

inline StateVector evolve_two_player(EntanglerAngle g, const Unitary2& ua, const Unitary2& ub) {
  const auto amp = TwoPlayerCircuit(g).amplitudes(ua, ub);
  return StateVector(2, {amp.begin(), amp.end()});
}

inline StateVector evolve_two_player(EntanglerAngle g, const StrategyParams& ua,
                                     const StrategyParams& ub) {
  return evolve_two_player(g, strategy_matrix(ua), strategy_matrix(ub));
}

inline double payoff_expectation(std::span<const double> probabilities, const PayoffSpec& payoff) {
  if (probabilities.size() != 4) throw DimensionError("payoff_expectation: length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < 4; ++j) acc += probabilities[j] * payoff[j];
  return acc;
}

// sum_j |psi_j|^2 $_j over an arbitrary-length payoff vector.
inline double payoff_expectation(const StateVector& psi, std::span<const double> payoff) {
  if (payoff.size() != psi.dim()) throw DimensionError("payoff_expectation: length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.dim(); ++j) acc += std::norm(psi[j]) * payoff[j];
  return acc;
}

inline double payoff_expectation(const StateVector& psi, const PayoffSpec& payoff) {
  return payoff_expectation(psi, std::span<const double>(payoff.values()));
}

struct BayesianPayoffs {
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

// Statistical mixture: A's payoff is p <$A(A,B1)> + (1-p) <$A(A,B2)>; each B
// type receives its own subgame payoff (not scaled by p).
inline BayesianPayoffs bayesian_payoffs_mixture(const BayesianGame& game, EntanglerAngle g,
                                                const Unitary2& ua, const Unitary2& ub1,
                                                const Unitary2& ub2) {
  check_probability(game.p, "bayesian_payoffs_mixture");
  const TwoPlayerCircuit circuit(g);
  const auto prob1 = circuit.probabilities(ua, ub1);
  const auto prob2 = circuit.probabilities(ua, ub2);
  const double a1 = payoff_expectation(prob1, game.subgame_b1.payoff_a);
  const double a2 = payoff_expectation(prob2, game.subgame_b2.payoff_a);
  return {game.p * a1 + (1.0 - game.p) * a2, payoff_expectation(prob1, game.subgame_b1.payoff_b),
          payoff_expectation(prob2, game.subgame_b2.payoff_b)};
}

inline BayesianPayoffs bayesian_payoffs_mixture(double p, EntanglerAngle g,
                                                const StrategyParams& ua,
                                                const StrategyParams& ub1,
                                                const StrategyParams& ub2,
                                                const BayesianGame& game) {
  return bayesian_payoffs_mixture(with_probability(game, p), g, strategy_matrix(ua),
                                  strategy_matrix(ub1), strategy_matrix(ub2));
}

// Controlled entanglers on (Q, A, B1, B2): first = blockdiag(I4, J) on
// (Q, A, B1), second = blockdiag(J, I4) on (Q, A, B2).
inline std::pair<DenseMatrix, DenseMatrix> controlled_entanglers(EntanglerAngle g) {
  const DenseMatrix j = entangler(g);
  DenseMatrix j1 = DenseMatrix::identity(8);
  DenseMatrix j2 = DenseMatrix::identity(8);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      j1(4 + r, 4 + c) = j(r, c);
      j2(r, c) = j(r, c);
    }
  }
  return {embed(j1, {0, 1, 2}, 4), embed(j2, {0, 1, 3}, 4)};
}

// J1^dag J2^dag (I_Q (x) U_A (x) U_B1 (x) U_B2) J2 J1 (U_Q (x) I_8) |0000>
inline StateVector evolve_bayesian_circuit(const ControlSpec& q, EntanglerAngle g,
                                           const Unitary2& ua, const Unitary2& ub1,
                                           const Unitary2& ub2) {
  const auto [j1, j2] = controlled_entanglers(g);
  const DenseMatrix uq = strategy_unitary({q.theta_q, q.phi_q, q.alpha_q});
  const DenseMatrix local =
      kron(DenseMatrix::identity(2), kron(to_dense(ua), kron(to_dense(ub1), to_dense(ub2))));
  StateVector psi(4);
  psi = apply_on(uq, {0}, psi);
  psi = apply(j1, psi);
  psi = apply(j2, psi);
  psi = apply(local, psi);
  psi = apply(dagger(j2), psi);
  psi = apply(dagger(j1), psi);
  return psi;
}

inline StateVector evolve_bayesian_circuit(const ControlSpec& q, EntanglerAngle g,
                                           const StrategyParams& ua, const StrategyParams& ub1,
                                           const StrategyParams& ub2) {
  return evolve_bayesian_circuit(q, g, strategy_matrix(ua), strategy_matrix(ub1),
                                 strategy_matrix(ub2));
}

// Below this branch weight a conditional B payoff is taken from `fallback`.
inline constexpr double kBranchEpsilon = 1e-12;

// Payoffs after measuring all four qubits. A collects the PD payoff on the
// Q = 1 branch and the DA payoff on Q = 0; each B type gets its payoff
// conditioned on its branch. A branch with weight <= 1e-12 uses the
// corresponding fallback value, and throws if none is given.
inline BayesianPayoffs bayesian_payoffs_circuit(const StateVector& psi, const BayesianGame& game,
                                                const std::optional<BayesianPayoffs>& fallback =
                                                    std::nullopt) {
  if (psi.n_qubits() != 4) throw DimensionError("bayesian_payoffs_circuit: expected 4 qubits");
  double weight[2] = {0.0, 0.0};
  double b1_sum = 0.0;
  double b2_sum = 0.0;
  double a_sum = 0.0;
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const double prob = std::norm(psi[idx]);
    const int q = static_cast<int>((idx >> 3) & 1U);
    const int a = static_cast<int>((idx >> 2) & 1U);
    const int b1 = static_cast<int>((idx >> 1) & 1U);
    const int b2 = static_cast<int>(idx & 1U);
    weight[q] += prob;
    if (q == 1) {
      a_sum += prob * game.subgame_b1.payoff_a.at(a, b1);
      b1_sum += prob * game.subgame_b1.payoff_b.at(a, b1);
    } else {
      a_sum += prob * game.subgame_b2.payoff_a.at(a, b2);
      b2_sum += prob * game.subgame_b2.payoff_b.at(a, b2);
    }
  }
  auto conditional = [&](double sum, double w, double BayesianPayoffs::*member) {
    if (w > kBranchEpsilon) return sum / w;
    if (!fallback) {
      throw std::domain_error("bayesian_payoffs_circuit: empty branch and no fallback given");
    }
    return (*fallback).*member;
  };
  return {a_sum, conditional(b1_sum, weight[1], &BayesianPayoffs::b1),
          conditional(b2_sum, weight[0], &BayesianPayoffs::b2)};
}

// Full four-qubit evaluation; empty-branch B payoffs fall back to the
// two-player subgame values.
inline BayesianPayoffs bayesian_payoffs_full_circuit(const ControlSpec& q, EntanglerAngle g,
                                                     const Unitary2& ua, const Unitary2& ub1,
                                                     const Unitary2& ub2,
                                                     const BayesianGame& game) {
  const StateVector psi = evolve_bayesian_circuit(q, g, ua, ub1, ub2);
  const TwoPlayerCircuit circuit(g);
  const BayesianPayoffs fallback{
      0.0, payoff_expectation(circuit.probabilities(ua, ub1), game.subgame_b1.payoff_b),
      payoff_expectation(circuit.probabilities(ua, ub2), game.subgame_b2.payoff_b)};
  return bayesian_payoffs_circuit(psi, game, fallback);
}

// P(a, b | x, y) for binary outcomes a, b and binary types x, y.
class ConditionalDistribution {
 public:
  double& operator()(int a, int b, int x, int y) { return p_[index(a, b, x, y)]; }
  double operator()(int a, int b, int x, int y) const { return p_[index(a, b, x, y)]; }

  // Largest |sum_{a,b} P(a,b|x,y) - 1| over (x, y).
  double normalization_error() const {
    double worst = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) s += (*this)(a, b, x, y);
        worst = std::max(worst, std::abs(s - 1.0));
      }
    return worst;
  }

 private:
  static std::size_t index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((a * 2 + b) * 2 + x) * 2 + y);
  }
  std::array<double, 16> p_{};
};

// A's marginal must not depend on B's type and vice versa.
inline bool no_signaling_check(const ConditionalDistribution& d, double tol) {
  if (d.normalization_error() > 1e-9) {
    throw std::invalid_argument("no_signaling_check: distribution is not normalized");
  }
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double m0 = d(a, 0, x, 0) + d(a, 1, x, 0);
      const double m1 = d(a, 0, x, 1) + d(a, 1, x, 1);
      if (std::abs(m0 - m1) > tol) return false;
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      const double m0 = d(0, b, 0, y) + d(1, b, 0, y);
      const double m1 = d(0, b, 1, y) + d(1, b, 1, y);
      if (std::abs(m0 - m1) > tol) return false;
    }
  return true;
}

// Outcome statistics of computational-basis measurements on
// (U_A^x (x) U_B^y) J(gamma) |00>, with one local strategy per type.
inline ConditionalDistribution local_strategy_distribution(EntanglerAngle g,
                                                           const std::array<Unitary2, 2>& a_by_type,
                                                           const std::array<Unitary2, 2>& b_by_type) {
  const StateVector shared = apply(entangler(g), StateVector(2));
  ConditionalDistribution d;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const StateVector out =
          apply(kron(to_dense(a_by_type[static_cast<std::size_t>(x)]),
                     to_dense(b_by_type[static_cast<std::size_t>(y)])),
                shared);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) d(a, b, x, y) = out.probability(static_cast<std::size_t>(2 * a + b));
    }
  return d;
}

}  // namespace qgame

#endif  // QGAME_EWL_HPP_
