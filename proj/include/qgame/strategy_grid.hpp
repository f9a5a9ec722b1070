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

#ifndef QGAME_STRATEGY_GRID_HPP_
#define QGAME_STRATEGY_GRID_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qgame/ewl.hpp"
#include "qgame/tensor.hpp"

namespace qgame {

// Step sizes for theta over [0, pi] and phi, alpha over [0, 2pi].
struct GridSteps {
  double d_theta = kPi;
  double d_phi = kPi / 2;
  double d_alpha = kPi / 2;

  friend bool operator==(const GridSteps&, const GridSteps&) = default;
};

// Raised when a step does not divide its range.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::size_t step_count(double range, double step, const char* name) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw GridError(std::string("GridSteps: ") + name + " must be positive");
  }
  const double ratio = range / step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, rounded)) {
    throw GridError(std::string("GridSteps: ") + name + " does not divide its range");
  }
  return static_cast<std::size_t>(rounded);
}

// Angle reduced into [0, 2pi); values within 1e-12 of 2pi map to 0.
inline double wrap_two_pi(double v) {
  double r = std::fmod(v, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r < 1e-12 || kTwoPi - r < 1e-12) r = 0.0;
  return r;
}

}  // namespace detail

// Reduces phases mod 2pi and zeroes the phase that has no effect at the
// poles: alpha at theta = 0, phi at theta = pi.
inline StrategyParams canonicalize(const StrategyParams& s) {
  StrategyParams out{s.theta, detail::wrap_two_pi(s.phi), detail::wrap_two_pi(s.alpha)};
  if (std::abs(out.theta) < 1e-12) {
    out.theta = 0.0;
    out.alpha = 0.0;
  } else if (std::abs(out.theta - kPi) < 1e-12) {
    out.theta = kPi;
    out.phi = 0.0;
  }
  return out;
}

// One entry of a discretized strategy space.
struct Strategy {
  StrategyParams params;
  Unitary2 matrix;
};

// Canonical strategies with pairwise distinct matrices, ordered
// lexicographically by (theta, phi, alpha).
class StrategySet {
 public:
  StrategySet(std::vector<Strategy> items, GridSteps steps)
      : items_(std::move(items)), steps_(steps) {}

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Strategy& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Strategy>& items() const { return items_; }
  const GridSteps& steps() const { return steps_; }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Strategy> items_;
  GridSteps steps_;
};

inline double max_abs_diff(const Unitary2& a, const Unitary2& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// All grid points, canonicalized, with exact matrix duplicates (within
// 1e-12, not up to global phase) removed.
inline StrategySet enumerate(const GridSteps& steps) {
  const std::size_t nt = detail::step_count(kPi, steps.d_theta, "d_theta");
  const std::size_t nf = detail::step_count(kTwoPi, steps.d_phi, "d_phi");
  const std::size_t na = detail::step_count(kTwoPi, steps.d_alpha, "d_alpha");

  std::vector<StrategyParams> points;
  points.reserve((nt + 1) * (nf + 1) * (na + 1));
  for (std::size_t i = 0; i <= nt; ++i) {
    const double theta = i == nt ? kPi : static_cast<double>(i) * steps.d_theta;
    for (std::size_t j = 0; j <= nf; ++j)
      for (std::size_t k = 0; k <= na; ++k) {
        points.push_back(canonicalize(
            {theta, static_cast<double>(j) * steps.d_phi, static_cast<double>(k) * steps.d_alpha}));
      }
  }
  auto key = [](const StrategyParams& s) { return std::tie(s.theta, s.phi, s.alpha); };
  std::sort(points.begin(), points.end(),
            [&](const StrategyParams& a, const StrategyParams& b) { return key(a) < key(b); });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Strategy> items;
  for (const auto& p : points) {
    const Unitary2 m = strategy_matrix(p);
    const bool duplicate = std::any_of(items.begin(), items.end(), [&](const Strategy& s) {
      return max_abs_diff(s.matrix, m) < 1e-12;
    });
    if (!duplicate) items.push_back({p, m});
  }
  return StrategySet(std::move(items), steps);
}

enum class Pauli { I, X, Y, Z };

inline char pauli_symbol(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

struct PauliLabel {
  Pauli symbol;
  Complex phase;  // u = phase * P, |phase| = 1
};

// (P, c) with u = c P for a Pauli P, if one exists within 1e-10.
inline std::optional<PauliLabel> pauli_label(const Unitary2& u) {
  constexpr double tol = 1e-10;
  const std::pair<Pauli, DenseMatrix> candidates[] = {
      {Pauli::I, pauli::I()}, {Pauli::X, pauli::X()}, {Pauli::Y, pauli::Y()}, {Pauli::Z, pauli::Z()}};
  for (const auto& [symbol, p] : candidates) {
    const Unitary2 pm = to_unitary2(p);
    // tr(P u) / 2; Paulis are Hermitian and square to I.
    const Complex c = (pm[0] * u[0] + pm[1] * u[2] + pm[2] * u[1] + pm[3] * u[3]) / 2.0;
    if (std::abs(std::abs(c) - 1.0) > tol) continue;
    bool match = true;
    for (std::size_t i = 0; i < 4; ++i) match = match && std::abs(u[i] - c * pm[i]) <= tol;
    if (match) return PauliLabel{symbol, c};
  }
  return std::nullopt;
}

inline std::optional<PauliLabel> pauli_label(const DenseMatrix& u) {
  return pauli_label(to_unitary2(u));
}

}  // namespace qgame

#endif  // QGAME_STRATEGY_GRID_HPP_
