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

#ifndef QGAME_TENSOR_HPP_
#define QGAME_TENSOR_HPP_

// Small dense complex linear algebra: 2x2 through 16x16 operators and
// 1- to 4-qubit state vectors. Basis ordering is big-endian: qubit 0 is the
// most significant bit of the basis index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgame {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 16;
inline constexpr std::size_t kMaxQubits = 4;
inline constexpr double kDefaultTol = 1e-12;

// Raised when an operation would produce an operator larger than kMaxDim.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised on mismatched operand dimensions or malformed qubit targets.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

inline void require_finite(const Complex& z, const char* who) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error(std::string(who) + ": non-finite entry");
  }
}

}  // namespace detail

// Square complex matrix, row-major, dimension a power of two <= 16.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    check_dim(dim);
  }

  DenseMatrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), entries_(std::move(entries)) {
    check_dim(dim);
    if (entries_.size() != dim * dim) {
      throw DimensionError("DenseMatrix: entry count must equal dim^2");
    }
    for (const auto& z : entries_) detail::require_finite(z, "DenseMatrix");
  }

  // Row-by-row construction: {{a, b}, {c, d}}.
  DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : dim_(rows.size()) {
    check_dim(dim_);
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw DimensionError("DenseMatrix: ragged rows");
      for (const auto& z : row) {
        detail::require_finite(z, "DenseMatrix");
        entries_.push_back(z);
      }
    }
  }

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  std::size_t n_qubits() const { return detail::log2_exact(dim_); }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return entries_; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix product: dimension mismatch");
    DenseMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i) {
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend DenseMatrix operator*(Complex s, DenseMatrix m) {
    for (auto& z : m.entries_) z *= s;
    return m;
  }

 private:
  static void check_dim(std::size_t dim) {
    if (!detail::is_power_of_two(dim)) {
      throw DimensionError("DenseMatrix: dimension must be a power of two");
    }
    if (dim > kMaxDim) throw SizeError("DenseMatrix: dimension exceeds 16");
  }

  std::size_t dim_;
  std::vector<Complex> entries_;
};

// Amplitudes over the computational basis of 1..4 qubits.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(std::size_t n_qubits) : StateVector(n_qubits, 0) {}

  // Computational basis state |index>.
  StateVector(std::size_t n_qubits, std::size_t index) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
    if (index >= amplitudes_.size()) throw DimensionError("StateVector: basis index out of range");
    amplitudes_[index] = 1.0;
  }

  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubits(n_qubits);
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
      throw DimensionError("StateVector: amplitude count must be 2^n_qubits");
    }
    for (const auto& z : amplitudes_) detail::require_finite(z, "StateVector");
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  double norm_squared() const {
    double acc = 0.0;
    for (const auto& z : amplitudes_) acc += std::norm(z);
    return acc;
  }

  double probability(std::size_t index) const { return std::norm(amplitudes_.at(index)); }

 private:
  static void check_qubits(std::size_t n) {
    if (n < 1 || n > kMaxQubits) throw SizeError("StateVector: qubit count must be in 1..4");
  }

  std::size_t n_qubits_;
  std::vector<Complex> amplitudes_;
};

// Kronecker product: (a (x) b)[i*db + k][j*db + l] = a[i][j] * b[k][l].
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > kMaxDim) throw SizeError("kron: result dimension exceeds 16");
  DenseMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return out;
}

inline DenseMatrix dagger(const DenseMatrix& m) {
  DenseMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

inline StateVector apply(const DenseMatrix& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) throw DimensionError("apply: operator/state dimension mismatch");
  std::vector<Complex> out(psi.dim());
  for (std::size_t i = 0; i < op.dim(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < op.dim(); ++j) acc += op(i, j) * psi[j];
    out[i] = acc;
  }
  return StateVector(psi.n_qubits(), std::move(out));
}

namespace detail {

inline void check_targets(std::span<const std::size_t> targets, std::size_t op_dim,
                          std::size_t n_total) {
  if (n_total < 1 || n_total > kMaxQubits) throw SizeError("embed: n_total must be in 1..4");
  if ((std::size_t{1} << targets.size()) != op_dim) {
    throw DimensionError("embed: operator dimension must be 2^|targets|");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n_total) throw DimensionError("embed: target index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw DimensionError("embed: duplicate target");
    }
  }
}

// Local index of `global` restricted to `targets` (first target = MSB).
inline std::size_t local_index(std::size_t global, std::span<const std::size_t> targets,
                               std::size_t n_total) {
  std::size_t local = 0;
  for (std::size_t t : targets) local = (local << 1) | ((global >> (n_total - 1 - t)) & 1U);
  return local;
}

inline std::size_t target_mask(std::span<const std::size_t> targets, std::size_t n_total) {
  std::size_t mask = 0;
  for (std::size_t t : targets) mask |= std::size_t{1} << (n_total - 1 - t);
  return mask;
}

}  // namespace detail

// Operator on n_total qubits acting as `op` on `targets` (first listed is
// the most significant qubit of op's local basis) and identity elsewhere.
inline DenseMatrix embed(const DenseMatrix& op, std::span<const std::size_t> targets,
                         std::size_t n_total) {
  detail::check_targets(targets, op.dim(), n_total);
  const std::size_t dim = std::size_t{1} << n_total;
  const std::size_t mask = detail::target_mask(targets, n_total);
  DenseMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out(r, c) = op(detail::local_index(r, targets, n_total),
                     detail::local_index(c, targets, n_total));
    }
  }
  return out;
}

inline DenseMatrix embed(const DenseMatrix& op, std::initializer_list<std::size_t> targets,
                         std::size_t n_total) {
  return embed(op, std::span<const std::size_t>(targets.begin(), targets.size()), n_total);
}

// Applies `op` to the listed qubits of psi by direct amplitude indexing,
// without materializing the full operator.
inline StateVector apply_on(const DenseMatrix& op, std::span<const std::size_t> targets,
                            const StateVector& psi) {
  detail::check_targets(targets, op.dim(), psi.n_qubits());
  const std::size_t n = psi.n_qubits();
  const std::size_t mask = detail::target_mask(targets, n);
  std::vector<std::size_t> spread(op.dim());
  for (std::size_t local = 0; local < op.dim(); ++local) {
    std::size_t g = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if ((local >> (targets.size() - 1 - k)) & 1U) g |= std::size_t{1} << (n - 1 - targets[k]);
    }
    spread[local] = g;
  }
  std::vector<Complex> out(psi.dim());
  for (std::size_t base = 0; base < psi.dim(); ++base) {
    if (base & mask) continue;
    for (std::size_t r = 0; r < op.dim(); ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < op.dim(); ++c) acc += op(r, c) * psi[base | spread[c]];
      out[base | spread[r]] = acc;
    }
  }
  return StateVector(n, std::move(out));
}

inline StateVector apply_on(const DenseMatrix& op, std::initializer_list<std::size_t> targets,
                            const StateVector& psi) {
  return apply_on(op, std::span<const std::size_t>(targets.begin(), targets.size()), psi);
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// max |M^dagger M - I|
inline double unitarity_error(const DenseMatrix& m) {
  return max_abs_diff(dagger(m) * m, DenseMatrix::identity(m.dim()));
}

inline bool is_unitary(const DenseMatrix& m, double tol = kDefaultTol) {
  return unitarity_error(m) < tol;
}

// True iff a = e^{i delta} b for some real delta, entrywise within tol.
inline bool phase_equal(const DenseMatrix& a, const DenseMatrix& b, double tol = kDefaultTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("phase_equal: tol must be positive");
  if (a.dim() != b.dim()) throw DimensionError("phase_equal: dimension mismatch");
  auto eb = b.entries();
  auto ea = a.entries();
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < eb.size(); ++i) {
    if (std::abs(eb[i]) > std::abs(eb[pivot])) pivot = i;
  }
  if (std::abs(eb[pivot]) <= tol) return max_abs_diff(a, b) <= tol;
  Complex phase = ea[pivot] / eb[pivot];
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  phase /= std::abs(phase);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (std::abs(ea[i] - phase * eb[i]) > tol) return false;
  }
  return true;
}

namespace pauli {

inline DenseMatrix I() { return DenseMatrix::identity(2); }
inline DenseMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline DenseMatrix Y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline DenseMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace pauli

}  // namespace qgame

#endif  // QGAME_TENSOR_HPP_
