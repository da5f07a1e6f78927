// Copyright 2026 The acmag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense complex linear algebra for one- and two-qubit systems.
//
// Conventions: qubit |0> is the first basis vector; two-qubit states are
// ordered sensor (x) ancilla, so |01> means sensor in |0>, ancilla in |1>.

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace acmag {

using Complex = std::complex<double>;

/// Largest operator dimension accepted anywhere in the library.
inline constexpr int kMaxDim = 16;

/// Square complex matrix of dimension 1..kMaxDim.
class Operator {
 public:
  explicit Operator(Eigen::MatrixXcd m);
  Operator(std::initializer_list<std::initializer_list<Complex>> rows);

  static Operator identity(int dim);
  static Operator zero(int dim);
  static Operator diagonal(std::initializer_list<Complex> entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int row, int col) const { return m_(row, col); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  Operator adjoint() const;
  Complex trace() const { return m_.trace(); }

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;

  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }
  double frobenius_norm() const { return m_.norm(); }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Eigen::MatrixXcd m_;
};

/// Largest entrywise |a - b|; the default operator distance in this library.
double max_abs_diff(const Operator& a, const Operator& b);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Normalized state vector.
class PureState {
 public:
  /// Throws std::invalid_argument unless the squared amplitudes sum to 1 within 1e-12.
  explicit PureState(Eigen::VectorXcd amplitudes);
  PureState(std::initializer_list<Complex> amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(Eigen::VectorXcd amplitudes);
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

  Complex expectation(const Operator& a) const;
  Complex overlap(const PureState& other) const;  // <this|other>
  Operator density() const;
  PureState evolved(const Operator& u) const;

 private:
  Eigen::VectorXcd amps_;
};

/// (|00> + |11>)/sqrt(2).
PureState bell_phi_plus();

enum class Axis { x, y, z };

Operator pauli(Axis axis);

/// Kronecker product; the result dimension may not exceed kMaxDim.
Operator tensor(const Operator& a, const Operator& b);

/// exp(-i H t) by spectral decomposition. H must be Hermitian within 1e-10.
Operator expm_hermitian(const Operator& h, double t);

enum class Keep { first, second };

/// Reduced density matrix of a two-qubit density operator.
Operator partial_trace(const Operator& rho, Keep keep);

/// Symmetrized covariance 1/2<{A,B}> - <A><B> in |psi>.
double pure_cov(const PureState& psi, const Operator& a, const Operator& b);

}  // namespace acmag
