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

#include "acmag/quantum_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "su2.hpp"

namespace acmag {

namespace {

void check_dim(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    throw std::invalid_argument("operator must be square, got " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  if (rows < 1 || rows > kMaxDim) {
    throw std::invalid_argument("operator dimension " + std::to_string(rows) +
                                " outside supported range 1.." + std::to_string(kMaxDim));
  }
}

void check_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

Operator::Operator(Eigen::MatrixXcd m) : m_(std::move(m)) { check_dim(m_.rows(), m_.cols()); }

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  m_.resize(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("operator rows must all have length " + std::to_string(n));
    }
    Eigen::Index c = 0;
    for (const Complex& v : row) m_(r, c++) = v;
    ++r;
  }
  check_dim(m_.rows(), m_.cols());
}

Operator Operator::identity(int dim) { return Operator(Eigen::MatrixXcd::Identity(dim, dim)); }

Operator Operator::zero(int dim) { return Operator(Eigen::MatrixXcd::Zero(dim, dim)); }

Operator Operator::diagonal(std::initializer_list<Complex> entries) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const Complex& v : entries) d(i++) = v;
  return Operator(Eigen::MatrixXcd(d.asDiagonal()));
}

Operator Operator::adjoint() const { return Operator(Eigen::MatrixXcd(m_.adjoint())); }

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
  return (m_.adjoint() * m_ - id).cwiseAbs().maxCoeff() <= tol;
}

Operator& Operator::operator+=(const Operator& rhs) {
  check_same_dim(*this, rhs, "operator+");
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  check_same_dim(*this, rhs, "operator-");
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "operator*");
  return Operator(Eigen::MatrixXcd(a.m_ * b.m_));
}

double max_abs_diff(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1 || amps_.size() > kMaxDim) {
    throw std::invalid_argument("state dimension " + std::to_string(amps_.size()) +
                                " outside supported range");
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("state is not normalized: squared norm " + std::to_string(norm2));
  }
}

PureState::PureState(std::initializer_list<Complex> amplitudes)
    : PureState([&] {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes.size()));
        Eigen::Index i = 0;
        for (const Complex& a : amplitudes) v(i++) = a;
        return v;
      }()) {}

PureState PureState::normalized(Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

Complex PureState::expectation(const Operator& a) const {
  if (a.dim() != dim()) throw std::invalid_argument("expectation: dimension mismatch");
  return amps_.dot(a.matrix() * amps_);
}

Complex PureState::overlap(const PureState& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("overlap: dimension mismatch");
  return amps_.dot(other.amps_);
}

Operator PureState::density() const { return Operator(Eigen::MatrixXcd(amps_ * amps_.adjoint())); }

PureState PureState::evolved(const Operator& u) const {
  if (u.dim() != dim()) throw std::invalid_argument("evolved: dimension mismatch");
  // Renormalize to absorb roundoff from long operator products.
  return PureState::normalized(u.matrix() * amps_);
}

PureState bell_phi_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState::normalized((Eigen::VectorXcd(4) << r, 0.0, 0.0, r).finished());
}

Operator pauli(Axis axis) {
  switch (axis) {
    case Axis::x:
      return Operator(Eigen::MatrixXcd(detail::sigma_x2()));
    case Axis::y:
      return Operator(Eigen::MatrixXcd(detail::sigma_y2()));
    case Axis::z:
      return Operator(Eigen::MatrixXcd(detail::sigma_z2()));
  }
  throw std::invalid_argument("unknown Pauli axis");
}

Operator tensor(const Operator& a, const Operator& b) {
  const int n = a.dim() * b.dim();
  if (n > kMaxDim) {
    throw std::invalid_argument("tensor product dimension " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxDim));
  }
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

Operator expm_hermitian(const Operator& h, double t) {
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("expm_hermitian: operator is not Hermitian");
  if (h.dim() == 2) {
    return Operator(Eigen::MatrixXcd(detail::expm_hermitian2(h.matrix(), t)));
  }
  const Eigen::MatrixXcd hs = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hs);
  if (eig.info() != Eigen::Success) throw std::runtime_error("expm_hermitian: eigensolver failed");
  Eigen::VectorXcd phases(h.dim());
  for (int k = 0; k < h.dim(); ++k) phases(k) = std::polar(1.0, -eig.eigenvalues()(k) * t);
  const auto& v = eig.eigenvectors();
  return Operator(Eigen::MatrixXcd(v * phases.asDiagonal() * v.adjoint()));
}

Operator partial_trace(const Operator& rho, Keep keep) {
  const int n = rho.dim();
  if (n % 2 != 0 || n < 4) {
    throw std::invalid_argument("partial_trace: dimension " + std::to_string(n) +
                                " is not a qubit (x) subsystem");
  }
  if (!rho.is_hermitian(1e-10)) throw std::invalid_argument("partial_trace: input is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument("partial_trace: input trace is not 1");
  }
  const int rest = n / 2;
  const auto& m = rho.matrix();
  if (keep == Keep::first) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < rest; ++k) out(i, j) += m(i * rest + k, j * rest + k);
    return Operator(std::move(out));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rest, rest);
  for (int i = 0; i < rest; ++i)
    for (int j = 0; j < rest; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += m(k * rest + i, k * rest + j);
  return Operator(std::move(out));
}

double pure_cov(const PureState& psi, const Operator& a, const Operator& b) {
  if (a.dim() != psi.dim() || b.dim() != psi.dim()) {
    throw std::invalid_argument("pure_cov: dimension mismatch between state and operators");
  }
  const Eigen::VectorXcd av = a.matrix() * psi.amplitudes();
  const Eigen::VectorXcd bv = b.matrix() * psi.amplitudes();
  // 1/2 <{A,B}> = Re <A psi | B psi> for Hermitian A, B.
  const double sym = av.dot(bv).real();
  const double ea = psi.amplitudes().dot(av).real();
  const double eb = psi.amplitudes().dot(bv).real();
  return sym - ea * eb;
}

}  // namespace acmag
