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

// Fixed-size 2x2 helpers used by the hot quadrature loops.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace acmag::detail {

using Mat2 = Eigen::Matrix2cd;

inline const Mat2& sigma_x2() {
  static const Mat2 m = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();
  return m;
}

inline const Mat2& sigma_y2() {
  static const Mat2 m =
      (Mat2() << 0.0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0.0).finished();
  return m;
}

inline const Mat2& sigma_z2() {
  static const Mat2 m = (Mat2() << 1.0, 0.0, 0.0, -1.0).finished();
  return m;
}

// exp(-i H t) for Hermitian 2x2 H = a0 I + n.sigma. The eigenvalues are
// a0 +- |n| with projectors (I +- n.sigma/|n|)/2, which collapses to
// e^{-i a0 t} (cos(|n| t) I - i sin(|n| t)/|n| n.sigma).
inline Mat2 expm_hermitian2(const Mat2& h, double t) {
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double nz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double nx = 0.5 * (h(0, 1).real() + h(1, 0).real());
  const double ny = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
  const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
  const double c = std::cos(n * t);
  // sin(n t)/n, continuous at n = 0
  const double s = n * std::abs(t) > 1e-8 ? std::sin(n * t) / n : t * (1.0 - n * n * t * t / 6.0);
  const std::complex<double> phase = std::polar(1.0, -a0 * t);
  const std::complex<double> mi(0.0, -1.0);
  Mat2 u;
  u(0, 0) = phase * (c + mi * s * nz);
  u(1, 1) = phase * (c - mi * s * nz);
  u(0, 1) = phase * (mi * s * std::complex<double>(nx, -ny));
  u(1, 0) = phase * (mi * s * std::complex<double>(nx, ny));
  return u;
}

}  // namespace acmag::detail
