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

// Reference values that do not go through the library's own numerics.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

namespace acmag::testing {

// Computed once at 30 digits (mpmath), gamma = B = omega = T = 1.
inline constexpr double kHbX = 0.727324356706420;
inline constexpr double kHbY = -0.354036709136786;
inline constexpr double kHwX = -0.217698887489996;
inline constexpr double kHwY = 0.199693997861972;
inline constexpr double kFbb = 2.61737084509925;
inline constexpr double kFww = 0.349081993585917;
inline constexpr double kFbw = -0.916146836547142;
// det at T = pi equals pi^6 / 4.
inline constexpr double kDetAtPi = 240.347298393826;
inline constexpr double kAbsCos2PiT1 = 0.636619772367581;     // omega = 2 pi, T = 1
inline constexpr double kTAbsSin2PiT10 = 31.8309886183791;    // omega = 2 pi, T = 10
inline constexpr double kAbsCos3T25 = 1.64599999225825;       // omega = 3, T = 2.5
inline constexpr double kTAbsSin3T25 = 1.90975455717231;      // omega = 3, T = 2.5

/// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::int64_t panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double s = f(a) + f(b);
  for (std::int64_t k = 1; k < panels; ++k) s += f(a + h * static_cast<double>(k)) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Midpoint rule; used for integrands with kinks.
inline double midpoint(const std::function<double(double)>& f, double a, double b, std::int64_t cells) {
  const double h = (b - a) / static_cast<double>(cells);
  double s = 0.0;
  for (std::int64_t k = 0; k < cells; ++k) s += f(a + h * (static_cast<double>(k) + 0.5));
  return s * h;
}

/// Pauli coefficients (x, y) of a generator under matched control. The
/// controlled propagator is exactly exp(-i omega t sigma_z / 2), so
/// U^dag sigma_x U = cos(omega t) sigma_x - sin(omega t) sigma_y and the
/// generator reduces to two scalar integrals.
struct PauliXY {
  double x = 0.0;
  double y = 0.0;
};

inline PauliXY matched_generator_b(double gamma, double omega, double T, std::int64_t panels) {
  auto fx = [&](double t) { return gamma * std::cos(omega * t) * std::cos(omega * t); };
  auto fy = [&](double t) { return -gamma * std::cos(omega * t) * std::sin(omega * t); };
  return {simpson(fx, 0.0, T, panels), simpson(fy, 0.0, T, panels)};
}

inline PauliXY matched_generator_w(double gamma, double B, double omega, double T, std::int64_t panels) {
  auto fx = [&](double t) { return -gamma * B * t * std::sin(omega * t) * std::cos(omega * t); };
  auto fy = [&](double t) { return gamma * B * t * std::sin(omega * t) * std::sin(omega * t); };
  return {simpson(fx, 0.0, T, panels), simpson(fy, 0.0, T, panels)};
}

/// F = 4 Cov on the Bell probe for generators a.sigma (x) I, b.sigma (x) I:
/// the reduced state is I/2, so Cov = (a.b) and F_ab = 4 a.b.
inline void bell_qfim_from_xy(const PauliXY& a, const PauliXY& b, double& f_bb, double& f_bw,
                              double& f_ww) {
  f_bb = 4.0 * (a.x * a.x + a.y * a.y);
  f_bw = 4.0 * (a.x * b.x + a.y * b.y);
  f_ww = 4.0 * (b.x * b.x + b.y * b.y);
}

}  // namespace acmag::testing
