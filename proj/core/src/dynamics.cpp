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

#include "acmag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "acmag/error.hpp"
#include "su2.hpp"

namespace acmag {

using detail::Mat2;

FieldParams FieldParams::matched(double gamma, double B, double omega, double phi) {
  FieldParams p;
  p.gamma = gamma;
  p.B = B;
  p.omega = omega;
  p.phi = phi;
  return p.with_matched_control();
}

FieldParams FieldParams::with_matched_control() const {
  FieldParams p = *this;
  p.B_c = B;
  p.omega_c = omega;
  p.phi_c = phi;
  return p;
}

void FieldParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("FieldParams: ") + what);
  };
  require(std::isfinite(B) && B >= 0.0, "B must be >= 0");
  require(std::isfinite(B_c) && B_c >= 0.0, "B_c must be >= 0");
  require(std::isfinite(omega) && omega > 0.0, "omega must be > 0");
  require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be > 0");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(phi) && std::isfinite(phi_c), "phases must be finite");
}

TimeGrid TimeGrid::per_phase(double omega, double T, double per_radian) {
  const double cells = std::ceil(std::abs(omega * T) * per_radian);
  return {0.0, T, std::max<std::int64_t>(1, static_cast<std::int64_t>(cells))};
}

void TimeGrid::validate() const {
  if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
  if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
}

Operator pauli_combination(double ax, double ay, double az) {
  return Operator(Eigen::MatrixXcd(ax * detail::sigma_x2() + ay * detail::sigma_y2() +
                                   az * detail::sigma_z2()));
}

namespace {

Mat2 target2(const FieldParams& p, double t) {
  return (p.gamma * p.B * std::cos(p.omega * t + p.phi)) * detail::sigma_x2();
}

Mat2 control2(const FieldParams& p, double t) {
  return (-p.gamma * p.B_c * std::cos(p.omega_c * t + p.phi_c)) * detail::sigma_x2() +
         (0.5 * p.omega_c) * detail::sigma_z2();
}

Mat2 driving2(const FieldParams& p, double t, Evolution evolution) {
  return evolution == Evolution::controlled ? Mat2(target2(p, t) + control2(p, t)) : target2(p, t);
}

Mat2 hermitian_part(const Mat2& m) { return 0.5 * (m + m.adjoint()); }

// One midpoint pass producing both generators. The propagator to the cell
// midpoint is exp(-i H dt/2) U_k, and U_{k+1} applies the same half step again.
std::pair<Mat2, Mat2> integrate_generators(const FieldParams& p, const TimeGrid& grid,
                                           Evolution evolution) {
  const double dt = grid.step();
  Mat2 u = Mat2::Identity();
  Mat2 hb = Mat2::Zero();
  Mat2 hw = Mat2::Zero();
  for (std::int64_t k = 0; k < grid.steps; ++k) {
    const double t = grid.midpoint(k);
    const Mat2 half = detail::expm_hermitian2(driving2(p, t, evolution), 0.5 * dt);
    const Mat2 um = half * u;
    const Mat2 rotated = um.adjoint() * detail::sigma_x2() * um;
    const double arg = p.omega * t + p.phi;
    hb.noalias() += (p.gamma * std::cos(arg) * dt) * rotated;
    hw.noalias() += (-p.gamma * p.B * t * std::sin(arg) * dt) * rotated;
    u = half * um;
  }
  return {hermitian_part(hb), hermitian_part(hw)};
}

}  // namespace

Operator hamiltonian_eval(const FieldParams& p, HamiltonianPart which, double t) {
  if (t < 0.0) throw std::invalid_argument("hamiltonian_eval: t must be >= 0");
  switch (which) {
    case HamiltonianPart::target:
      return Operator(Eigen::MatrixXcd(target2(p, t)));
    case HamiltonianPart::control:
      return Operator(Eigen::MatrixXcd(control2(p, t)));
    case HamiltonianPart::total:
      return Operator(Eigen::MatrixXcd(target2(p, t) + control2(p, t)));
  }
  throw std::invalid_argument("hamiltonian_eval: unknown part");
}

Operator hamiltonian_derivative(const FieldParams& p, Parameter theta, double t) {
  const double arg = p.omega * t + p.phi;
  const double coeff =
      theta == Parameter::B ? p.gamma * std::cos(arg) : -p.gamma * p.B * t * std::sin(arg);
  return pauli_combination(coeff, 0.0, 0.0);
}

Operator propagate(const HamiltonianFn& h, const TimeGrid& grid) {
  grid.validate();
  const double dt = grid.step();
  std::optional<Operator> u;
  for (std::int64_t k = 0; k < grid.steps; ++k) {
    const Operator hk = h(grid.midpoint(k));
    if (!hk.is_hermitian(1e-10)) {
      throw std::invalid_argument("propagate: Hamiltonian sample at t=" +
                                  std::to_string(grid.midpoint(k)) + " is not Hermitian");
    }
    const Operator step = expm_hermitian(hk, dt);
    u = u ? step * *u : step;
  }
  return *u;
}

Operator propagate_field(const FieldParams& p, const TimeGrid& grid, Evolution evolution) {
  grid.validate();
  const double dt = grid.step();
  Mat2 u = Mat2::Identity();
  for (std::int64_t k = 0; k < grid.steps; ++k) {
    u = detail::expm_hermitian2(driving2(p, grid.midpoint(k), evolution), dt) * u;
  }
  return Operator(Eigen::MatrixXcd(u));
}

GeneratorPair generator_pair_numeric(const FieldParams& p, const TimeGrid& grid,
                                     Evolution evolution,
                                     std::optional<double> halving_tolerance) {
  p.validate();
  grid.validate();
  auto [hb, hw] = integrate_generators(p, grid, evolution);
  if (halving_tolerance) {
    if (grid.steps < 2) throw std::invalid_argument("step-halving check needs at least 2 steps");
    const TimeGrid coarse{grid.t_start, grid.t_end, grid.steps / 2};
    auto [cb, cw] = integrate_generators(p, coarse, evolution);
    const double diff =
        std::max((hb - cb).cwiseAbs().maxCoeff(), (hw - cw).cwiseAbs().maxCoeff());
    if (diff > *halving_tolerance) {
      throw ConvergenceError("generator grid too coarse: step-halving discrepancy " +
                             std::to_string(diff) + " exceeds tolerance " +
                             std::to_string(*halving_tolerance));
    }
  }
  return {Operator(Eigen::MatrixXcd(hb)), Operator(Eigen::MatrixXcd(hw))};
}

Operator generator_numeric(const FieldParams& p, Parameter theta, const TimeGrid& grid,
                           Evolution evolution, std::optional<double> halving_tolerance) {
  GeneratorPair g = generator_pair_numeric(p, grid, evolution, halving_tolerance);
  return theta == Parameter::B ? std::move(g.h_b) : std::move(g.h_omega);
}

GeneratorPair generator_closed_form(const FieldParams& p, double T, GeneratorMode mode) {
  if (!(p.gamma > 0.0) || !(p.omega > 0.0) || p.B < 0.0) {
    throw std::invalid_argument("generator_closed_form: needs gamma > 0, omega > 0, B >= 0");
  }
  if (p.phi != 0.0) throw std::invalid_argument("generator_closed_form: requires phi = 0");
  if (!(T >= 0.0)) throw std::invalid_argument("generator_closed_form: T must be >= 0");
  const double g = p.gamma;
  const double b = p.B;
  if (mode == GeneratorMode::asymptotic) {
    return {pauli_combination(0.5 * g * T, 0.0, 0.0), pauli_combination(0.0, 0.25 * g * b * T * T, 0.0)};
  }
  const double w = p.omega;
  const double s2 = std::sin(2.0 * w * T);
  const double c2 = std::cos(2.0 * w * T);
  const double bx = 0.5 * g * (T + s2 / (2.0 * w));
  const double by = -0.5 * g * ((1.0 - c2) / (2.0 * w));
  const double wx = -0.5 * g * b * (-T * c2 / (2.0 * w) + s2 / (4.0 * w * w));
  const double wy = 0.5 * g * b * (0.5 * T * T - T * s2 / (2.0 * w) - (c2 - 1.0) / (4.0 * w * w));
  return {pauli_combination(bx, by, 0.0), pauli_combination(wx, wy, 0.0)};
}

}  // namespace acmag
