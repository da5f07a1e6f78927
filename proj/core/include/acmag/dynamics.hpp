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

// Single-qubit AC-field dynamics: the target Hamiltonian
// H0(t) = gamma B cos(omega t + phi) sigma_x, the control
// Hc(t) = -gamma B_c cos(omega_c t + phi_c) sigma_x + (omega_c/2) sigma_z,
// time-ordered propagation, and the Heisenberg-picture estimation generators
// h_theta(T) = int_0^T U^dag(0->t) d_theta H0(t) U(0->t) dt.
//
// Units: time in microseconds, angular frequencies in rad/us, fields in
// gauss, gamma in rad/(us G). Generators are stored as plain matrices.

#include <cstdint>
#include <functional>
#include <optional>

#include "acmag/quantum_core.hpp"

namespace acmag {

struct FieldParams {
  double B = 0.0;        // target amplitude
  double omega = 1.0;    // target angular frequency
  double phi = 0.0;      // target phase
  double B_c = 0.0;      // control amplitude
  double omega_c = 1.0;  // control angular frequency
  double phi_c = 0.0;    // control phase
  double gamma = 1.0;    // coupling

  /// Control set equal to the target: (B_c, omega_c, phi_c) = (B, omega, phi).
  static FieldParams matched(double gamma, double B, double omega, double phi = 0.0);

  FieldParams with_matched_control() const;

  /// Throws std::invalid_argument naming the first violated field.
  void validate() const;
};

/// Uniform grid of `steps` midpoint cells on [t_start, t_end].
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  std::int64_t steps = 1;

  static TimeGrid over(double duration, std::int64_t steps) { return {0.0, duration, steps}; }

  /// Grid on [0, T] with `per_radian` cells per unit of omega*T (at least one cell).
  static TimeGrid per_phase(double omega, double T, double per_radian);

  double step() const { return (t_end - t_start) / static_cast<double>(steps); }
  double midpoint(std::int64_t k) const { return t_start + (static_cast<double>(k) + 0.5) * step(); }
  void validate() const;
};

struct GeneratorPair {
  Operator h_b;
  Operator h_omega;
};

enum class HamiltonianPart { target, control, total };
enum class Parameter { B, omega };
enum class GeneratorMode { exact, asymptotic };

/// Which Hamiltonian drives U(0->t) when building generators.
enum class Evolution {
  controlled,   // H0 + Hc
  uncontrolled  // H0 alone
};

Operator hamiltonian_eval(const FieldParams& p, HamiltonianPart which, double t);

/// Derivative of H0 with respect to B or omega at time t.
Operator hamiltonian_derivative(const FieldParams& p, Parameter theta, double t);

using HamiltonianFn = std::function<Operator(double)>;

/// Ordered product of exp(-i H(t_mid) dt) over the grid, later times on the left.
/// Every sample must be Hermitian within 1e-10.
Operator propagate(const HamiltonianFn& h, const TimeGrid& grid);

/// Propagator of the single-qubit field problem (fast path of propagate()).
Operator propagate_field(const FieldParams& p, const TimeGrid& grid,
                         Evolution evolution = Evolution::controlled);

/// Midpoint quadrature of h_theta(T) on `grid`, sharing the grid with the
/// propagator product. With `halving_tolerance`, the result is recomputed on
/// a grid with half the steps and ConvergenceError is thrown when the two
/// differ by more than the tolerance in any entry.
Operator generator_numeric(const FieldParams& p, Parameter theta, const TimeGrid& grid,
                           Evolution evolution = Evolution::controlled,
                           std::optional<double> halving_tolerance = std::nullopt);

/// Both generators from a single pass over the grid.
GeneratorPair generator_pair_numeric(const FieldParams& p, const TimeGrid& grid,
                                     Evolution evolution = Evolution::controlled,
                                     std::optional<double> halving_tolerance = std::nullopt);

/// Analytic generators for matched control with phi = 0. Only gamma, B and
/// omega are read; control fields are taken to equal the target.
/// Asymptotic mode returns (gamma T/2) sigma_x and (gamma B T^2/4) sigma_y.
GeneratorPair generator_closed_form(const FieldParams& p, double T, GeneratorMode mode);

/// a_x sigma_x + a_y sigma_y + a_z sigma_z.
Operator pauli_combination(double ax, double ay, double az);

}  // namespace acmag
