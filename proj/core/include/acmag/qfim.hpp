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

// Quantum Fisher information for the joint (B, omega) problem: assembly from
// generators, the matched-control closed forms, the Cramer-Rao bound, probe
// optimality, and classical Fisher information of concrete measurements.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "acmag/dynamics.hpp"
#include "acmag/quantum_core.hpp"

namespace acmag {

/// det/||F||_F^2 below this is treated as singular.
inline constexpr double kSingularityThreshold = 1e-10;

/// Symmetric 2x2 Fisher matrix in the (B, omega) ordering.
struct Qfim2 {
  double f_bb = 0.0;
  double f_bw = 0.0;
  double f_ww = 0.0;

  double det() const { return f_bb * f_ww - f_bw * f_bw; }
  double frobenius_norm2() const { return f_bb * f_bb + 2.0 * f_bw * f_bw + f_ww * f_ww; }
  /// det / ||F||_F^2, scale-free; zero for the zero matrix.
  double normalized_det() const;
  bool is_singular() const { return normalized_det() < kSingularityThreshold; }
  Eigen::Matrix2d matrix() const;
};

/// Covariance lower bound (1/M) F^-1.
struct CovBound {
  double var_b = 0.0;
  double var_w = 0.0;
  double cov_bw = 0.0;
  int repetitions = 1;
};

/// F_ab = 4 Cov(h_a, h_b). With `ancilla`, the probe is two-qubit and the
/// generators act as h (x) I on the sensor.
Qfim2 qfim_from_generators(const PureState& probe, const GeneratorPair& g, bool ancilla);

/// Exact matched-control QFIM for the Bell probe (reads gamma, B, omega).
Qfim2 qfim_closed_form(const FieldParams& p, double T);

/// gamma^4 B^2 T^4 / (16 omega^2) * (2 omega T - sin 2 omega T)^2.
double qfim_determinant(const FieldParams& p, double T);

/// Throws SingularFisherError when f.is_singular().
CovBound qcrb(const Qfim2& f, int repetitions);

/// Relative deviations of the exact generators and QFIM from their long-time
/// limits at one value of omega*T.
struct RelativeErrors {
  double omega_T = 0.0;
  double dh_b = 0.0;   // ||h_B - h_B^inf|| / ||h_B^inf||
  double dh_w = 0.0;   // ||h_w - h_w^inf|| / ||h_w^inf||
  double df_bb = 0.0;  // |F_BB - F_BB^inf| / F_BB^inf
  double df_ww = 0.0;  // |F_ww - F_ww^inf| / F_ww^inf
  double df_bw = 0.0;  // |F_Bw| / sqrt(F_BB^inf F_ww^inf)
};

/// One row per omega*T value; T is taken as omega_T / p.omega. Values must exceed 2 pi.
std::vector<RelativeErrors> relative_error_curves(const FieldParams& p,
                                                  std::span<const double> omega_T);

/// Log-log slopes of the upper envelopes of the five relative-error curves.
/// The envelope at x is the maximum of the curve over [x, x + pi], which spans
/// one full oscillation of every curve.
struct EnvelopeSlopes {
  double dh_b = 0.0;
  double dh_w = 0.0;
  double df_bb = 0.0;
  double df_ww = 0.0;
  double df_bw = 0.0;
};

EnvelopeSlopes relative_error_envelope_slopes(const FieldParams& p, double omega_T_lo,
                                              double omega_T_hi, int points);

/// |Tr(rho_S U_rel)| with rho_S the sensor (first-qubit) reduced state.
double probe_overlap(const PureState& probe, const Operator& u_rel);

/// The same overlap via the rotation form U_rel ~ exp(i a k.sigma):
/// sqrt(cos^2 a + (r.k)^2 sin^2 a), r the Bloch vector of rho_S.
double probe_overlap_closed_form(const PureState& probe, const Operator& u_rel);

/// Outcome probabilities as a function of (B, omega).
using ProbabilityFn = std::function<std::vector<double>(double B, double omega)>;

struct FiniteDifferenceStep {
  double dB = 0.0;
  double domega = 0.0;
};

/// F^cl_ab = sum_i d_a p_i d_b p_i / p_i by central differences. Defaults to
/// steps of 1e-4 B and 1e-4 omega; when the step-h and step-h/2 derivatives
/// disagree by more than 1e-4 relative, the Richardson combination is used.
Qfim2 classical_fim(const ProbabilityFn& prob, const FieldParams& at,
                    std::optional<FiniteDifferenceStep> step = std::nullopt);

/// Haar-distributed pure state; deterministic in (seed, index).
PureState haar_random_state(int dim, std::uint64_t seed, std::uint64_t index);

struct ProbeSample {
  std::size_t index = 0;
  Qfim2 qfim;
  double det = 0.0;
  double sensor_purity = 0.0;  // Tr(rho_S^2)
};

struct ProbeSearchResult {
  Qfim2 bell;
  double bell_det = 0.0;
  std::vector<ProbeSample> samples;  // ordered by index
  double max_det = 0.0;
  std::size_t argmax = 0;
  double max_excess = 0.0;  // max_det - bell_det
};

/// QFIM determinant for `samples` Haar-random two-qubit probes under g (x) I,
/// compared with the Bell probe. Samples are split over `threads` workers
/// (0 = hardware concurrency); results do not depend on the split.
ProbeSearchResult probe_search(const GeneratorPair& g, std::size_t samples, std::uint64_t seed,
                               unsigned threads = 0);

/// O_B = sigma_z (x) sigma_y and O_omega = sigma_x (x) sigma_z.
struct ObservablePair {
  Operator o_b;
  Operator o_w;
};
ObservablePair optimal_observables();

/// Common eigenbasis of two commuting Hermitian operators with a
/// non-degenerate joint spectrum.
std::vector<PureState> joint_eigenbasis(const Operator& a, const Operator& b);

std::vector<double> measurement_probabilities(const PureState& state,
                                              std::span<const PureState> basis);

/// Classical FIM of the joint O_B/O_omega measurement on the Bell probe after
/// the controlled evolution, with the known reference evolution undone before
/// readout, next to the closed-form QFIM.
struct SaturationCheck {
  Qfim2 classical;
  Qfim2 quantum;
  double rel_err_bb = 0.0;
  double rel_err_ww = 0.0;
};

SaturationCheck measurement_saturation(const FieldParams& p, double T, double steps_per_radian = 100.0);

}  // namespace acmag
