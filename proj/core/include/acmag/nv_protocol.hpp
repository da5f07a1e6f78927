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

// Two-qubit NV sensing experiment (electron sensor (x) nitrogen ancilla) in
// the frame rotating at the control frequency: Hamiltonians, dynamical
// decoupling sequences, Bell-basis readout, sweeps and uncertainty extraction.
//
// Units follow dynamics.hpp: rad/us, us, gauss.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "acmag/dynamics.hpp"
#include "acmag/quantum_core.hpp"
#include "acmag/stats.hpp"

namespace acmag {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct NvParams {
  double D = kTwoPi * 2870.0;       // zero-field splitting
  double Q = -kTwoPi * 4.95;        // nuclear quadrupole
  double A = -kTwoPi * 2.16;        // hyperfine coupling
  double gamma_e = kTwoPi * 2.8;    // rad/(us G)
  double gamma_n = -kTwoPi * 0.31e-3;
  double B_z0 = 357.0;              // G

  /// Resonance D - gamma_e B_z0 - A/2, about 2 pi x 1871.48 MHz.
  double control_frequency() const { return D - gamma_e * B_z0 - 0.5 * A; }
  /// Rounded value quoted with the sweep data, 2 pi x 1870 MHz.
  static constexpr double kQuotedControlFrequency = kTwoPi * 1870.0;
  /// Effective qubit coupling gamma_e / sqrt(2).
  double coupling() const { return gamma_e / std::numbers::sqrt2; }
  void validate() const;
};

enum class NvSegment { target, control };

/// (A/4)(-sigma_z^e - sigma_z^e sigma_z^n); the nuclear sigma_z term is dropped.
Operator nv_interaction(const NvParams& nv);

/// Rotating-frame Hamiltonian of one segment, 4x4. The target segment is
/// gamma B [cos(D t + phi) sx^e - sin(D t + phi) sy^e] + H'_int with
/// D = omega - omega_c; the control segment is
/// -gamma B_c [cos phi_c sx^e - sin phi_c sy^e] + H'_int. gamma is always
/// nv.coupling(); p.gamma is not read.
Operator nv_rotating_hamiltonian(const NvParams& nv, const FieldParams& p, double t,
                                 NvSegment segment);

/// (sx (x) I) H (sx (x) I).
Operator conjugate_by_pi(const Operator& h);

struct PiPulseModel {
  enum class Kind { ideal, finite };
  Kind kind = Kind::ideal;
  double rabi_freq = kTwoPi * 20.0;  // finite only
  bool hyperfine_on = true;          // finite only

  static PiPulseModel ideal() { return {}; }
  static PiPulseModel finite(double rabi_freq, bool hyperfine_on = true) {
    return {Kind::finite, rabi_freq, hyperfine_on};
  }
  void validate() const;
  /// sx^e for ideal pulses; otherwise exp(-i ((Omega/2) sx^e + H'_int) pi/Omega).
  Operator propagator(const NvParams& nv) const;
};

/// Where the target field's clock stands at the start of block k.
enum class TargetClock {
  contiguous,  // k tau: the target field is seen as one continuous record
  interleaved  // 2k tau: the field keeps running during control blocks
};

enum class BlockKind { target, pi, control };

struct SequenceBlock {
  BlockKind kind = BlockKind::target;
  double clock = 0.0;     // target-field time at block start (target blocks)
  double duration = 0.0;  // evolution time; zero for pi pulses
};

struct PulseSequence {
  int N = 1;
  double tau = 0.0;
  std::vector<SequenceBlock> blocks;  // 4N entries
  double total_duration = 0.0;        // 2 N tau, pulses counted as instantaneous
  double control_phase = 0.0;         // phi_c = -phi
  TargetClock clock = TargetClock::contiguous;
  PiPulseModel pulse;
};

/// N repetitions of target(tau), pi, control(tau), pi.
PulseSequence build_sequence(int N, double tau, const PiPulseModel& pulse, const FieldParams& p,
                             TargetClock clock = TargetClock::contiguous);

/// Largest drive phase (D * dt) per midpoint step inside a target block.
inline constexpr double kMaxPhaseStep = 1e-3;

/// Full 4x4 propagator of the sequence. The control phase is taken from the
/// sequence, overriding p.phi_c.
Operator sequence_propagator(const PulseSequence& seq, const NvParams& nv, const FieldParams& p);

/// Final state; throws ConvergenceError when the norm drifts by more than 1e-10.
PureState simulate_sequence(const PulseSequence& seq, const NvParams& nv, const FieldParams& p,
                            const PureState& probe);

/// The evolution the sequence approximates: H_theta(t) + sx^e H_c sx^e over
/// target time N tau with no interaction term, on the sequence's clock.
Operator ideal_propagator(const PulseSequence& seq, const NvParams& nv, const FieldParams& p);

/// max-entry ||U - e^{i a} V|| minimized over the global phase a.
double phase_aligned_distance(const Operator& u, const Operator& v);

/// exp(-i pi (sx + sy + sz) / (3 sqrt 3)) on the electron.
Operator readout_rotation();

/// Phi+, (sx (x) I) Phi+, (sy (x) I) Phi+, (sz (x) I) Phi+.
std::vector<PureState> bell_basis();

/// Bell-basis probabilities after `electron_rotation` (2x2) acts on the sensor.
std::vector<double> bell_probabilities(const PureState& state, const Operator& electron_rotation);

/// sqrt(p (1 - p) / n) at p = 1/4.
double shot_noise_sigma(double n_avg);

enum class SignalSet { two = 2, three = 3 };

struct ReadoutModel {
  double n_avg = 3e6;
  double sigma = shot_noise_sigma(3e6);
  double spam_contrast = 1.0;  // c
  double spam_baseline = 0.0;  // b
  SignalSet signals_used = SignalSet::two;

  static ReadoutModel with_shots(double n_avg);
  int signal_count() const { return static_cast<int>(signals_used); }
  void validate() const;
};

/// U_r then Bell-basis projection, then p <- b + c p.
std::vector<double> bell_readout(const PureState& state, const ReadoutModel& readout = {});

struct SequenceConfig {
  int N = 8;
  double tau = 0.002;  // us
  PiPulseModel pulse;
  TargetClock clock = TargetClock::contiguous;
};

/// Noiseless signals 1 - p_i, i < readout.signal_count(), for the Bell probe.
std::vector<double> nv_signals(const NvParams& nv, const FieldParams& p, const SequenceConfig& seq,
                               const ReadoutModel& readout);

struct SweepResult {
  Parameter axis = Parameter::B;
  std::vector<double> values;
  std::vector<std::vector<double>> signals;  // per value, one entry per signal
  double operating_value = 0.0;              // B_c or omega_c
  std::vector<std::size_t> window;           // indices used for the slope fit
  std::vector<double> slopes;                // d signal_i / d theta
  std::vector<double> slope_stderr;
};

/// Points in the slope-fit window closest to the operating point.
inline constexpr std::size_t kSlopeWindow = 5;

/// Sweeps B or omega over `values` with the control held at `fixed`. With a
/// seed, each point gets Gaussian noise of std readout.sigma from a generator
/// seeded by (seed, point index). Slopes come from ordinary least squares on
/// the (up to) five values nearest the operating point.
SweepResult sweep_signal(Parameter axis, std::span<const double> values, const FieldParams& fixed,
                         const NvParams& nv, const SequenceConfig& seq,
                         const ReadoutModel& readout,
                         std::optional<std::uint64_t> noise_seed = std::nullopt,
                         std::uint64_t trial = 0);

/// `points` values evenly spaced over operating +- half_width.
std::vector<double> symmetric_range(double center, double half_width, int points);

struct Uncertainty {
  double delta_b = 0.0;
  double delta_w = 0.0;
  double delta_b_err = 0.0;  // propagated from slope standard errors
  double delta_w_err = 0.0;
  double condition = 0.0;    // 2-norm condition number of J
};

/// Largest accepted condition number of the signal Jacobian.
inline constexpr double kMaxJacobianCondition = 1e8;

/// Cov = sigma^2 (J^T J)^-1 with J_ij = d signal_i / d theta_j, which is
/// J^-1 sigma^2 J^-T for two signals and the least-squares analogue for three.
Uncertainty parameter_uncertainty(const SweepResult& b_sweep, const SweepResult& w_sweep,
                                  const ReadoutModel& readout);

/// Same, from an explicit Jacobian (rows: signals, columns: B, omega).
Uncertainty parameter_uncertainty(const Eigen::MatrixXd& jacobian, double sigma);

struct ScalingFit {
  double exponent = 0.0;
  double stderr_ = 0.0;
  double residual_rms = 0.0;  // rms of log residuals
};

/// Least-squares slope of log(delta) against log(N).
ScalingFit fit_scaling_exponent(std::span<const double> n_values, std::span<const double> deltas);

struct ScalingConfig {
  std::vector<int> n_values{1, 2, 3, 4, 5, 6, 7, 8};
  double tau = 0.002;
  PiPulseModel pulse;
  TargetClock clock = TargetClock::contiguous;
  ReadoutModel readout;
  double half_width_b = 0.02;     // G
  double half_width_omega = 0.5;  // rad/us
  int points = 5;
  std::optional<std::uint64_t> noise_seed;
};

struct ScalingPoint {
  int N = 0;
  Uncertainty u;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  ScalingFit fit_b;
  ScalingFit fit_w;
};

/// delta B and delta omega from B and omega sweeps at each N, then power-law
/// fits. `operating` supplies B_c, omega_c and phi; the sweeps vary B and
/// omega about them.
ScalingResult scaling_study(const NvParams& nv, const FieldParams& operating,
                            const ScalingConfig& config);

struct AdaptiveConfig {
  int rounds = 5;
  SequenceConfig seq;
  ReadoutModel readout;
  double window_b = 1.0;      // allowed |B_hat - B_0|, G
  double window_omega = 5.0;  // allowed |omega_hat - omega_0|, rad/us
  double step_b = 1e-3;       // Jacobian finite-difference steps
  double step_omega = 1e-2;
  bool noise = true;
};

struct AdaptiveEstimate {
  int round = 0;  // 0 is the initial guess
  double B = 0.0;
  double omega = 0.0;
};

/// Each round puts the control at the current estimate, draws noisy signals
/// from the true field, and takes one Newton step through the model Jacobian
/// at the estimate. Round r uses noise seeded by (seed, r). Throws
/// DivergenceError when an estimate leaves the window around the initial guess.
std::vector<AdaptiveEstimate> adaptive_loop(const NvParams& nv, const FieldParams& truth,
                                            double B_guess, double omega_guess,
                                            const AdaptiveConfig& config, std::uint64_t seed);

}  // namespace acmag
