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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "acmag/error.hpp"
#include "acmag/nv_protocol.hpp"

namespace acmag {

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

void add_noise(std::vector<double>& signals, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& s : signals) s += normal(rng);
}

double& axis_value(FieldParams& p, Parameter axis) { return axis == Parameter::B ? p.B : p.omega; }

double condition_number(const Eigen::MatrixXd& j) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> nv_signals(const NvParams& nv, const FieldParams& p, const SequenceConfig& seq,
                               const ReadoutModel& readout) {
  const PulseSequence s = build_sequence(seq.N, seq.tau, seq.pulse, p, seq.clock);
  const std::vector<double> probs = bell_readout(simulate_sequence(s, nv, p, bell_phi_plus()), readout);
  std::vector<double> out(static_cast<std::size_t>(readout.signal_count()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - probs[i];
  return out;
}

std::vector<double> symmetric_range(double center, double half_width, int points) {
  if (points < 1) throw std::invalid_argument("symmetric_range: points must be >= 1");
  if (!(half_width >= 0.0)) throw std::invalid_argument("symmetric_range: half_width must be >= 0");
  if (points == 1) return {center};
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] = center + half_width * (2.0 * i / (points - 1) - 1.0);
  }
  return v;
}

SweepResult sweep_signal(Parameter axis, std::span<const double> values, const FieldParams& fixed,
                         const NvParams& nv, const SequenceConfig& seq,
                         const ReadoutModel& readout, std::optional<std::uint64_t> noise_seed,
                         std::uint64_t trial) {
  readout.validate();
  if (values.size() < 3) {
    throw std::invalid_argument("sweep_signal: need at least 3 points for a slope fit, got " +
                                std::to_string(values.size()));
  }
  SweepResult r;
  r.axis = axis;
  r.values.assign(values.begin(), values.end());
  r.operating_value = axis == Parameter::B ? fixed.B_c : fixed.omega_c;
  const auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
  if (!(*hi > *lo)) throw std::invalid_argument("sweep_signal: sweep range has zero width");
  if (r.operating_value < *lo || r.operating_value > *hi) {
    throw std::invalid_argument("sweep_signal: range does not bracket the operating point");
  }

  r.signals.resize(r.values.size());
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    FieldParams q = fixed;
    axis_value(q, axis) = r.values[i];
    r.signals[i] = nv_signals(nv, q, seq, readout);
    if (noise_seed) {
      std::mt19937_64 rng = seeded_rng(*noise_seed, i, trial);
      add_noise(r.signals[i], readout.sigma, rng);
    }
  }

  std::vector<std::size_t> order(r.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(r.values[a] - r.operating_value) < std::abs(r.values[b] - r.operating_value);
  });
  order.resize(std::min(kSlopeWindow, order.size()));
  std::sort(order.begin(), order.end());
  r.window = order;

  std::vector<double> x;
  for (std::size_t i : r.window) x.push_back(r.values[i]);
  for (int s = 0; s < readout.signal_count(); ++s) {
    std::vector<double> y;
    for (std::size_t i : r.window) y.push_back(r.signals[i][static_cast<std::size_t>(s)]);
    const LinearFit fit = fit_line(x, y);
    r.slopes.push_back(fit.slope);
    r.slope_stderr.push_back(fit.slope_stderr);
  }
  return r;
}

Uncertainty parameter_uncertainty(const Eigen::MatrixXd& jacobian, double sigma) {
  if (jacobian.cols() != 2 || jacobian.rows() < 2) {
    throw std::invalid_argument("parameter_uncertainty: Jacobian must be k x 2 with k >= 2");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("parameter_uncertainty: sigma must be > 0");
  Uncertainty u;
  u.condition = condition_number(jacobian);
  if (!(u.condition <= kMaxJacobianCondition)) throw SingularJacobianError(u.condition);
  const Eigen::Matrix2d cov = sigma * sigma * (jacobian.transpose() * jacobian).inverse();
  u.delta_b = std::sqrt(cov(0, 0));
  u.delta_w = std::sqrt(cov(1, 1));
  return u;
}

Uncertainty parameter_uncertainty(const SweepResult& b_sweep, const SweepResult& w_sweep,
                                  const ReadoutModel& readout) {
  readout.validate();
  if (b_sweep.axis != Parameter::B || w_sweep.axis != Parameter::omega) {
    throw std::invalid_argument("parameter_uncertainty: expects a B sweep and an omega sweep");
  }
  const int k = readout.signal_count();
  if (static_cast<int>(b_sweep.slopes.size()) < k || static_cast<int>(w_sweep.slopes.size()) < k) {
    throw std::invalid_argument("parameter_uncertainty: sweeps carry fewer signals than requested");
  }
  Eigen::MatrixXd j(k, 2);
  Eigen::MatrixXd se(k, 2);
  for (int i = 0; i < k; ++i) {
    j(i, 0) = b_sweep.slopes[static_cast<std::size_t>(i)];
    j(i, 1) = w_sweep.slopes[static_cast<std::size_t>(i)];
    se(i, 0) = b_sweep.slope_stderr[static_cast<std::size_t>(i)];
    se(i, 1) = w_sweep.slope_stderr[static_cast<std::size_t>(i)];
  }
  Uncertainty u = parameter_uncertainty(j, readout.sigma);

  // First-order propagation of the slope standard errors.
  double var_b = 0.0, var_w = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < 2; ++c) {
      if (se(i, c) == 0.0) continue;
      const double h = 1e-6 * std::max(std::abs(j(i, c)), 1e-300);
      Eigen::MatrixXd jp = j, jm = j;
      jp(i, c) += h;
      jm(i, c) -= h;
      const Uncertainty up = parameter_uncertainty(jp, readout.sigma);
      const Uncertainty um = parameter_uncertainty(jm, readout.sigma);
      const double db = (up.delta_b - um.delta_b) / (2.0 * h) * se(i, c);
      const double dw = (up.delta_w - um.delta_w) / (2.0 * h) * se(i, c);
      var_b += db * db;
      var_w += dw * dw;
    }
  }
  u.delta_b_err = std::sqrt(var_b);
  u.delta_w_err = std::sqrt(var_w);
  return u;
}

ScalingFit fit_scaling_exponent(std::span<const double> n_values, std::span<const double> deltas) {
  if (n_values.size() != deltas.size()) {
    throw std::invalid_argument("fit_scaling_exponent: N and delta lists differ in length");
  }
  if (n_values.size() < 3) throw std::invalid_argument("fit_scaling_exponent: need >= 3 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (!(n_values[i] > 0.0) || !(deltas[i] > 0.0)) {
      throw std::invalid_argument("fit_scaling_exponent: inputs must be positive");
    }
    lx.push_back(std::log(n_values[i]));
    ly.push_back(std::log(deltas[i]));
  }
  const LinearFit fit = fit_line(lx, ly);
  return {fit.slope, fit.slope_stderr, fit.residual_rms};
}

ScalingResult scaling_study(const NvParams& nv, const FieldParams& operating,
                            const ScalingConfig& config) {
  nv.validate();
  config.readout.validate();
  if (config.n_values.size() < 3) throw std::invalid_argument("scaling_study: need >= 3 N values");
  FieldParams fixed = operating;
  fixed.B = fixed.B_c;
  fixed.omega = fixed.omega_c;
  const std::vector<double> b_values = symmetric_range(fixed.B_c, config.half_width_b, config.points);
  const std::vector<double> w_values =
      symmetric_range(fixed.omega_c, config.half_width_omega, config.points);

  ScalingResult out;
  std::vector<double> ns, db, dw;
  for (int n : config.n_values) {
    const SequenceConfig seq{n, config.tau, config.pulse, config.clock};
    const std::uint64_t trial = 2 * static_cast<std::uint64_t>(n);
    const SweepResult sb =
        sweep_signal(Parameter::B, b_values, fixed, nv, seq, config.readout, config.noise_seed, trial);
    const SweepResult sw = sweep_signal(Parameter::omega, w_values, fixed, nv, seq, config.readout,
                                        config.noise_seed, trial + 1);
    const Uncertainty u = parameter_uncertainty(sb, sw, config.readout);
    out.points.push_back({n, u});
    ns.push_back(n);
    db.push_back(u.delta_b);
    dw.push_back(u.delta_w);
  }
  out.fit_b = fit_scaling_exponent(ns, db);
  out.fit_w = fit_scaling_exponent(ns, dw);
  return out;
}

std::vector<AdaptiveEstimate> adaptive_loop(const NvParams& nv, const FieldParams& truth,
                                            double B_guess, double omega_guess,
                                            const AdaptiveConfig& config, std::uint64_t seed) {
  if (config.rounds < 0) throw std::invalid_argument("adaptive_loop: rounds must be >= 0");
  if (!(config.step_b > 0.0) || !(config.step_omega > 0.0)) {
    throw std::invalid_argument("adaptive_loop: Jacobian steps must be > 0");
  }
  config.readout.validate();
  std::vector<AdaptiveEstimate> path{{0, B_guess, omega_guess}};
  const int k = config.readout.signal_count();

  for (int round = 1; round <= config.rounds; ++round) {
    const AdaptiveEstimate& est = path.back();
    FieldParams ctl = truth;
    ctl.B_c = est.B;
    ctl.omega_c = est.omega;
    std::vector<double> measured = nv_signals(nv, ctl, config.seq, config.readout);
    if (config.noise) {
      std::mt19937_64 rng = seeded_rng(seed, static_cast<std::uint64_t>(round), 0);
      add_noise(measured, config.readout.sigma, rng);
    }

    // Model: the truth sits at the current estimate.
    auto model = [&](double b, double w) {
      FieldParams m = ctl;
      m.B = b;
      m.omega = w;
      return nv_signals(nv, m, config.seq, config.readout);
    };
    const std::vector<double> at = model(est.B, est.omega);
    const std::vector<double> bp = model(est.B + config.step_b, est.omega);
    const std::vector<double> bm = model(est.B - config.step_b, est.omega);
    const std::vector<double> wp = model(est.B, est.omega + config.step_omega);
    const std::vector<double> wm = model(est.B, est.omega - config.step_omega);
    Eigen::MatrixXd j(k, 2);
    Eigen::VectorXd r(k);
    for (int i = 0; i < k; ++i) {
      const auto s = static_cast<std::size_t>(i);
      j(i, 0) = (bp[s] - bm[s]) / (2.0 * config.step_b);
      j(i, 1) = (wp[s] - wm[s]) / (2.0 * config.step_omega);
      r(i) = measured[s] - at[s];
    }
    const double cond = condition_number(j);
    if (!(cond <= kMaxJacobianCondition)) throw SingularJacobianError(cond);
    const Eigen::Vector2d step = (j.transpose() * j).ldlt().solve(j.transpose() * r);

    AdaptiveEstimate next{round, est.B + step(0), est.omega + step(1)};
    if (!std::isfinite(next.B) || !std::isfinite(next.omega) ||
        std::abs(next.B - B_guess) > config.window_b ||
        std::abs(next.omega - omega_guess) > config.window_omega) {
      throw DivergenceError(round, "estimate (" + std::to_string(next.B) + " G, " +
                                       std::to_string(next.omega) + " rad/us) left the window");
    }
    path.push_back(next);
  }
  return path;
}

}  // namespace acmag
