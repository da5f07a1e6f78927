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

#include <cmath>
#include <numbers>

#include "acmag/bounds.hpp"
#include "acmag/qfim.hpp"
#include "acmag_cli/cli.hpp"

namespace acmag::cli {

namespace {

constexpr double kMHz = kTwoPi;

std::vector<double> log_grid(const ScanSettings& s) {
  std::vector<double> x(static_cast<std::size_t>(s.points));
  const double ratio = s.omega_T_max / s.omega_T_min;
  for (int i = 0; i < s.points; ++i) {
    x[static_cast<std::size_t>(i)] =
        s.omega_T_min * std::pow(ratio, static_cast<double>(i) / (s.points - 1));
  }
  x.back() = s.omega_T_max;
  return x;
}

FieldParams matched(const RunConfig& c) {
  return FieldParams::matched(c.field.gamma, c.field.B, c.field.omega, 0.0);
}

StudyResult qfim_scan(const RunConfig& c) {
  const FieldParams p = matched(c);
  StudyResult r;
  r.table.columns = {"omega_T", "f_bb", "f_bw", "f_ww", "det"};
  double min_normalized = std::numeric_limits<double>::infinity();
  Qfim2 last;
  for (double x : log_grid(c.scan)) {
    const double T = x / p.omega;
    last = qfim_closed_form(p, T);
    const double det = qfim_determinant(p, T);
    r.table.rows.push_back({x, last.f_bb, last.f_bw, last.f_ww, det});
    min_normalized = std::min(min_normalized, last.normalized_det());
  }
  r.results["min_normalized_det"] = min_normalized;
  r.results["final_offdiag_correlation"] = std::abs(last.f_bw) / std::sqrt(last.f_bb * last.f_ww);
  const double T = c.scan.omega_T_max / p.omega;
  r.results["final_f_bb_over_limit"] = last.f_bb / (p.gamma * p.gamma * T * T);
  r.results["final_f_ww_over_limit"] =
      p.B > 0.0 ? last.f_ww / (0.25 * p.gamma * p.gamma * p.B * p.B * std::pow(T, 4)) : 0.0;
  return r;
}

StudyResult convergence(const RunConfig& c) {
  const FieldParams p = matched(c);
  if (!(p.B > 0.0)) throw ConfigError("field.B_gauss: must be > 0 for convergence");
  const std::vector<double> x = log_grid(c.scan);
  StudyResult r;
  r.table.columns = {"omega_T", "dh_b", "dh_w", "df_bb", "df_ww", "df_bw"};
  for (const RelativeErrors& e : relative_error_curves(p, x)) {
    r.table.rows.push_back({e.omega_T, e.dh_b, e.dh_w, e.df_bb, e.df_ww, e.df_bw});
  }
  const EnvelopeSlopes s =
      relative_error_envelope_slopes(p, c.scan.omega_T_min, c.scan.omega_T_max, 31);
  r.results["slope_dh_b"] = s.dh_b;
  r.results["slope_dh_w"] = s.dh_w;
  r.results["slope_df_bb"] = s.df_bb;
  r.results["slope_df_ww"] = s.df_ww;
  r.results["slope_df_bw"] = s.df_bw;
  return r;
}

StudyResult bounds(const RunConfig& c) {
  const FieldParams p = matched(c);
  if (!(p.B > 0.0)) throw ConfigError("field.B_gauss: must be > 0 for bounds");
  StudyResult r;
  r.table.columns = {"omega_T", "f_b_max", "f_w_max", "f_bb", "f_ww", "ratio_b", "ratio_w",
                     "seq_var_ratio_b", "seq_var_ratio_w"};
  StrategyComparison last;
  for (double x : log_grid(c.scan)) {
    const double T = x / p.omega;
    last = strategy_comparison(p, T, 1);
    const Qfim2 f = qfim_closed_form(p, T);
    r.table.rows.push_back({x, last.f_b_max, last.f_w_max, f.f_bb, f.f_ww, last.ratio_b,
                            last.ratio_w, last.seq_var_ratio_b, last.seq_var_ratio_w});
  }
  r.results["final_ratio_b"] = last.ratio_b;
  r.results["final_ratio_w"] = last.ratio_w;
  r.results["final_seq_var_ratio_b"] = last.seq_var_ratio_b;
  r.results["final_seq_var_ratio_w"] = last.seq_var_ratio_w;
  r.results["final_std_ratio_b"] = last.std_ratio_b;
  r.results["final_std_ratio_w"] = last.std_ratio_w;
  r.results["limit_ratio"] = 16.0 / (std::numbers::pi * std::numbers::pi);
  r.results["limit_seq_var_ratio"] = 8.0 / (std::numbers::pi * std::numbers::pi);
  r.results["limit_std_ratio"] = 4.0 / std::numbers::pi;
  return r;
}

StudyResult probe_search_study(const RunConfig& c) {
  const FieldParams p = matched(c);
  const GeneratorPair g = generator_closed_form(p, c.T, c.probe.generators);
  const ProbeSearchResult s = probe_search(g, c.probe.samples, c.seed, c.probe.threads);
  StudyResult r;
  r.table.columns = {"index", "det", "f_bb", "f_bw", "f_ww", "sensor_purity"};
  for (const ProbeSample& x : s.samples) {
    r.table.rows.push_back({static_cast<double>(x.index), x.det, x.qfim.f_bb, x.qfim.f_bw,
                            x.qfim.f_ww, x.sensor_purity});
  }
  r.results["bell_det"] = s.bell_det;
  r.results["max_det"] = s.max_det;
  r.results["max_excess"] = s.max_excess;
  r.results["argmax"] = s.argmax;
  return r;
}

// The NV studies sweep about the control setting (B_c, omega_c).
FieldParams nv_operating(const RunConfig& c) {
  FieldParams p = c.field;
  p.gamma = c.nv.coupling();
  p.B = p.B_c;
  p.omega = p.omega_c;
  return p;
}

void sweep_rows(const SweepResult& s, double axis_code, double unit, Table& t) {
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    std::vector<double> row{axis_code, s.values[i] / unit};
    row.insert(row.end(), s.signals[i].begin(), s.signals[i].end());
    t.rows.push_back(std::move(row));
  }
}

StudyResult nv_sweep(const RunConfig& c) {
  const FieldParams op = nv_operating(c);
  const std::vector<double> bv = symmetric_range(op.B_c, c.sweep.half_width_b, c.sweep.points);
  const std::vector<double> wv =
      symmetric_range(op.omega_c, c.sweep.half_width_omega, c.sweep.points);
  std::optional<std::uint64_t> seed;
  if (c.sweep.noise) seed = c.seed;
  const SweepResult sb = sweep_signal(Parameter::B, bv, op, c.nv, c.sequence, c.readout, seed, 0);
  const SweepResult sw = sweep_signal(Parameter::omega, wv, op, c.nv, c.sequence, c.readout, seed, 1);
  const Uncertainty u = parameter_uncertainty(sb, sw, c.readout);

  StudyResult r;
  r.table.columns = {"axis", "value"};
  for (int i = 1; i <= c.readout.signal_count(); ++i) {
    r.table.columns.push_back("signal_" + std::to_string(i));
  }
  sweep_rows(sb, 0.0, 1.0, r.table);
  sweep_rows(sw, 1.0, kMHz, r.table);
  r.results["axis_codes"] = "0: B in gauss, 1: omega in MHz";
  r.results["slopes_B_per_gauss"] = sb.slopes;
  r.results["slopes_omega_per_rad_per_us"] = sw.slopes;
  r.results["delta_B_gauss"] = u.delta_b;
  r.results["delta_omega_rad_per_us"] = u.delta_w;
  r.results["delta_B_err_gauss"] = u.delta_b_err;
  r.results["delta_omega_err_rad_per_us"] = u.delta_w_err;
  r.results["jacobian_condition"] = u.condition;
  return r;
}

StudyResult nv_scaling(const RunConfig& c) {
  ScalingConfig s;
  s.n_values = c.scaling_n;
  s.tau = c.sequence.tau;
  s.pulse = c.sequence.pulse;
  s.clock = c.sequence.clock;
  s.readout = c.readout;
  s.half_width_b = c.sweep.half_width_b;
  s.half_width_omega = c.sweep.half_width_omega;
  s.points = c.sweep.points;
  if (c.scaling_noise) s.noise_seed = c.seed;
  const ScalingResult res = scaling_study(c.nv, nv_operating(c), s);

  StudyResult r;
  r.table.columns = {"N", "delta_b", "delta_w", "delta_b_err", "delta_w_err", "condition"};
  for (const ScalingPoint& p : res.points) {
    r.table.rows.push_back({static_cast<double>(p.N), p.u.delta_b, p.u.delta_w, p.u.delta_b_err,
                            p.u.delta_w_err, p.u.condition});
  }
  r.results["exponent_b"] = res.fit_b.exponent;
  r.results["exponent_b_stderr"] = res.fit_b.stderr_;
  r.results["exponent_w"] = res.fit_w.exponent;
  r.results["exponent_w_stderr"] = res.fit_w.stderr_;
  r.results["residual_rms_b"] = res.fit_b.residual_rms;
  r.results["residual_rms_w"] = res.fit_w.residual_rms;
  return r;
}

StudyResult adaptive(const RunConfig& c) {
  FieldParams truth = c.field;
  truth.gamma = c.nv.coupling();
  AdaptiveConfig a;
  a.rounds = c.adaptive.rounds;
  a.seq = c.sequence;
  a.readout = c.readout;
  a.window_b = c.adaptive.window_b;
  a.window_omega = c.adaptive.window_omega;
  a.noise = c.adaptive.noise;
  const std::vector<AdaptiveEstimate> path =
      adaptive_loop(c.nv, truth, c.adaptive.B_guess, c.adaptive.omega_guess, a, c.seed);

  StudyResult r;
  r.table.columns = {"round", "B_hat_gauss", "omega_hat_mhz", "B_error_gauss", "omega_error_mhz"};
  for (const AdaptiveEstimate& e : path) {
    r.table.rows.push_back({static_cast<double>(e.round), e.B, e.omega / kMHz, e.B - truth.B,
                            (e.omega - truth.omega) / kMHz});
  }
  const AdaptiveEstimate& first = path.front();
  const AdaptiveEstimate& last = path.back();
  r.results["initial_B_error_gauss"] = first.B - truth.B;
  r.results["initial_omega_error_mhz"] = (first.omega - truth.omega) / kMHz;
  r.results["final_B_error_gauss"] = last.B - truth.B;
  r.results["final_omega_error_mhz"] = (last.omega - truth.omega) / kMHz;
  r.results["rounds"] = last.round;
  return r;
}

}  // namespace

StudyResult run_study(const RunConfig& config) {
  switch (config.command) {
    case Command::qfim_scan: return qfim_scan(config);
    case Command::convergence: return convergence(config);
    case Command::bounds: return bounds(config);
    case Command::probe_search: return probe_search_study(config);
    case Command::nv_sweep: return nv_sweep(config);
    case Command::nv_scaling: return nv_scaling(config);
    case Command::adaptive: return adaptive(config);
  }
  throw ConfigError("unknown command");
}

}  // namespace acmag::cli
