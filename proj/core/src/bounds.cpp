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

#include "acmag/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acmag/qfim.hpp"

namespace acmag {

namespace {

using std::numbers::pi;

// int_0^X |cos u| du. Each half-period [k pi, (k+1) pi] contributes 2; the
// remainder r = X - n pi adds sin r up to the next zero of cos, 2 - sin r after.
double abs_cos_unit(double X) {
  const double n = std::floor(X / pi);
  const double r = X - n * pi;
  const double tail = r <= 0.5 * pi ? std::sin(r) : 2.0 - std::sin(r);
  return 2.0 * n + tail;
}

// int_0^X u |sin u| du. On [k pi, (k+1) pi] the integral is (2k + 1) pi, so the
// whole half-periods give n^2 pi; the tail has antiderivative sin u - u cos u
// with sign (-1)^n.
double t_abs_sin_unit(double X) {
  const double n = std::floor(X / pi);
  const double a = n * pi;
  const double sign = std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0;
  const double anti_x = std::sin(X) - X * std::cos(X);
  const double anti_a = std::sin(a) - a * std::cos(a);
  return pi * n * n + sign * (anti_x - anti_a);
}

}  // namespace

double envelope_integral(EnvelopeKind kind, double omega, double T) {
  if (!(omega > 0.0)) throw std::invalid_argument("envelope_integral: omega must be > 0");
  if (!(T >= 0.0)) throw std::invalid_argument("envelope_integral: T must be >= 0");
  const double X = omega * T;
  switch (kind) {
    case EnvelopeKind::abs_cos:
      return abs_cos_unit(X) / omega;
    case EnvelopeKind::t_abs_sin:
      return t_abs_sin_unit(X) / (omega * omega);
  }
  throw std::invalid_argument("envelope_integral: unknown kind");
}

double single_param_qfi_bound(Parameter theta, const FieldParams& p, double T) {
  if (theta == Parameter::B) {
    const double s = p.gamma * envelope_integral(EnvelopeKind::abs_cos, p.omega, T);
    return 4.0 * s * s;
  }
  const double s = p.gamma * p.B * envelope_integral(EnvelopeKind::t_abs_sin, p.omega, T);
  return 4.0 * s * s;
}

StrategyComparison strategy_comparison(const FieldParams& p, double T, int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("strategy_comparison: repetitions must be >= 1");
  if (!(p.B > 0.0)) throw std::invalid_argument("strategy_comparison: B must be > 0");
  if (!(T > 0.0)) throw std::invalid_argument("strategy_comparison: T must be > 0");
  const Qfim2 f = qfim_closed_form(p, T);
  StrategyComparison s;
  s.f_b_max = single_param_qfi_bound(Parameter::B, p, T);
  s.f_w_max = single_param_qfi_bound(Parameter::omega, p, T);
  s.ratio_b = s.f_b_max / f.f_bb;
  s.ratio_w = s.f_w_max / f.f_ww;
  // Var_mp = 1/(M F_diag), Var_seq = 1/((M/2) F^max).
  s.seq_var_ratio_b = s.ratio_b / 2.0;
  s.seq_var_ratio_w = s.ratio_w / 2.0;
  s.std_ratio_b = std::sqrt(s.ratio_b);
  s.std_ratio_w = std::sqrt(s.ratio_w);
  s.regime_omega_T = p.omega * T;
  s.repetitions = repetitions;
  return s;
}

}  // namespace acmag
