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

// Single-parameter information limits from the spectral range of d_theta H0,
// and the simultaneous-versus-sequential comparison built on them.

#include "acmag/dynamics.hpp"

namespace acmag {

enum class EnvelopeKind {
  abs_cos,   // int_0^T |cos(omega t)| dt
  t_abs_sin  // int_0^T t |sin(omega t)| dt
};

/// Exact value, summed over whole half-periods plus the final partial one.
double envelope_integral(EnvelopeKind kind, double omega, double T);

/// 4 (gamma int |f_theta| dt)^2, with f_B = cos(omega t) and
/// f_omega = B t sin(omega t).
double single_param_qfi_bound(Parameter theta, const FieldParams& p, double T);

struct StrategyComparison {
  double f_b_max = 0.0;
  double f_w_max = 0.0;
  double ratio_b = 0.0;          // F_B^max / F_BB
  double ratio_w = 0.0;          // F_w^max / F_ww
  double seq_var_ratio_b = 0.0;  // Var_mp / Var_seq = F^max / (2 F_diag)
  double seq_var_ratio_w = 0.0;
  double std_ratio_b = 0.0;      // delta_mp / delta_sp = sqrt(F^max / F_diag)
  double std_ratio_w = 0.0;
  double regime_omega_T = 0.0;
  int repetitions = 1;
};

/// The sequential strategy spends M/2 repetitions on each parameter with the
/// single-parameter optimum; the simultaneous one spends all M on the
/// matched-control protocol. The ratios do not depend on M.
StrategyComparison strategy_comparison(const FieldParams& p, double T, int repetitions);

}  // namespace acmag
