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

#include "acmag/qfim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "acmag/error.hpp"
#include "acmag/stats.hpp"

namespace acmag {

double Qfim2::normalized_det() const {
  const double n2 = frobenius_norm2();
  return n2 > 0.0 ? det() / n2 : 0.0;
}

Eigen::Matrix2d Qfim2::matrix() const { return (Eigen::Matrix2d() << f_bb, f_bw, f_bw, f_ww).finished(); }

Qfim2 qfim_from_generators(const PureState& probe, const GeneratorPair& g, bool ancilla) {
  const Operator hb = ancilla ? tensor(g.h_b, Operator::identity(2)) : g.h_b;
  const Operator hw = ancilla ? tensor(g.h_omega, Operator::identity(2)) : g.h_omega;
  if (probe.dim() != hb.dim()) {
    throw std::invalid_argument("qfim_from_generators: probe dimension " +
                                std::to_string(probe.dim()) + " does not match generators (" +
                                std::to_string(hb.dim()) + ")");
  }
  Qfim2 f;
  f.f_bb = 4.0 * pure_cov(probe, hb, hb);
  f.f_bw = 4.0 * pure_cov(probe, hb, hw);
  f.f_ww = 4.0 * pure_cov(probe, hw, hw);
  return f;
}

namespace {

void require_closed_form_params(const FieldParams& p, double T, const char* who) {
  if (!(p.omega > 0.0)) throw std::invalid_argument(std::string(who) + ": omega must be > 0");
  if (!(p.gamma > 0.0)) throw std::invalid_argument(std::string(who) + ": gamma must be > 0");
  if (p.B < 0.0) throw std::invalid_argument(std::string(who) + ": B must be >= 0");
  if (!(T >= 0.0)) throw std::invalid_argument(std::string(who) + ": T must be >= 0");
}

RelativeErrors relative_errors_at(const FieldParams& p, double x) {
  const double T = x / p.omega;
  const GeneratorPair exact = generator_closed_form(p, T, GeneratorMode::exact);
  const GeneratorPair limit = generator_closed_form(p, T, GeneratorMode::asymptotic);
  const Qfim2 f = qfim_closed_form(p, T);
  const double g2 = p.gamma * p.gamma;
  const double f_bb_inf = g2 * T * T;
  const double f_ww_inf = 0.25 * g2 * p.B * p.B * std::pow(T, 4);

  RelativeErrors r;
  r.omega_T = x;
  r.dh_b = (exact.h_b - limit.h_b).frobenius_norm() / limit.h_b.frobenius_norm();
  r.dh_w = (exact.h_omega - limit.h_omega).frobenius_norm() / limit.h_omega.frobenius_norm();
  r.df_bb = std::abs(f.f_bb - f_bb_inf) / f_bb_inf;
  r.df_ww = std::abs(f.f_ww - f_ww_inf) / f_ww_inf;
  r.df_bw = std::abs(f.f_bw) / std::sqrt(f_bb_inf * f_ww_inf);
  return r;
}

}  // namespace

Qfim2 qfim_closed_form(const FieldParams& p, double T) {
  require_closed_form_params(p, T, "qfim_closed_form");
  const double g2 = p.gamma * p.gamma;
  const double b = p.B;
  const double w = p.omega;
  const double x = w * T;
  const double c2 = std::cos(2.0 * x);
  const double s2 = std::sin(2.0 * x);
  Qfim2 f;
  f.f_bb = g2 * (1.0 + 2.0 * x * x - c2 + 2.0 * x * s2) / (2.0 * w * w);
  f.f_bw = g2 * b * (-1.0 - x * x + (1.0 + 3.0 * x * x) * c2) / (4.0 * w * w * w);
  f.f_ww = g2 * b * b *
           (1.0 + 4.0 * x * x + 2.0 * std::pow(x, 4) - (1.0 + 2.0 * x * x) * (c2 + 2.0 * x * s2)) /
           (8.0 * std::pow(w, 4));
  return f;
}

double qfim_determinant(const FieldParams& p, double T) {
  require_closed_form_params(p, T, "qfim_determinant");
  const double x = p.omega * T;
  const double gap = 2.0 * x - std::sin(2.0 * x);
  return std::pow(p.gamma, 4) * p.B * p.B * std::pow(T, 4) / (16.0 * p.omega * p.omega) * gap * gap;
}

CovBound qcrb(const Qfim2& f, int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("qcrb: repetitions must be >= 1");
  if (f.is_singular()) {
    throw SingularFisherError("det/|F|^2 = " + std::to_string(f.normalized_det()));
  }
  const double scale = 1.0 / (f.det() * repetitions);
  CovBound c;
  c.var_b = f.f_ww * scale;
  c.var_w = f.f_bb * scale;
  c.cov_bw = -f.f_bw * scale;
  c.repetitions = repetitions;
  return c;
}

std::vector<RelativeErrors> relative_error_curves(const FieldParams& p,
                                                  std::span<const double> omega_T) {
  if (!(p.B > 0.0)) throw std::invalid_argument("relative_error_curves: B must be > 0");
  std::vector<RelativeErrors> rows;
  rows.reserve(omega_T.size());
  for (double x : omega_T) {
    if (!(x > 2.0 * std::numbers::pi)) {
      throw std::invalid_argument("relative_error_curves: omega*T must exceed 2 pi, got " +
                                  std::to_string(x));
    }
    rows.push_back(relative_errors_at(p, x));
  }
  return rows;
}

EnvelopeSlopes relative_error_envelope_slopes(const FieldParams& p, double lo, double hi,
                                              int points) {
  if (!(lo > 2.0 * std::numbers::pi) || !(hi > lo) || points < 3) {
    throw std::invalid_argument("relative_error_envelope_slopes: need 2 pi < lo < hi and >= 3 points");
  }
  constexpr int kWindowSamples = 64;
  std::vector<double> lx;
  std::array<std::vector<double>, 5> ly;
  for (int j = 0; j < points; ++j) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(j) / (points - 1));
    std::array<double, 5> env{};
    for (int s = 0; s <= kWindowSamples; ++s) {
      const double xs = x + std::numbers::pi * s / kWindowSamples;
      const RelativeErrors r = relative_errors_at(p, xs);
      const std::array<double, 5> v{r.dh_b, r.dh_w, r.df_bb, r.df_ww, r.df_bw};
      for (int c = 0; c < 5; ++c) env[c] = std::max(env[c], v[c]);
    }
    lx.push_back(std::log(x));
    for (int c = 0; c < 5; ++c) ly[c].push_back(std::log(env[c]));
  }
  EnvelopeSlopes out;
  out.dh_b = fit_line(lx, ly[0]).slope;
  out.dh_w = fit_line(lx, ly[1]).slope;
  out.df_bb = fit_line(lx, ly[2]).slope;
  out.df_ww = fit_line(lx, ly[3]).slope;
  out.df_bw = fit_line(lx, ly[4]).slope;
  return out;
}

namespace {

Operator sensor_state(const PureState& probe) {
  if (probe.dim() != 4) throw std::invalid_argument("probe must be a two-qubit state");
  return partial_trace(probe.density(), Keep::first);
}

void require_unitary_2(const Operator& u) {
  if (u.dim() != 2) throw std::invalid_argument("U_rel must be a single-qubit operator");
  if (!u.is_unitary(1e-10)) throw std::invalid_argument("U_rel is not unitary");
}

}  // namespace

double probe_overlap(const PureState& probe, const Operator& u_rel) {
  require_unitary_2(u_rel);
  return std::abs((sensor_state(probe) * u_rel).trace());
}

double probe_overlap_closed_form(const PureState& probe, const Operator& u_rel) {
  require_unitary_2(u_rel);
  const Operator rho = sensor_state(probe);
  const double rx = 2.0 * rho(0, 1).real();
  const double ry = -2.0 * rho(0, 1).imag();
  const double rz = (rho(0, 0) - rho(1, 1)).real();

  // Strip the global phase so that V = cos a I + i sin a (k.sigma) lies in SU(2).
  const Complex root = std::sqrt(u_rel.matrix().determinant());
  const Eigen::Matrix2cd v = u_rel.matrix() / root;
  const double cos_a = 0.5 * v.trace().real();
  const Complex two_i(0.0, 2.0);
  const double sk_x = ((v(0, 1) + v(1, 0)) / two_i).real();
  const double sk_y = (0.5 * (v(0, 1) - v(1, 0))).real();
  const double sk_z = ((v(0, 0) - v(1, 1)) / two_i).real();
  const double proj = rx * sk_x + ry * sk_y + rz * sk_z;  // (r.k) sin a
  return std::sqrt(cos_a * cos_a + proj * proj);
}

Qfim2 classical_fim(const ProbabilityFn& prob, const FieldParams& at,
                    std::optional<FiniteDifferenceStep> step) {
  FiniteDifferenceStep h = step.value_or(FiniteDifferenceStep{
      at.B > 0.0 ? 1e-4 * at.B : 1e-6, at.omega > 0.0 ? 1e-4 * at.omega : 1e-6});
  if (!(h.dB > 0.0) || !(h.domega > 0.0)) {
    throw std::invalid_argument("classical_fim: finite-difference steps must be > 0");
  }

  const std::vector<double> p0 = prob(at.B, at.omega);
  for (std::size_t i = 0; i < p0.size(); ++i) {
    if (!(p0[i] > 0.0)) throw ZeroProbabilityError(i, p0[i]);
  }

  auto checked = [&](double B, double w) {
    std::vector<double> p = prob(B, w);
    if (p.size() != p0.size()) throw std::invalid_argument("classical_fim: outcome count changed");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 0.0) throw ZeroProbabilityError(i, p[i]);
    }
    return p;
  };
  auto central = [&](double db, double dw) {
    const std::vector<double> plus = checked(at.B + db, at.omega + dw);
    const std::vector<double> minus = checked(at.B - db, at.omega - dw);
    const double span = 2.0 * (db > 0.0 ? db : dw);
    std::vector<double> d(p0.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (plus[i] - minus[i]) / span;
    return d;
  };
  auto refined = [&](double db, double dw) {
    const std::vector<double> coarse = central(db, dw);
    std::vector<double> fine = central(0.5 * db, 0.5 * dw);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      scale = std::max(scale, std::abs(fine[i]));
      diff = std::max(diff, std::abs(fine[i] - coarse[i]));
    }
    if (diff > 1e-4 * scale) {
      for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    return fine;
  };

  const std::vector<double> db = refined(h.dB, 0.0);
  const std::vector<double> dw = refined(0.0, h.domega);
  Qfim2 f;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    f.f_bb += db[i] * db[i] / p0[i];
    f.f_bw += db[i] * dw[i] / p0[i];
    f.f_ww += dw[i] * dw[i] / p0[i];
  }
  return f;
}

PureState haar_random_state(int dim, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(std::move(v));
}

ProbeSearchResult probe_search(const GeneratorPair& g, std::size_t samples, std::uint64_t seed,
                               unsigned threads) {
  ProbeSearchResult result;
  result.bell = qfim_from_generators(bell_phi_plus(), g, true);
  result.bell_det = result.bell.det();
  result.samples.resize(samples);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PureState probe = haar_random_state(4, seed, i);
      ProbeSample& s = result.samples[i];
      s.index = i;
      s.qfim = qfim_from_generators(probe, g, true);
      s.det = s.qfim.det();
      const Operator rho = partial_trace(probe.density(), Keep::first);
      s.sensor_purity = (rho * rho).trace().real();
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(samples, 1)));
  if (workers <= 1) {
    work(0, samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  result.max_det = -std::numeric_limits<double>::infinity();
  for (const ProbeSample& s : result.samples) {
    if (s.det > result.max_det) {
      result.max_det = s.det;
      result.argmax = s.index;
    }
  }
  result.max_excess = samples ? result.max_det - result.bell_det : 0.0;
  if (!samples) result.max_det = 0.0;
  return result;
}

ObservablePair optimal_observables() {
  return {tensor(pauli(Axis::z), pauli(Axis::y)), tensor(pauli(Axis::x), pauli(Axis::z))};
}

std::vector<PureState> joint_eigenbasis(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("joint_eigenbasis: dimension mismatch");
  if (!a.is_hermitian(1e-10) || !b.is_hermitian(1e-10)) {
    throw std::invalid_argument("joint_eigenbasis: operators must be Hermitian");
  }
  if (commutator(a, b).max_abs() > 1e-10) {
    throw std::invalid_argument("joint_eigenbasis: operators do not commute");
  }
  // A generic real combination separates every joint eigenvalue pair.
  const double mix = std::numbers::sqrt2 / std::numbers::pi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a.matrix() + mix * b.matrix());
  std::vector<PureState> basis;
  for (int k = 0; k < a.dim(); ++k) {
    const Eigen::VectorXcd v = eig.eigenvectors().col(k);
    for (const Operator* op : {&a, &b}) {
      const Complex lambda = v.dot(op->matrix() * v);
      if ((op->matrix() * v - lambda * v).norm() > 1e-9) {
        throw std::invalid_argument("joint_eigenbasis: joint spectrum is degenerate");
      }
    }
    basis.push_back(PureState::normalized(v));
  }
  return basis;
}

std::vector<double> measurement_probabilities(const PureState& state,
                                              std::span<const PureState> basis) {
  std::vector<double> p;
  p.reserve(basis.size());
  for (const PureState& e : basis) p.push_back(std::norm(e.overlap(state)));
  return p;
}

SaturationCheck measurement_saturation(const FieldParams& p, double T, double steps_per_radian) {
  const FieldParams ref = p.with_matched_control();
  ref.validate();
  if (!(T > 0.0)) throw std::invalid_argument("measurement_saturation: T must be > 0");
  const TimeGrid grid = TimeGrid::per_phase(ref.omega, T, steps_per_radian);
  const Operator undo = propagate_field(ref, grid).adjoint();
  const ObservablePair obs = optimal_observables();
  const std::vector<PureState> basis = joint_eigenbasis(obs.o_b, obs.o_w);
  const PureState bell = bell_phi_plus();
  const Operator id2 = Operator::identity(2);

  const ProbabilityFn prob = [&](double B, double w) {
    FieldParams q = ref;
    q.B = B;
    q.omega = w;
    const Operator u = undo * propagate_field(q, grid);
    return measurement_probabilities(bell.evolved(tensor(u, id2)), basis);
  };

  SaturationCheck out;
  // The default relative steps are far outside the linear regime at large omega T;
  // size them so each shifts the state by about 1e-4 rad.
  const double step_b = 1e-4 / (ref.gamma * T);
  const double step_w = ref.B > 0.0 ? 1e-4 / (ref.gamma * ref.B * T * T) : 1e-4 * ref.omega;
  out.classical = classical_fim(prob, ref, FiniteDifferenceStep{step_b, step_w});
  out.quantum = qfim_closed_form(ref, T);
  out.rel_err_bb = std::abs(out.classical.f_bb - out.quantum.f_bb) / out.quantum.f_bb;
  out.rel_err_ww = std::abs(out.classical.f_ww - out.quantum.f_ww) / out.quantum.f_ww;
  return out;
}

}  // namespace acmag
