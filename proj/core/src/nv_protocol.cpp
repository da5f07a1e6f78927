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
#include <stdexcept>
#include <string>

#include "acmag/nv_protocol.hpp"

namespace acmag {

namespace {

const Operator& id2() {
  static const Operator m = Operator::identity(2);
  return m;
}

Operator electron(const Operator& op) { return tensor(op, id2()); }

}  // namespace

void NvParams::validate() const {
  if (!(D > 0.0)) throw std::invalid_argument("NvParams.D must be > 0");
  if (!(gamma_e > 0.0)) throw std::invalid_argument("NvParams.gamma_e must be > 0");
  if (!std::isfinite(Q) || !std::isfinite(A) || !std::isfinite(gamma_n) || !std::isfinite(B_z0)) {
    throw std::invalid_argument("NvParams: Q, A, gamma_n and B_z0 must be finite");
  }
  if (!(control_frequency() > 0.0)) {
    throw std::invalid_argument("NvParams: control frequency D - gamma_e B_z0 - A/2 must be > 0");
  }
}

Operator nv_interaction(const NvParams& nv) {
  const Operator sz = pauli(Axis::z);
  return (nv.A / 4.0) * (-electron(sz) - tensor(sz, sz));
}

Operator nv_rotating_hamiltonian(const NvParams& nv, const FieldParams& p, double t,
                                 NvSegment segment) {
  const double g = nv.coupling();
  const Operator& sx = pauli(Axis::x);
  const Operator sy = pauli(Axis::y);
  Operator drive = Operator::zero(2);
  if (segment == NvSegment::target) {
    const double arg = (p.omega - p.omega_c) * t + p.phi;
    drive = g * p.B * (std::cos(arg) * sx - std::sin(arg) * sy);
  } else {
    drive = -g * p.B_c * (std::cos(p.phi_c) * sx - std::sin(p.phi_c) * sy);
  }
  return electron(drive) + nv_interaction(nv);
}

Operator conjugate_by_pi(const Operator& h) {
  if (h.dim() != 4) throw std::invalid_argument("conjugate_by_pi: expects a two-qubit operator");
  const Operator x = electron(pauli(Axis::x));
  return x * h * x;
}

void PiPulseModel::validate() const {
  if (kind == Kind::finite && !(rabi_freq > 0.0)) {
    throw std::invalid_argument("PiPulseModel.rabi_freq must be > 0 for finite pulses");
  }
}

Operator PiPulseModel::propagator(const NvParams& nv) const {
  validate();
  const Operator x = electron(pauli(Axis::x));
  if (kind == Kind::ideal) return x;
  Operator h = (0.5 * rabi_freq) * x;
  if (hyperfine_on) h += nv_interaction(nv);
  return expm_hermitian(h, std::numbers::pi / rabi_freq);
}

Operator readout_rotation() {
  const double s = std::numbers::pi / (3.0 * std::sqrt(3.0));
  return expm_hermitian(s * (pauli(Axis::x) + pauli(Axis::y) + pauli(Axis::z)), 1.0);
}

std::vector<PureState> bell_basis() {
  const PureState phi = bell_phi_plus();
  return {phi, phi.evolved(electron(pauli(Axis::x))), phi.evolved(electron(pauli(Axis::y))),
          phi.evolved(electron(pauli(Axis::z)))};
}

std::vector<double> bell_probabilities(const PureState& state, const Operator& electron_rotation) {
  if (state.dim() != 4) throw std::invalid_argument("bell_probabilities: expects a two-qubit state");
  if (electron_rotation.dim() != 2) {
    throw std::invalid_argument("bell_probabilities: rotation must act on the electron only");
  }
  static const std::vector<PureState> basis = bell_basis();
  const Eigen::VectorXcd rotated = electron(electron_rotation).matrix() * state.amplitudes();
  std::vector<double> p;
  p.reserve(basis.size());
  for (const PureState& b : basis) p.push_back(std::norm(b.amplitudes().dot(rotated)));
  return p;
}

double shot_noise_sigma(double n_avg) {
  if (!(n_avg > 0.0)) throw std::invalid_argument("shot_noise_sigma: n_avg must be > 0");
  return std::sqrt(0.25 * 0.75 / n_avg);
}

ReadoutModel ReadoutModel::with_shots(double n_avg) {
  ReadoutModel r;
  r.n_avg = n_avg;
  r.sigma = shot_noise_sigma(n_avg);
  return r;
}

void ReadoutModel::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("ReadoutModel.sigma must be > 0");
  if (!(n_avg > 0.0)) throw std::invalid_argument("ReadoutModel.n_avg must be > 0");
  if (!(spam_contrast > 0.0 && spam_contrast <= 1.0)) {
    throw std::invalid_argument("ReadoutModel.spam_contrast must lie in (0, 1]");
  }
  if (spam_baseline < 0.0) throw std::invalid_argument("ReadoutModel.spam_baseline must be >= 0");
  if (spam_baseline + spam_contrast > 1.0 + 1e-15) {
    throw std::invalid_argument("ReadoutModel: spam_baseline + spam_contrast must be <= 1");
  }
  if (signals_used != SignalSet::two && signals_used != SignalSet::three) {
    throw std::invalid_argument("ReadoutModel.signals_used must be 2 or 3");
  }
}

std::vector<double> bell_readout(const PureState& state, const ReadoutModel& readout) {
  static const Operator u_r = readout_rotation();
  std::vector<double> p = bell_probabilities(state, u_r);
  for (double& v : p) v = readout.spam_baseline + readout.spam_contrast * v;
  return p;
}

}  // namespace acmag
