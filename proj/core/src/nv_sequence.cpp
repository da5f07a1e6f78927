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
#include <optional>
#include <stdexcept>
#include <string>

#include "acmag/error.hpp"
#include "acmag/nv_protocol.hpp"

namespace acmag {

namespace {

std::int64_t substeps(const FieldParams& p, double duration) {
  const double phase = std::abs(p.omega - p.omega_c) * duration;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(phase / kMaxPhaseStep)));
}

// Midpoint product over one target block; `extra` is added to every sample.
Operator target_block(const NvParams& nv, const FieldParams& p, double clock, double duration,
                      const Operator& extra, bool with_interaction) {
  const Operator drop = with_interaction ? Operator::zero(4) : nv_interaction(nv);
  auto h = [&](double t) {
    return nv_rotating_hamiltonian(nv, p, t, NvSegment::target) - drop + extra;
  };
  if (p.omega == p.omega_c) return expm_hermitian(h(clock), duration);
  return propagate(h, TimeGrid{clock, clock + duration, substeps(p, duration)});
}

FieldParams with_sequence_phase(const PulseSequence& seq, FieldParams p) {
  p.phi_c = seq.control_phase;
  return p;
}

}  // namespace

PulseSequence build_sequence(int N, double tau, const PiPulseModel& pulse, const FieldParams& p,
                             TargetClock clock) {
  if (N < 1) throw std::invalid_argument("build_sequence: N must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("build_sequence: tau must be > 0");
  pulse.validate();
  PulseSequence seq;
  seq.N = N;
  seq.tau = tau;
  seq.total_duration = 2.0 * N * tau;
  seq.control_phase = -p.phi;
  seq.clock = clock;
  seq.pulse = pulse;
  seq.blocks.reserve(4 * static_cast<std::size_t>(N));
  const double stride = clock == TargetClock::contiguous ? tau : 2.0 * tau;
  for (int k = 0; k < N; ++k) {
    seq.blocks.push_back({BlockKind::target, k * stride, tau});
    seq.blocks.push_back({BlockKind::pi, 0.0, 0.0});
    seq.blocks.push_back({BlockKind::control, 0.0, tau});
    seq.blocks.push_back({BlockKind::pi, 0.0, 0.0});
  }
  return seq;
}

Operator sequence_propagator(const PulseSequence& seq, const NvParams& nv, const FieldParams& p) {
  const FieldParams q = with_sequence_phase(seq, p);
  const Operator pulse = seq.pulse.propagator(nv);
  const Operator zero = Operator::zero(4);
  std::optional<Operator> control;
  Operator u = Operator::identity(4);
  for (const SequenceBlock& b : seq.blocks) {
    switch (b.kind) {
      case BlockKind::target:
        u = target_block(nv, q, b.clock, b.duration, zero, true) * u;
        break;
      case BlockKind::pi:
        u = pulse * u;
        break;
      case BlockKind::control:
        if (!control) {
          control = expm_hermitian(nv_rotating_hamiltonian(nv, q, 0.0, NvSegment::control), b.duration);
        }
        u = *control * u;
        break;
    }
  }
  return u;
}

PureState simulate_sequence(const PulseSequence& seq, const NvParams& nv, const FieldParams& p,
                            const PureState& probe) {
  if (probe.dim() != 4) throw std::invalid_argument("simulate_sequence: probe must be two-qubit");
  const Eigen::VectorXcd out = sequence_propagator(seq, nv, p).matrix() * probe.amplitudes();
  const double drift = std::abs(out.norm() - 1.0);
  if (drift > 1e-10) {
    throw ConvergenceError("simulate_sequence: state norm drifted by " + std::to_string(drift));
  }
  return PureState::normalized(out);
}

Operator ideal_propagator(const PulseSequence& seq, const NvParams& nv, const FieldParams& p) {
  const FieldParams q = with_sequence_phase(seq, p);
  // sx (H_c + H'_int) sx = sx H_c sx - H'_int; only the drive part is kept.
  const Operator control_drive =
      conjugate_by_pi(nv_rotating_hamiltonian(nv, q, 0.0, NvSegment::control)) + nv_interaction(nv);
  Operator u = Operator::identity(4);
  for (const SequenceBlock& b : seq.blocks) {
    if (b.kind == BlockKind::target) {
      u = target_block(nv, q, b.clock, b.duration, control_drive, false) * u;
    }
  }
  return u;
}

double phase_aligned_distance(const Operator& u, const Operator& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("phase_aligned_distance: dimension mismatch");
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return max_abs_diff(u, phase * v);
}

}  // namespace acmag
