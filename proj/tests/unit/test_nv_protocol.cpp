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

#include <gtest/gtest.h>

#include "acmag/error.hpp"
#include "acmag/nv_protocol.hpp"
#include "generators.hpp"

namespace acmag {
namespace {

namespace t = acmag::testing;

Operator electron(const Operator& op) { return tensor(op, Operator::identity(2)); }

// Operating point with the default NV constants and B_c = 5.65 G.
FieldParams operating(const NvParams& nv) {
  FieldParams p;
  p.B = p.B_c = 5.65;
  p.omega = p.omega_c = nv.control_frequency();
  p.gamma = nv.coupling();
  return p;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(a.overlap(b)); }

TEST(NvParams, DefaultsAndControlFrequency) {
  const NvParams nv;
  EXPECT_NEAR(nv.control_frequency() / kTwoPi, 1871.48, 1e-9);
  EXPECT_NEAR(nv.control_frequency() / NvParams::kQuotedControlFrequency, 1.0, 1e-3);
  EXPECT_NEAR(nv.coupling(), kTwoPi * 2.8 / std::numbers::sqrt2, 1e-12);
  NvParams bad;
  bad.D = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(NvHamiltonian, ZeroDetuningDriveIsStatic) {
  const NvParams nv;
  const FieldParams p = operating(nv);
  const Operator h0 = nv_rotating_hamiltonian(nv, p, 0.0, NvSegment::target);
  const Operator h1 = nv_rotating_hamiltonian(nv, p, 0.37, NvSegment::target);
  EXPECT_LT(max_abs_diff(h0, h1), 1e-14);
  EXPECT_LT(max_abs_diff(h0 - nv_interaction(nv), nv.coupling() * 5.65 * electron(pauli(Axis::x))), 1e-12);
  EXPECT_TRUE(h0.is_hermitian(1e-14));
}

TEST(NvHamiltonian, NoFieldsLeavesInteraction) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.B = p.B_c = 0.0;
  for (NvSegment s : {NvSegment::target, NvSegment::control}) {
    EXPECT_LT(max_abs_diff(nv_rotating_hamiltonian(nv, p, 0.2, s), nv_interaction(nv)), 1e-15);
  }
  const Operator sz = pauli(Axis::z);
  EXPECT_LT(max_abs_diff(nv_interaction(nv), (nv.A / 4) * (-electron(sz) - tensor(sz, sz))), 1e-15);
}

TEST(NvHamiltonian, DetunedDriveRotates) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.omega += 2.0;
  const double t0 = std::numbers::pi / 4;  // drive phase pi/2
  const Operator drive = nv_rotating_hamiltonian(nv, p, t0, NvSegment::target) - nv_interaction(nv);
  EXPECT_LT(max_abs_diff(drive, -nv.coupling() * 5.65 * electron(pauli(Axis::y))), 1e-12);
}

TEST(ConjugateByPi, Examples) {
  const Operator sz = pauli(Axis::z);
  EXPECT_LT(max_abs_diff(conjugate_by_pi(electron(sz)), -electron(sz)), 1e-15);
  EXPECT_LT(max_abs_diff(conjugate_by_pi(tensor(sz, sz)), -tensor(sz, sz)), 1e-15);
  EXPECT_LT(max_abs_diff(conjugate_by_pi(electron(pauli(Axis::x))), electron(pauli(Axis::x))), 1e-15);
  EXPECT_THROW(conjugate_by_pi(sz), std::invalid_argument);
}

TEST(ConjugateByPi, PhaseChoiceAlignsControlWithTarget) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.phi = 0.4;
  p.phi_c = -p.phi;
  const Operator target = nv_rotating_hamiltonian(nv, p, 0.0, NvSegment::target) - nv_interaction(nv);
  const Operator control = conjugate_by_pi(nv_rotating_hamiltonian(nv, p, 0.0, NvSegment::control));
  // sx (H_c + H') sx = -(target drive) - H'
  EXPECT_LT(max_abs_diff(control, -target - nv_interaction(nv)), 1e-12);
}

TEST(Sequence, Structure) {
  FieldParams p = operating(NvParams{});
  p.phi = 0.3;
  const PulseSequence s1 = build_sequence(1, 0.01, PiPulseModel::ideal(), p);
  ASSERT_EQ(s1.blocks.size(), 4u);
  EXPECT_DOUBLE_EQ(s1.total_duration, 0.02);
  EXPECT_EQ(s1.blocks[0].kind, BlockKind::target);
  EXPECT_EQ(s1.blocks[1].kind, BlockKind::pi);
  EXPECT_EQ(s1.blocks[2].kind, BlockKind::control);
  EXPECT_EQ(s1.blocks[3].kind, BlockKind::pi);
  EXPECT_DOUBLE_EQ(s1.control_phase, -0.3);
  const PulseSequence c = build_sequence(5, 0.01, PiPulseModel::ideal(), p, TargetClock::contiguous);
  const PulseSequence i = build_sequence(5, 0.01, PiPulseModel::ideal(), p, TargetClock::interleaved);
  ASSERT_EQ(c.blocks.size(), 20u);
  EXPECT_DOUBLE_EQ(c.blocks[12].clock, 0.03);
  EXPECT_DOUBLE_EQ(i.blocks[12].clock, 0.06);
  EXPECT_THROW(build_sequence(0, 0.01, PiPulseModel::ideal(), p), std::invalid_argument);
  EXPECT_THROW(build_sequence(1, 0.0, PiPulseModel::ideal(), p), std::invalid_argument);
  EXPECT_THROW(build_sequence(1, 0.1, PiPulseModel::finite(0.0), p), std::invalid_argument);
}

TEST(Sequence, InteractionEchoesOutWithoutFields) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.B = p.B_c = 0.0;
  for (int N : {1, 3, 8, 20}) {
    for (double tau_a : {0.01, 0.2, 0.5}) {
      const double tau = tau_a / std::abs(nv.A);
      const Operator u = sequence_propagator(build_sequence(N, tau, PiPulseModel::ideal(), p), nv, p);
      EXPECT_LT(phase_aligned_distance(u, Operator::identity(4)), 1e-8) << "N=" << N << " tau|A|=" << tau_a;
    }
  }
}

TEST(Sequence, OperatingPointBlocksAreIdentity) {
  const NvParams nv;
  const FieldParams p = operating(nv);
  const Operator u = sequence_propagator(build_sequence(8, 0.002, PiPulseModel::ideal(), p), nv, p);
  EXPECT_LT(phase_aligned_distance(u, Operator::identity(4)), 1e-12);
}

TEST(Sequence, SingleBlockApproachesIdealAtSecondOrder) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.B += 0.5;
  double prev = 0.0;
  for (double tau : {0.0025, 0.00125, 0.000625}) {
    const PulseSequence s = build_sequence(1, tau, PiPulseModel::ideal(), p);
    const double e = phase_aligned_distance(sequence_propagator(s, nv, p), ideal_propagator(s, nv, p));
    if (prev > 0.0) {
      EXPECT_NEAR(prev / e, 4.0, 0.5);
    }
    prev = e;
  }
}

double dd_error(const NvParams& nv, const FieldParams& p, double T, int N) {
  const PulseSequence s = build_sequence(N, T / N, PiPulseModel::ideal(), p);
  return phase_aligned_distance(sequence_propagator(s, nv, p), ideal_propagator(s, nv, p));
}

TEST(Sequence, GlobalErrorIsSecondOrderWhenDetuningCompletesHalfTurns) {
  const NvParams nv;
  FieldParams p = operating(nv);
  const double T = 0.1;
  p.B = p.B_c + std::numbers::pi / (nv.coupling() * T);
  double prev = dd_error(nv, p, T, 16);
  for (int N : {32, 64, 128}) {
    const double e = dd_error(nv, p, T, N);
    EXPECT_GE(prev / e, 3.5);
    EXPECT_LE(prev / e, 4.5);
    prev = e;
  }
}

TEST(Sequence, GenericDetuningLeavesFirstOrderGlobalError) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.B = p.B_c + 0.3;
  const double r = dd_error(nv, p, 0.1, 64) / dd_error(nv, p, 0.1, 128);
  EXPECT_NEAR(r, 2.0, 0.1);
}

TEST(Sequence, FinitePulsesConvergeToIdealQuadratically) {
  const NvParams nv;
  FieldParams p = operating(nv);
  p.B += 0.2;
  p.omega += 3.0;
  const PureState ideal =
      simulate_sequence(build_sequence(4, 0.01, PiPulseModel::ideal(), p), nv, p, bell_phi_plus());
  auto infidelity = [&](double rabi_over_a) {
    const PiPulseModel pulse = PiPulseModel::finite(rabi_over_a * std::abs(nv.A));
    return 1 - fidelity(ideal, simulate_sequence(build_sequence(4, 0.01, pulse, p), nv, p, bell_phi_plus()));
  };
  const double slow = infidelity(1e2);
  const double fast = infidelity(1e3);
  EXPECT_LT(fast, 2e-5);
  EXPECT_NEAR(slow / fast, 100.0, 10.0);
}

TEST(Sequence, FinitePulseWithoutHyperfineIsIdealUpToPhase) {
  const NvParams nv;
  const Operator u = PiPulseModel::finite(kTwoPi * 20, false).propagator(nv);
  EXPECT_LT(phase_aligned_distance(u, electron(pauli(Axis::x))), 1e-13);
}

TEST(Readout, OperatingPointIsUniform) {
  const NvParams nv;
  const FieldParams p = operating(nv);
  for (int N : {1, 4, 8}) {
    const PureState s = simulate_sequence(build_sequence(N, 0.002, PiPulseModel::ideal(), p), nv, p, bell_phi_plus());
    for (double v : bell_readout(s)) EXPECT_NEAR(v, 0.25, 1e-3);
  }
}

TEST(Readout, BellProjection) {
  const std::vector<double> p = bell_probabilities(bell_phi_plus(), Operator::identity(2));
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1] + p[2] + p[3], 0.0, 1e-15);
  const std::vector<PureState> basis = bell_basis();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(std::abs(basis[i].overlap(basis[j])), i == j ? 1.0 : 0.0, 1e-15);
    }
  }
  EXPECT_TRUE(readout_rotation().is_unitary(1e-14));
}

TEST(Readout, ProbabilityConservation) {
  t::Gen g(41);
  ReadoutModel spam;
  spam.spam_baseline = 0.05;
  spam.spam_contrast = 0.7;
  for (int i = 0; i < 200; ++i) {
    const PureState s = g.state(4);
    const std::vector<double> p = bell_readout(s);
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-9);
    const std::vector<double> q = bell_readout(s, spam);
    EXPECT_NEAR(q[0] + q[1] + q[2] + q[3], 4 * 0.05 + 0.7, 1e-9);
  }
}

TEST(Readout, ModelValidation) {
  ReadoutModel r;
  EXPECT_NEAR(r.sigma, std::sqrt(0.25 * 0.75 / 3e6), 1e-18);
  EXPECT_NO_THROW(r.validate());
  r.spam_baseline = 0.2;
  r.spam_contrast = 0.9;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r = ReadoutModel{};
  r.sigma = 0.0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  EXPECT_NEAR(ReadoutModel::with_shots(1e4).sigma, std::sqrt(0.1875 / 1e4), 1e-15);
}

TEST(Simulate, RejectsWrongProbe) {
  const NvParams nv;
  const FieldParams p = operating(nv);
  EXPECT_THROW(simulate_sequence(build_sequence(1, 0.01, PiPulseModel::ideal(), p), nv, p, PureState::basis(2, 0)),
               std::invalid_argument);
}

TEST(PhaseAlignedDistance, IgnoresGlobalPhase) {
  const Operator u = expm_hermitian(electron(pauli(Axis::y)), 0.3);
  EXPECT_LT(phase_aligned_distance(std::exp(Complex(0, 1.1)) * u, u), 1e-15);
  EXPECT_GT(phase_aligned_distance(u, Operator::identity(4)), 0.1);
}

}  // namespace
}  // namespace acmag
