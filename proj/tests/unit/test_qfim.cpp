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
#include "acmag/qfim.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace acmag {
namespace {

namespace t = acmag::testing;
using std::numbers::pi;

TEST(Qfim, ClosedFormFrozenValues) {
  const Qfim2 f = qfim_closed_form(FieldParams::matched(1, 1, 1), 1.0);
  EXPECT_NEAR(f.f_bb, t::kFbb, 1e-13);
  EXPECT_NEAR(f.f_ww, t::kFww, 1e-13);
  EXPECT_NEAR(f.f_bw, t::kFbw, 1e-13);
}

TEST(Qfim, ClosedFormAgainstQuadratureGenerators) {
  for (double w : {0.9, 4.0}) {
    for (double T : {1.0, 6.0}) {
      const FieldParams p = FieldParams::matched(1.2, 1.7, w);
      double bb, bw, ww;
      t::bell_qfim_from_xy(t::matched_generator_b(1.2, w, T, 200000),
                           t::matched_generator_w(1.2, 1.7, w, T, 200000), bb, bw, ww);
      const Qfim2 f = qfim_closed_form(p, T);
      EXPECT_NEAR(f.f_bb / bb, 1.0, 1e-9);
      EXPECT_NEAR(f.f_ww / ww, 1.0, 1e-9);
      EXPECT_NEAR((f.f_bw - bw) / std::sqrt(bb * ww), 0.0, 1e-9);
    }
  }
}

TEST(Qfim, BellProbeNumericGeneratorsMatchClosedForm) {
  const FieldParams p = FieldParams::matched(1, 1, 1);
  const GeneratorPair g = generator_pair_numeric(p, TimeGrid::over(1.0, 20000));
  const Qfim2 f = qfim_from_generators(bell_phi_plus(), g, true);
  EXPECT_NEAR(f.f_bb, t::kFbb, 1e-7);
  EXPECT_NEAR(f.f_ww, t::kFww, 1e-7);
  EXPECT_NEAR(f.f_bw, t::kFbw, 1e-7);
}

TEST(Qfim, AsymptoticGeneratorsGiveDiagonalQfim) {
  const FieldParams p = FieldParams::matched(1.5, 2.0, 3.0);
  const double T = 4.0;
  const Qfim2 f = qfim_from_generators(bell_phi_plus(), generator_closed_form(p, T, GeneratorMode::asymptotic), true);
  EXPECT_NEAR(f.f_bb, 1.5 * 1.5 * T * T, 1e-12);
  EXPECT_NEAR(f.f_ww, 1.5 * 1.5 * 4.0 * std::pow(T, 4) / 4.0, 1e-9);
  EXPECT_NEAR(f.f_bw, 0.0, 1e-12);
}

TEST(Qfim, SingleQubitProbe) {
  GeneratorPair g{0.5 * 3.0 * pauli(Axis::x), Operator::zero(2)};
  const Qfim2 f = qfim_from_generators(PureState::basis(2, 0), g, false);
  EXPECT_NEAR(f.f_bb, 9.0, 1e-14);
  EXPECT_THROW(qfim_from_generators(bell_phi_plus(), g, false), std::invalid_argument);
}

TEST(Qfim, ZeroAmplitudeKillsFrequencyInformation) {
  const Qfim2 f = qfim_closed_form(FieldParams::matched(1.0, 0.0, 2.0), 3.0);
  EXPECT_EQ(f.f_ww, 0.0);
  EXPECT_EQ(f.f_bw, 0.0);
  EXPECT_GT(f.f_bb, 0.0);
}

TEST(Qfim, ClosedFormRejectsZeroFrequency) {
  FieldParams p = FieldParams::matched(1, 1, 1);
  p.omega = 0.0;
  EXPECT_THROW(qfim_closed_form(p, 1.0), std::invalid_argument);
  EXPECT_THROW(qfim_determinant(p, 1.0), std::invalid_argument);
}

TEST(Qfim, OffDiagonalDecaysAtLongTimes) {
  const Qfim2 f = qfim_closed_form(FieldParams::matched(1, 1, 1), 1e3);
  EXPECT_LE(std::abs(f.f_bw) / std::sqrt(f.f_bb * f.f_ww), 2e-3);
}

TEST(Determinant, Examples) {
  const FieldParams p = FieldParams::matched(1, 1, 1);
  EXPECT_EQ(qfim_determinant(p, 0.0), 0.0);
  EXPECT_NEAR(qfim_determinant(p, pi), t::kDetAtPi, 1e-10);
  EXPECT_NEAR(qfim_closed_form(p, pi).det() / t::kDetAtPi, 1.0, 1e-12);
  for (double T : {1e-3, 0.1, 1.0, 17.0, 400.0}) EXPECT_GT(qfim_determinant(p, T), 0.0);
}

TEST(Qcrb, InverseAndScaling) {
  const CovBound c = qcrb(Qfim2{4.0, 0.0, 16.0}, 1);
  EXPECT_DOUBLE_EQ(c.var_b, 0.25);
  EXPECT_DOUBLE_EQ(c.var_w, 0.0625);
  const Qfim2 f{3.0, -1.2, 5.0};
  const CovBound c1 = qcrb(f, 1);
  const CovBound c10 = qcrb(f, 10);
  EXPECT_NEAR(c10.var_b, c1.var_b / 10.0, 1e-16);
  EXPECT_NEAR(c10.var_w, c1.var_w / 10.0, 1e-16);
  EXPECT_NEAR(c10.cov_bw, c1.cov_bw / 10.0, 1e-16);
  Eigen::Matrix2d prod = f.matrix() * (Eigen::Matrix2d() << c1.var_b, c1.cov_bw, c1.cov_bw, c1.var_w).finished();
  EXPECT_LT((prod - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Qcrb, SingularMatrixIsReported) {
  try {
    qcrb(Qfim2{1.0, 2.0, 4.0}, 1);
    FAIL() << "expected SingularFisherError";
  } catch (const SingularFisherError& e) {
    EXPECT_NE(std::string(e.what()).find("joint estimation unattainable"), std::string::npos);
  }
  EXPECT_THROW(qcrb(Qfim2{}, 1), SingularFisherError);
  EXPECT_THROW(qcrb(Qfim2{1.0, 0.0, 1.0}, 0), std::invalid_argument);
}

TEST(Qcrb, AnyProbeIsNoBetterThanBell) {
  const FieldParams p = FieldParams::matched(1, 1, 1);
  const GeneratorPair g = generator_closed_form(p, 1.0, GeneratorMode::asymptotic);
  const CovBound bell = qcrb(qfim_from_generators(bell_phi_plus(), g, true), 1);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Qfim2 f = qfim_from_generators(haar_random_state(4, 5, i), g, true);
    if (f.is_singular()) continue;
    const CovBound c = qcrb(f, 1);
    EXPECT_GE(c.var_b, bell.var_b * (1 - 1e-12));
    EXPECT_GE(c.var_w, bell.var_w * (1 - 1e-12));
  }
}

TEST(RelativeErrors, ShapeAndScale) {
  const FieldParams p = FieldParams::matched(1, 1, 1);
  const double xs[] = {100.0};
  const RelativeErrors e = relative_error_curves(p, xs).front();
  EXPECT_NEAR(e.dh_w, 0.01, 0.002);
  EXPECT_NEAR(e.dh_b, std::abs(std::sin(100.0)) / 100.0, 1e-12);
  const double bad[] = {6.0};
  EXPECT_THROW(relative_error_curves(p, bad), std::invalid_argument);
}

TEST(RelativeErrors, EnvelopeSlopesAreMinusOne) {
  const EnvelopeSlopes s = relative_error_envelope_slopes(FieldParams::matched(1, 1, 1), 1e2, 1e5, 31);
  for (double v : {s.dh_b, s.dh_w, s.df_bb, s.df_ww, s.df_bw}) EXPECT_NEAR(v, -1.0, 0.1);
}

TEST(RelativeErrors, EnvelopeShrinksWithOmegaT) {
  const FieldParams p = FieldParams::matched(1, 1, 1);
  double prev = 1.0;
  for (double x = 100.0; x < 1e5; x *= 3.0) {
    double env = 0.0;
    std::vector<double> xs;
    for (int k = 0; k <= 64; ++k) xs.push_back(x + pi * k / 64.0);
    for (const RelativeErrors& e : relative_error_curves(p, xs)) env = std::max(env, e.df_bb);
    EXPECT_LT(env, prev);
    prev = env;
  }
}

TEST(ProbeOverlap, IdentityAndBell) {
  const Operator id = Operator::identity(2);
  t::Gen g(21);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(probe_overlap(g.state(4), id), 1.0, 1e-12);
  for (double a : {0.1, 0.9, 2.2}) {
    const Operator u = expm_hermitian((0.6 * pauli(Axis::x) + 0.8 * pauli(Axis::z)), a);
    EXPECT_NEAR(probe_overlap(bell_phi_plus(), u), std::abs(std::cos(a)), 1e-12);
    EXPECT_NEAR(probe_overlap_closed_form(bell_phi_plus(), u), std::abs(std::cos(a)), 1e-12);
  }
}

TEST(ProbeOverlap, ProductStateUnderZRotation) {
  const Operator u = expm_hermitian(pauli(Axis::z), 0.8);
  EXPECT_NEAR(probe_overlap(PureState::basis(4, 0), u), 1.0, 1e-12);
  EXPECT_NEAR(probe_overlap_closed_form(PureState::basis(4, 0), u), 1.0, 1e-12);
}

TEST(ProbeOverlap, ClosedFormAgreesOnRandomInputs) {
  t::Gen g(22);
  for (int i = 0; i < 200; ++i) {
    const PureState psi = g.state(4);
    const Operator u = std::exp(Complex(0, g.uniform(0, 6))) * expm_hermitian(g.hermitian(2), g.uniform(-3, 3));
    EXPECT_NEAR(probe_overlap(psi, u), probe_overlap_closed_form(psi, u), 1e-12);
  }
  EXPECT_THROW(probe_overlap(bell_phi_plus(), Operator{{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST(ClassicalFim, ConstantModelGivesZero) {
  const ProbabilityFn prob = [](double, double) { return std::vector<double>{0.25, 0.25, 0.5}; };
  const Qfim2 f = classical_fim(prob, FieldParams::matched(1, 1, 1));
  EXPECT_EQ(f.f_bb, 0.0);
  EXPECT_EQ(f.f_ww, 0.0);
}

TEST(ClassicalFim, BinomialModel) {
  // p = (cos^2 a, sin^2 a) with a = B + 2 omega: F = 4 [1 2; 2 4].
  const ProbabilityFn prob = [](double B, double w) {
    const double a = B + 2.0 * w;
    return std::vector<double>{std::cos(a) * std::cos(a), std::sin(a) * std::sin(a)};
  };
  const Qfim2 f = classical_fim(prob, FieldParams::matched(1, 0.3, 0.2));
  EXPECT_NEAR(f.f_bb, 4.0, 1e-6);
  EXPECT_NEAR(f.f_bw, 8.0, 1e-6);
  EXPECT_NEAR(f.f_ww, 16.0, 1e-5);
}

TEST(ClassicalFim, ZeroProbabilityNamesOutcome) {
  const ProbabilityFn prob = [](double, double) { return std::vector<double>{0.5, 0.0, 0.5}; };
  try {
    classical_fim(prob, FieldParams::matched(1, 1, 1));
    FAIL() << "expected ZeroProbabilityError";
  } catch (const ZeroProbabilityError& e) {
    EXPECT_EQ(e.outcome(), 1u);
  }
}

TEST(Measurement, JointBasisOfOptimalObservables) {
  const ObservablePair o = optimal_observables();
  EXPECT_LT(commutator(o.o_b, o.o_w).max_abs(), 1e-15);
  const std::vector<PureState> basis = joint_eigenbasis(o.o_b, o.o_w);
  ASSERT_EQ(basis.size(), 4u);
  const std::vector<double> p = measurement_probabilities(bell_phi_plus(), basis);
  for (double v : p) EXPECT_NEAR(v, 0.25, 1e-12);
  EXPECT_THROW(joint_eigenbasis(pauli(Axis::x), pauli(Axis::z)), std::invalid_argument);
}

TEST(Measurement, SaturatesQfimAtLongTimes) {
  const SaturationCheck s = measurement_saturation(FieldParams::matched(1, 1, 1), 1e3);
  EXPECT_LE(s.rel_err_bb, 0.02);
  EXPECT_LE(s.rel_err_ww, 0.02);
}

TEST(Measurement, ClassicalNeverExceedsQuantum) {
  for (double T : {2.0, 10.0, 60.0}) {
    const SaturationCheck s = measurement_saturation(FieldParams::matched(1, 1.3, 1), T);
    EXPECT_LE(s.classical.f_bb, s.quantum.f_bb * (1 + 1e-4));
    EXPECT_LE(s.classical.f_ww, s.quantum.f_ww * (1 + 1e-4));
  }
}

TEST(ProbeSearch, BellIsOptimalAndThreadsDoNotMatter) {
  const GeneratorPair g = generator_closed_form(FieldParams::matched(1, 1, 1), 1.0, GeneratorMode::asymptotic);
  const ProbeSearchResult one = probe_search(g, 300, 42, 1);
  const ProbeSearchResult three = probe_search(g, 300, 42, 3);
  EXPECT_LE(one.max_excess, 1e-9);
  ASSERT_EQ(one.samples.size(), three.samples.size());
  for (std::size_t i = 0; i < one.samples.size(); ++i) {
    EXPECT_EQ(one.samples[i].det, three.samples[i].det);
    EXPECT_EQ(one.samples[i].index, i);
  }
  EXPECT_NEAR(one.bell_det, 0.25, 1e-14);
}

TEST(ProbeSearch, MaximallyEntangledProbesReachBellValue) {
  const GeneratorPair g = generator_closed_form(FieldParams::matched(1, 1, 1), 1.0, GeneratorMode::asymptotic);
  const double bell = qfim_from_generators(bell_phi_plus(), g, true).det();
  t::Gen gen(23);
  for (int i = 0; i < 50; ++i) {
    // (I (x) V) Phi+ is maximally entangled for any ancilla unitary V.
    const Operator v = expm_hermitian(gen.hermitian(2), 1.0);
    const PureState psi = bell_phi_plus().evolved(tensor(Operator::identity(2), v));
    EXPECT_NEAR(qfim_from_generators(psi, g, true).det(), bell, 1e-12);
  }
}

TEST(Haar, DeterministicInSeedAndIndex) {
  const PureState a = haar_random_state(4, 9, 17);
  const PureState b = haar_random_state(4, 9, 17);
  const PureState c = haar_random_state(4, 9, 18);
  EXPECT_EQ((a.amplitudes() - b.amplitudes()).norm(), 0.0);
  EXPECT_GT((a.amplitudes() - c.amplitudes()).norm(), 1e-3);
}

TEST(Singularity, UncontrolledEvolutionGivesSingularQfim) {
  const FieldParams p = FieldParams::matched(1.0, 1.0, 2.0);
  const GeneratorPair g = generator_pair_numeric(p, TimeGrid::over(5.0, 5000), Evolution::uncontrolled);
  t::Gen gen(24);
  for (int i = 0; i < 50; ++i) {
    const Qfim2 f = qfim_from_generators(gen.state(4), g, true);
    EXPECT_LE(f.normalized_det(), 1e-10);
    EXPECT_LE(f.det(), 1e-9);
    EXPECT_THROW(qcrb(f, 1), SingularFisherError);
  }
}

}  // namespace
}  // namespace acmag
