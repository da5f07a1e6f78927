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

#include <benchmark/benchmark.h>

#include "acmag/nv_protocol.hpp"

namespace acmag {
namespace {

FieldParams detuned(const NvParams& nv) {
  FieldParams p;
  p.B_c = 5.65;
  p.B = 5.7;
  p.omega_c = nv.control_frequency();
  p.omega = p.omega_c + 0.3;
  return p;
}

void BM_SequencePropagator(benchmark::State& state) {
  const NvParams nv;
  const FieldParams p = detuned(nv);
  const PulseSequence s = build_sequence(static_cast<int>(state.range(0)), 0.002, PiPulseModel::ideal(), p);
  for (auto _ : state) benchmark::DoNotOptimize(sequence_propagator(s, nv, p));
}
BENCHMARK(BM_SequencePropagator)->Arg(8)->Arg(128);

void BM_ScalingStudy(benchmark::State& state) {
  const NvParams nv;
  FieldParams p = detuned(nv);
  p.B = p.B_c;
  p.omega = p.omega_c;
  for (auto _ : state) benchmark::DoNotOptimize(scaling_study(nv, p, ScalingConfig{}));
}
BENCHMARK(BM_ScalingStudy)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace acmag
