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

#include "acmag/dynamics.hpp"
#include "acmag/qfim.hpp"
#include "acmag/quantum_core.hpp"

namespace acmag {
namespace {

void BM_ExpmHermitian(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(dim, dim);
  const Operator h(m + m.adjoint());
  for (auto _ : state) benchmark::DoNotOptimize(expm_hermitian(h, 0.3));
}
BENCHMARK(BM_ExpmHermitian)->Arg(2)->Arg(4)->Arg(16);

void BM_GeneratorPairNumeric(benchmark::State& state) {
  const FieldParams p = FieldParams::matched(1.0, 1.0, 5.0);
  const TimeGrid grid = TimeGrid::per_phase(p.omega, 10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(generator_pair_numeric(p, grid));
  state.SetItemsProcessed(state.iterations() * grid.steps);
}
BENCHMARK(BM_GeneratorPairNumeric)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_QfimClosedForm(benchmark::State& state) {
  const FieldParams p = FieldParams::matched(1.0, 1.0, 5.0);
  double T = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfim_closed_form(p, T));
    T += 1e-6;
  }
}
BENCHMARK(BM_QfimClosedForm);

void BM_ProbeSearch(benchmark::State& state) {
  const GeneratorPair g =
      generator_closed_form(FieldParams::matched(1.0, 1.0, 1.0), 10.0, GeneratorMode::asymptotic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(probe_search(g, static_cast<std::size_t>(state.range(0)), 1, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProbeSearch)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace acmag
