// Copyright 2026 The tempkd Authors
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

#include <vector>

#include "tkd/tkd.hpp"

namespace {

using namespace tkd;

// range(0) = d, range(1) = n
MultiTimeProcess make_process(const benchmark::State& st, rnd::Rng& rng) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(st.range(1)) + 1,
                                static_cast<std::size_t>(st.range(0)));
  return rnd::random_process(dims, rng, rnd::ChannelFamily::kraus);
}

void BM_KdRight(benchmark::State& st) {
  rnd::Rng rng(1);
  auto p = make_process(st, rng);
  auto s = rnd::random_schedule(p.dims(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(kd_right(p, s));
}
BENCHMARK(BM_KdRight)->Args({2, 1})->Args({2, 3})->Args({3, 2})->Args({3, 3});

void BM_KdDoubled(benchmark::State& st) {
  rnd::Rng rng(2);
  auto p = make_process(st, rng);
  auto s = rnd::random_schedule(p.dims(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(kd_doubled(p, s, s));
}
BENCHMARK(BM_KdDoubled)->Args({2, 1})->Args({2, 3})->Args({3, 2});

void BM_OracleKd(benchmark::State& st) {
  rnd::Rng rng(3);
  auto p = make_process(st, rng);
  auto s = rnd::random_schedule(p.dims(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(oracle::oracle_kd(p, s, DistKind::kd_right));
}
BENCHMARK(BM_OracleKd)->Args({2, 3})->Args({3, 2});

void BM_KdStateRecursive(benchmark::State& st) {
  rnd::Rng rng(4);
  auto p = make_process(st, rng);
  for (auto _ : st) benchmark::DoNotOptimize(kd_state_recursive(p));
}
BENCHMARK(BM_KdStateRecursive)->Args({2, 1})->Args({2, 3})->Args({3, 2});

void BM_Pdo(benchmark::State& st) {
  rnd::Rng rng(5);
  auto p = make_process(st, rng);
  for (auto _ : st) benchmark::DoNotOptimize(pdo(p));
}
BENCHMARK(BM_Pdo)->Args({2, 2})->Args({2, 3})->Args({3, 2});

void BM_BlochReconstruction(benchmark::State& st) {
  rnd::Rng rng(6);
  auto p = make_process(st, rng);
  const auto b = default_bases(p);
  for (auto _ : st) {
    benchmark::DoNotOptimize(reconstruct_state(correlators(p, b, CorrelatorKind::right), b));
  }
}
BENCHMARK(BM_BlochReconstruction)->Args({2, 2})->Args({2, 3})->Args({3, 2});

void BM_DoubledState(benchmark::State& st) {
  rnd::Rng rng(7);
  auto p = make_process(st, rng);
  const auto b = default_bases(p);
  for (auto _ : st) {
    benchmark::DoNotOptimize(reconstruct_state(correlators(p, b, CorrelatorKind::doubled), b));
  }
}
BENCHMARK(BM_DoubledState)->Args({2, 1})->Args({2, 2});

void BM_CharFnGrid(benchmark::State& st) {
  rnd::Rng rng(8);
  auto p = make_process(st, rng);
  ObservableSchedule o;
  for (auto d : p.dims()) o.bra.push_back(rnd::random_hermitian(d, rng));
  std::vector<std::vector<double>> sp;
  for (const auto& m : observable_schedule(o.bra)) sp.push_back(m.values());
  const auto grid = tensor_grid(default_nodes(sp));
  for (auto _ : st) benchmark::DoNotOptimize(char_fn(p, o, grid, CharKind::right));
}
BENCHMARK(BM_CharFnGrid)->Args({2, 2})->Args({3, 2});

void BM_CircuitSim(benchmark::State& st) {
  rnd::Rng rng(9);
  auto p = make_process(st, rng);
  ObservableSchedule o;
  for (auto d : p.dims()) o.bra.push_back(rnd::random_hermitian(d, rng));
  const CharPoint pt(p.times(), 0.7);
  for (auto _ : st) benchmark::DoNotOptimize(circuit_sim(p, o, pt, CharKind::right));
}
BENCHMARK(BM_CircuitSim)->Args({2, 1})->Args({2, 2});

void BM_HermitianEig(benchmark::State& st) {
  rnd::Rng rng(10);
  const auto h = rnd::random_hermitian(static_cast<std::size_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
