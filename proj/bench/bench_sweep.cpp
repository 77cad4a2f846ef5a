// Copyright 2026 The hindiv Authors
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

// Serial reference sweep against the OpenMP sweep on synthetic networks.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "hindiv/netdiv.hpp"
#include "hindiv/sweep.hpp"
#include "hindiv/synthetic.hpp"

namespace {

using namespace hindiv;

// Networks scale with the benchmark argument (users = items = n).
const Hin& network(std::int64_t n) {
  static std::map<std::int64_t, std::unique_ptr<Hin>> cache;
  auto& slot = cache[n];
  if (!slot) {
    TripartiteConfig cfg;
    cfg.users = static_cast<std::size_t>(n);
    cfg.items = static_cast<std::size_t>(n);
    cfg.tags = static_cast<std::size_t>(n / 100 + 1);
    cfg.consumed_edges = static_cast<std::size_t>(8 * n);
    cfg.tagged_edges = static_cast<std::size_t>(2 * n);
    slot = std::make_unique<Hin>(make_tripartite(cfg));
  }
  return *slot;
}

SweepRequest request(const Hin& h) {
  SweepRequest req;
  req.path = validate_metapath(h, {{EdgeTypeId{0}, Direction::kForward},
                                   {EdgeTypeId{1}, Direction::kForward}});
  return req;
}

void BM_SweepSerial(benchmark::State& state) {
  const Hin& h = network(state.range(0));
  const SweepRequest req = request(h);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(h, req));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const Hin& h = network(state.range(0));
  const SweepRequest req = request(h);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_parallel(h, req, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Collective(benchmark::State& state) {
  const Hin& h = network(state.range(0));
  const SweepRequest req = request(h);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        collective_diversity(h, req.path, StartSpec::uniform(), AlphaOrder::one()));
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)
    ->ArgsProduct({{10000, 100000}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_Collective)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
