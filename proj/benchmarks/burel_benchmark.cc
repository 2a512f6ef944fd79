//
// Copyright 2026 The betalike Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <benchmark/benchmark.h>

#include <memory>

#include "betalike/generalizer.h"
#include "betalike/synthetic.h"

namespace betalike {
namespace {

void BM_Burel(benchmark::State& state) {
  auto table = std::make_shared<const Table>(
      GenerateSynthetic(CensusLikeOptions(static_cast<std::size_t>(state.range(0)), 1)));
  BurelOptions options;
  options.beta = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Burel(table, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Burel)
    ->ArgsProduct({{10000, 100000}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace betalike
