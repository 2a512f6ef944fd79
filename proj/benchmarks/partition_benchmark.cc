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

#include <algorithm>

#include "betalike/bucketization.h"
#include "betalike/reallocation.h"
#include "betalike/synthetic.h"

namespace betalike {
namespace {

Distribution ZipfDistribution(std::size_t m) {
  Distribution p;
  p.counts = ProfileCounts(ZipfProfile{0.5}, 1000000, m);
  std::sort(p.counts.begin(), p.counts.end());
  for (auto c : p.counts) p.total += c;
  return p;
}

void BM_PartitionValues(benchmark::State& state) {
  const Distribution p = ZipfDistribution(static_cast<std::size_t>(state.range(0)));
  const PrivacyParams params(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(PartitionValues(p, params));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PartitionValues)->RangeMultiplier(2)->Range(50, 1600)->Complexity();

void BM_BiSplit(benchmark::State& state) {
  const Table table = GenerateSynthetic(CensusLikeOptions(static_cast<std::size_t>(state.range(0)), 1));
  const PrivacyParams params(4.0);
  const BucketPartition partition = DpPartition(table, params);
  for (auto _ : state) benchmark::DoNotOptimize(BiSplit(partition, params));
}
BENCHMARK(BM_BiSplit)->Arg(10000)->Arg(100000);

}  // namespace
}  // namespace betalike
