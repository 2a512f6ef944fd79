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

#include "betalike/bucketization.h"

#include <cmath>
#include <numeric>

#include "betalike/errors.h"

namespace betalike {
namespace {

// sum_count/total < f(first_count/total), strict.
bool RunFits(std::int64_t sum_count, std::int64_t first_count, std::int64_t total,
             const PrivacyParams& params) {
  const double p = static_cast<double>(first_count) / static_cast<double>(total);
  if (p <= std::exp(-params.beta)) {
    return static_cast<long double>(sum_count) <
           (1.0L + static_cast<long double>(params.beta)) *
               static_cast<long double>(first_count);
  }
  const double mass = static_cast<double>(sum_count) / static_cast<double>(total);
  return mass < p * (1.0 - std::log(p));
}

}  // namespace

bool Combinable(const Distribution& p, std::size_t first, std::size_t last,
                const PrivacyParams& params) {
  if (first > last || last >= p.size()) {
    throw InvalidArgument("combinable: run [" + std::to_string(first) + ", " +
                          std::to_string(last) + "] out of range");
  }
  const std::int64_t sum = std::accumulate(p.counts.begin() + first,
                                           p.counts.begin() + last + 1, std::int64_t{0});
  return RunFits(sum, p.counts[first], p.total, params);
}

std::vector<ValueRun> PartitionValues(const Distribution& p,
                                      const PrivacyParams& params) {
  const std::size_t m = p.size();
  if (m == 0) throw InvalidArgument("empty distribution");
  if (m == 1) return {ValueRun{0, 0}};

  // 1-based prefix arrays: best[e] = min buckets for v_1..v_e, start[e] =
  // first value (1-based) of the last bucket in that solution.
  std::vector<std::size_t> best(m + 1, 0);
  std::vector<std::size_t> start(m + 1, 0);
  for (std::size_t e = 1; e <= m; ++e) {
    best[e] = best[e - 1] + 1;
    start[e] = e;
    std::int64_t sum = p.counts[e - 1];
    for (std::size_t b = e - 1; b > 0; --b) {
      sum += p.counts[b - 1];
      if (!RunFits(sum, p.counts[b - 1], p.total, params)) break;
      if (best[b - 1] + 1 < best[e]) {
        best[e] = best[b - 1] + 1;
        start[e] = b;
      }
    }
  }
  std::vector<ValueRun> runs;
  for (std::size_t e = m; e > 0; e = start[e] - 1) {
    runs.push_back(ValueRun{static_cast<SaId>(start[e] - 1), static_cast<SaId>(e - 1)});
  }
  return {runs.rbegin(), runs.rend()};
}

BucketPartition DpPartition(const Table& table, const PrivacyParams& params) {
  const Distribution dist = SaDistribution(table);
  const auto runs = PartitionValues(dist, params);
  BucketPartition partition;
  partition.total = dist.total;
  std::vector<std::size_t> bucket_of(dist.size());
  for (std::size_t j = 0; j < runs.size(); ++j) {
    Bucket bucket;
    bucket.values = runs[j];
    bucket.min_count = dist.counts[runs[j].first];
    for (SaId v = runs[j].first; v <= runs[j].last; ++v) {
      bucket.mass += dist.counts[v];
      bucket_of[v] = j;
    }
    bucket.rows.reserve(static_cast<std::size_t>(bucket.mass));
    partition.buckets.push_back(std::move(bucket));
  }
  for (RowIndex r = 0; r < table.size(); ++r) {
    partition.buckets[bucket_of[table.row(r).sa]].rows.push_back(r);
  }
  return partition;
}

}  // namespace betalike
