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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "betalike/errors.h"
#include "fixtures.h"

namespace betalike {
namespace {

using ::testing::ElementsAre;

Distribution MakeDistribution(std::vector<std::int64_t> counts) {
  Distribution p;
  p.counts = std::move(counts);
  for (auto c : p.counts) p.total += c;
  return p;
}

// Independent bound in extended precision.
long double OracleBound(long double p, long double beta) {
  if (p <= std::exp(-beta)) return p * (1.0L + beta);
  return p * (1.0L - std::log(p));
}

// Linear branch by cross-multiplication.
bool RunBelowBound(long double mass, std::int64_t smallest, long double total, double beta) {
  const long double p = smallest / total;
  if (p <= std::exp(-static_cast<long double>(beta))) return mass < (1.0L + beta) * smallest;
  return mass / total < OracleBound(p, beta);
}

// Fewest contiguous runs such that each run's mass is below the bound of its
// least frequent member, by trying every set of cut points.
std::size_t BruteForceBuckets(const std::vector<std::int64_t>& counts, double beta) {
  const std::size_t m = counts.size();
  long double total = 0;
  for (auto c : counts) total += c;
  std::size_t best = m + 1;
  for (std::uint32_t cuts = 0; cuts < (1u << (m - 1)); ++cuts) {
    bool ok = true;
    std::size_t runs = 0;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const bool cut_after = i == m - 1 || (cuts >> i) & 1u;
      if (!cut_after) continue;
      long double mass = 0;
      std::int64_t smallest = counts[begin];
      for (std::size_t k = begin; k <= i; ++k) {
        mass += counts[k];
        smallest = std::min(smallest, counts[k]);
      }
      ok = i == begin || RunBelowBound(mass, smallest, total, beta);
      ++runs;
      begin = i + 1;
    }
    if (ok) best = std::min(best, runs);
  }
  return best;
}

TEST(CombinableTest, ExampleValues) {
  const Distribution p = MakeDistribution({2, 3, 3, 3, 4, 4});
  const PrivacyParams params(2.0);
  EXPECT_TRUE(Combinable(p, 0, 1, params));    // 5/19 < 0.3158
  EXPECT_FALSE(Combinable(p, 0, 2, params));   // 8/19 > 0.3158
  EXPECT_TRUE(Combinable(p, 2, 3, params));    // 6/19 < 0.449
  EXPECT_TRUE(Combinable(p, 4, 5, params));    // 8/19 < 0.5386
  EXPECT_TRUE(Combinable(p, 3, 3, params));
  EXPECT_THROW(Combinable(p, 3, 2, params), InvalidArgument);
  EXPECT_THROW(Combinable(p, 0, 6, params), InvalidArgument);
}

TEST(CombinableTest, StrictAtTheBoundary) {
  // p_first = 1/10, beta = 1: f = 0.2, and a run of mass exactly 0.2 is rejected.
  const Distribution p = MakeDistribution({1, 1, 8});
  EXPECT_FALSE(Combinable(p, 0, 1, PrivacyParams(1.0)));
  EXPECT_TRUE(Combinable(p, 0, 1, PrivacyParams(1.01)));
}

TEST(PartitionValuesTest, NineteenRowExample) {
  const auto runs = PartitionValues(MakeDistribution({2, 3, 3, 3, 4, 4}), PrivacyParams(2.0));
  EXPECT_THAT(runs, ElementsAre(ValueRun{0, 1}, ValueRun{2, 3}, ValueRun{4, 5}));
}

TEST(PartitionValuesTest, SingleValueAndTinyBeta) {
  EXPECT_THAT(PartitionValues(MakeDistribution({7}), PrivacyParams(1.0)),
              ElementsAre(ValueRun{0, 0}));
  // Nothing combines under a tiny beta.
  const auto runs = PartitionValues(MakeDistribution({1, 2, 3, 4}), PrivacyParams(1e-6));
  EXPECT_EQ(runs.size(), 4u);
}

TEST(PartitionValuesTest, RunsTileTheValueRange) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> count(1, 500);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> counts(40);
    for (auto& c : counts) c = count(rng);
    std::sort(counts.begin(), counts.end());
    const auto p = MakeDistribution(counts);
    const auto runs = PartitionValues(p, PrivacyParams(1.5));
    ASSERT_FALSE(runs.empty());
    EXPECT_EQ(runs.front().first, 0u);
    EXPECT_EQ(runs.back().last, 39u);
    for (std::size_t j = 0; j < runs.size(); ++j) {
      if (j > 0) EXPECT_EQ(runs[j].first, runs[j - 1].last + 1);
      if (runs[j].first != runs[j].last) {
        EXPECT_TRUE(Combinable(p, runs[j].first, runs[j].last, PrivacyParams(1.5)));
      }
    }
  }
}

TEST(PartitionValuesTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_int_distribution<std::int64_t> count(1, 60);
  const double betas[] = {0.5, 1.0, 2.0, 4.0};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> counts(size(rng));
    for (auto& c : counts) c = count(rng);
    std::sort(counts.begin(), counts.end());
    const double beta = betas[trial % 4];
    const auto runs = PartitionValues(MakeDistribution(counts), PrivacyParams(beta));
    ASSERT_EQ(runs.size(), BruteForceBuckets(counts, beta)) << "trial " << trial;
  }
}

TEST(DpPartitionTest, NineteenRowTableBuckets) {
  const Table table = testing::NineteenRowTable();
  const BucketPartition partition = DpPartition(table, PrivacyParams(2.0));
  ASSERT_EQ(partition.size(), 3u);
  auto labels = [&](const Bucket& b) {
    std::vector<std::string> out;
    for (SaId v = b.values.first; v <= b.values.last; ++v) out.push_back(table.domain().label(v));
    return out;
  };
  EXPECT_THAT(labels(partition.buckets[0]), ElementsAre("headache", "epilepsy"));
  EXPECT_THAT(labels(partition.buckets[1]), ElementsAre("brain tumors", "anemia"));
  EXPECT_THAT(labels(partition.buckets[2]), ElementsAre("angina", "heart murmur"));
  EXPECT_EQ(partition.buckets[0].mass, 5);
  EXPECT_EQ(partition.buckets[1].mass, 6);
  EXPECT_EQ(partition.buckets[2].mass, 8);
  EXPECT_EQ(partition.buckets[0].min_count, 2);
  std::size_t rows = 0;
  for (const auto& b : partition.buckets) {
    rows += b.rows.size();
    for (RowIndex r : b.rows) {
      EXPECT_GE(table.row(r).sa, b.values.first);
      EXPECT_LE(table.row(r).sa, b.values.last);
    }
  }
  EXPECT_EQ(rows, table.size());
}

}  // namespace
}  // namespace betalike
