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

#include "betalike/reallocation.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "betalike/errors.h"
#include "fixtures.h"

namespace betalike {
namespace {

using ::testing::ElementsAre;

AllocationVector A(std::vector<std::int64_t> counts) { return AllocationVector{std::move(counts)}; }

BucketPartition ExamplePartition() {
  return DpPartition(testing::NineteenRowTable(), PrivacyParams(2.0));
}

TEST(EligibleTest, ExampleNodes) {
  const BucketPartition partition = ExamplePartition();
  const PrivacyParams params(2.0);
  EXPECT_TRUE(Eligible(A({5, 6, 8}), partition, params));
  EXPECT_TRUE(Eligible(A({2, 3, 4}), partition, params));
  EXPECT_TRUE(Eligible(A({3, 3, 4}), partition, params));
  EXPECT_TRUE(Eligible(A({1, 1, 2}), partition, params));
  // 2/6 exceeds f(2/19).
  EXPECT_FALSE(Eligible(A({2, 2, 2}), partition, params));
  EXPECT_THROW(Eligible(A({0, 0, 0}), partition, params), InvalidArgument);
  EXPECT_THROW(Eligible(A({1, 1}), partition, params), InvalidArgument);
}

TEST(BiSplitTest, ExampleLeaves) {
  const auto leaves = BiSplit(ExamplePartition(), PrivacyParams(2.0));
  EXPECT_THAT(leaves, ElementsAre(A({1, 1, 2}), A({1, 2, 2}), A({3, 3, 4})));
}

TEST(BiSplitTest, ProportionalRootSplitsToTheBottom) {
  // One bucket per value, all equal: every halving stays proportional.
  BucketPartition partition;
  for (int j = 0; j < 4; ++j) {
    Bucket b;
    b.values = {static_cast<SaId>(j), static_cast<SaId>(j)};
    b.min_count = 8;
    b.mass = 8;
    partition.buckets.push_back(b);
  }
  partition.total = 32;
  const auto leaves = BiSplit(partition, PrivacyParams(0.1));
  ASSERT_EQ(leaves.size(), 8u);
  for (const auto& leaf : leaves) EXPECT_EQ(leaf, A({1, 1, 1, 1}));
}

TEST(BiSplitTest, ConservesBucketsAndStaysEligible) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> count(1, 400);
  for (int trial = 0; trial < 100; ++trial) {
    Distribution p;
    p.counts.resize(20);
    for (auto& c : p.counts) c = count(rng);
    std::sort(p.counts.begin(), p.counts.end());
    for (auto c : p.counts) p.total += c;
    const PrivacyParams params(0.5 + trial % 5);
    BucketPartition partition;
    partition.total = p.total;
    for (const auto& run : PartitionValues(p, params)) {
      Bucket b;
      b.values = run;
      b.min_count = p.counts[run.first];
      for (SaId v = run.first; v <= run.last; ++v) b.mass += p.counts[v];
      partition.buckets.push_back(b);
    }
    const auto leaves = BiSplit(partition, params);
    std::vector<std::int64_t> sums(partition.size(), 0);
    for (const auto& leaf : leaves) {
      ASSERT_GT(leaf.size(), 0);
      ASSERT_TRUE(Eligible(leaf, partition, params));
      for (std::size_t j = 0; j < sums.size(); ++j) sums[j] += leaf.counts[j];
    }
    for (std::size_t j = 0; j < sums.size(); ++j) ASSERT_EQ(sums[j], partition.buckets[j].mass);
  }
}

}  // namespace
}  // namespace betalike
