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

#include "betalike/hilbert.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <map>
#include <set>

#include "betalike/errors.h"
#include "fixtures.h"

namespace betalike {
namespace {

std::map<HilbertKey, std::vector<std::uint32_t>> WalkGrid(std::size_t dims, int order) {
  const std::uint32_t side = 1u << order;
  std::map<HilbertKey, std::vector<std::uint32_t>> by_key;
  std::vector<std::uint32_t> cell(dims, 0);
  while (true) {
    by_key.emplace(HilbertIndex(cell, order), cell);
    std::size_t k = 0;
    while (k < dims && ++cell[k] == side) cell[k++] = 0;
    if (k == dims) break;
  }
  return by_key;
}

TEST(HilbertIndexTest, OneDimensionIsIdentity) {
  for (std::uint32_t x : {0u, 1u, 7u, 255u}) {
    const std::uint32_t cell[] = {x};
    EXPECT_EQ(HilbertIndex(cell, 8), static_cast<HilbertKey>(x));
  }
}

TEST(HilbertIndexTest, SmallestSquareVisitsAllFourCells) {
  const auto walk = WalkGrid(2, 1);
  ASSERT_EQ(walk.size(), 4u);
  EXPECT_EQ(walk.begin()->first, 0u);
  EXPECT_EQ(walk.rbegin()->first, 3u);
  EXPECT_EQ(walk.begin()->second, (std::vector<std::uint32_t>{0, 0}));
}

class HilbertWalkTest : public ::testing::TestWithParam<std::pair<std::size_t, int>> {};

TEST_P(HilbertWalkTest, BijectiveAndUnitSteps) {
  const auto [dims, order] = GetParam();
  const auto walk = WalkGrid(dims, order);
  const std::size_t cells = std::size_t{1} << (dims * order);
  ASSERT_EQ(walk.size(), cells);
  EXPECT_EQ(walk.rbegin()->first, static_cast<HilbertKey>(cells - 1));
  const std::vector<std::uint32_t>* previous = nullptr;
  for (const auto& [key, cell] : walk) {
    if (previous != nullptr) {
      int distance = 0;
      for (std::size_t k = 0; k < dims; ++k) {
        distance += std::abs(static_cast<int>(cell[k]) - static_cast<int>((*previous)[k]));
      }
      ASSERT_EQ(distance, 1) << "key " << HilbertKeyToString(key);
    }
    previous = &cell;
  }
}

INSTANTIATE_TEST_SUITE_P(Grids, HilbertWalkTest,
                         ::testing::Values(std::pair<std::size_t, int>{2, 1},
                                           std::pair<std::size_t, int>{2, 3},
                                           std::pair<std::size_t, int>{2, 5},
                                           std::pair<std::size_t, int>{3, 2},
                                           std::pair<std::size_t, int>{3, 3},
                                           std::pair<std::size_t, int>{4, 2}));

TEST(HilbertIndexTest, RejectsBadArguments) {
  const std::uint32_t cell[] = {1, 2};
  EXPECT_THROW(HilbertIndex(cell, 0), InvalidArgument);
  EXPECT_THROW(HilbertIndex(cell, 32), InvalidArgument);
  EXPECT_THROW(HilbertIndex(cell, 1), InvalidArgument);  // 2 > 1
  EXPECT_THROW(HilbertIndex(std::span<const std::uint32_t>(), 4), InvalidArgument);
  const std::vector<std::uint32_t> wide(5, 0);
  EXPECT_THROW(HilbertIndex(wide, 26), InvalidArgument);  // 130 bits
  EXPECT_NO_THROW(HilbertIndex(std::vector<std::uint32_t>(4, 0), 31));
}

TEST(HilbertIndexTest, WideKeysUseAllBits) {
  const std::vector<std::uint32_t> corner(4, (1u << 31) - 1);
  const HilbertKey key = HilbertIndex(corner, 31);
  EXPECT_GT(key, static_cast<HilbertKey>(~std::uint64_t{0}));
  EXPECT_EQ(HilbertKeyToString(0), "0");
  EXPECT_EQ(HilbertKeyToString(static_cast<HilbertKey>(1) << 64), "18446744073709551616");
}

TEST(QuantizeQiTest, MapsDomainEndsToGridEnds) {
  const Schema schema = testing::PatientSchema();
  Record low{{40, 20}, 0};
  Record high{{100, 80}, 0};
  Record mid{{70, 50}, 0};
  EXPECT_EQ(QuantizeQi(low, schema, 4), (std::vector<std::uint32_t>{0, 0}));
  EXPECT_EQ(QuantizeQi(high, schema, 4), (std::vector<std::uint32_t>{15, 15}));
  EXPECT_EQ(QuantizeQi(mid, schema, 4), (std::vector<std::uint32_t>{8, 8}));
}

TEST(QuantizeQiTest, CategoricalUsesLeafRank) {
  std::vector<AttributeSchema> attrs;
  attrs.push_back(AttributeSchema::Categorical(
      "color", Hierarchy::Flat("*", {"red", "green", "blue", "black", "white"})));
  attrs.push_back(AttributeSchema::Categorical("disease", testing::DiseaseHierarchy(),
                                               Role::kSensitive));
  const Schema schema(std::move(attrs));
  EXPECT_EQ(QuantizeQi(Record{{0}, 0}, schema, 2)[0], 0u);
  EXPECT_EQ(QuantizeQi(Record{{2}, 0}, schema, 2)[0], 2u);  // 0.5 * 3 rounds to 2
  EXPECT_EQ(QuantizeQi(Record{{4}, 0}, schema, 2)[0], 3u);
}

}  // namespace
}  // namespace betalike
