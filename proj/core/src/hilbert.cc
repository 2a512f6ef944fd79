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

#include <algorithm>
#include <cmath>

#include "betalike/errors.h"

namespace betalike {
namespace {

void CheckOrder(std::size_t dims, int order) {
  if (order < 1 || order > 31) throw InvalidArgument("curve order must lie in [1, 31]");
  if (dims == 0) throw InvalidArgument("Hilbert index needs at least one dimension");
  if (dims * static_cast<std::size_t>(order) > 128) {
    throw InvalidArgument("dimensions * curve order exceeds 128 bits");
  }
}

}  // namespace

HilbertKey HilbertIndex(std::span<const std::uint32_t> cell, int order) {
  const std::size_t n = cell.size();
  CheckOrder(n, order);
  const std::uint32_t limit = (1u << order) - 1u;
  for (std::uint32_t c : cell) {
    if (c > limit) throw InvalidArgument("cell coordinate exceeds the curve order");
  }
  if (n == 1) return cell[0];

  std::vector<std::uint32_t> x(cell.begin(), cell.end());
  const std::uint32_t top = 1u << (order - 1);
  // Inverse undo.
  for (std::uint32_t q = top; q > 1; q >>= 1) {
    const std::uint32_t p = q - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        const std::uint32_t t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
  // Gray encode.
  for (std::size_t i = 1; i < n; ++i) x[i] ^= x[i - 1];
  std::uint32_t t = 0;
  for (std::uint32_t q = top; q > 1; q >>= 1) {
    if (x[n - 1] & q) t ^= q - 1;
  }
  for (auto& v : x) v ^= t;

  // Interleave the transposed bits, most significant first.
  HilbertKey key = 0;
  for (int bit = order - 1; bit >= 0; --bit) {
    for (std::size_t i = 0; i < n; ++i) {
      key = (key << 1) | ((x[i] >> bit) & 1u);
    }
  }
  return key;
}

std::vector<std::uint32_t> QuantizeQi(const Record& record, const Schema& schema,
                                      int order) {
  CheckOrder(schema.qi_count(), order);
  const double cells = std::ldexp(1.0, order) - 1.0;
  std::vector<std::uint32_t> out(schema.qi_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& attr = schema.qi(k);
    double unit;
    if (attr.is_numerical()) {
      unit = (record.qi[k] - attr.lower) / (attr.upper - attr.lower);
    } else {
      const auto leaves = attr.hierarchy->leaf_count();
      unit = leaves > 1 ? record.qi[k] / static_cast<double>(leaves - 1) : 0.0;
    }
    const double c = std::floor(std::clamp(unit, 0.0, 1.0) * cells + 0.5);
    out[k] = static_cast<std::uint32_t>(std::min(c, cells));
  }
  return out;
}

HilbertKey ComputeHilbertKey(const Record& record, const Schema& schema, int order) {
  const auto cell = QuantizeQi(record, schema, order);
  return HilbertIndex(cell, order);
}

std::string HilbertKeyToString(HilbertKey key) {
  if (key == 0) return "0";
  std::string digits;
  while (key > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(key % 10)));
    key /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

}  // namespace betalike
