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

#ifndef BETALIKE_GENERALIZER_H_
#define BETALIKE_GENERALIZER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "betalike/bucketization.h"
#include "betalike/hilbert.h"
#include "betalike/likeness.h"
#include "betalike/release.h"
#include "betalike/table.h"

namespace betalike {

// Rows of one bucket kept in Hilbert order, with removal. Backed by a
// Fenwick tree over the static sorted order so rank queries, k-th live entry
// and removal are all O(log n).
class HilbertBucket {
 public:
  struct Entry {
    HilbertKey key = 0;
    RowIndex row = 0;
  };

  // Entries are sorted by (key, row); equal keys keep row order.
  explicit HilbertBucket(std::vector<Entry> entries);

  std::size_t remaining() const { return live_; }
  // The `rank`-th live entry in curve order (0-based).
  const Entry& LiveAt(std::size_t rank) const;
  // Removes a specific live row. Throws InvalidArgument if not present.
  void Remove(RowIndex row, HilbertKey key);

  // Removes and returns the `count` live entries whose keys are closest to
  // `anchor`: binary search for the insertion point, then grow a window one
  // entry at a time towards the nearer side (ties go to the lower key).
  // Throws InvalidArgument when count exceeds the remaining size.
  std::vector<RowIndex> Retrieve(HilbertKey anchor, std::size_t count);

 private:
  void Erase(std::size_t position);
  // Number of live entries at static positions < position.
  std::size_t LiveBefore(std::size_t position) const;
  std::size_t PositionOfRank(std::size_t rank) const;

  std::vector<Entry> entries_;
  std::vector<bool> alive_;
  std::vector<std::int32_t> tree_;
  std::size_t live_ = 0;
};

enum class RetrievalMode {
  kHilbert,  // nearest Hilbert neighbours of the anchor
  kRandom,   // uniformly random members; a locality baseline
};

struct BurelOptions {
  double beta = 4.0;
  std::uint64_t seed = 0;
  int curve_order = kDefaultCurveOrder;
  RetrievalMode retrieval = RetrievalMode::kHilbert;
};

// Generalized description of a non-empty set of rows: min/max per numerical
// attribute, lowest common ancestor per categorical attribute.
std::vector<GeneralizedValue> GeneralizeRows(const Table& table,
                                             std::span<const RowIndex> rows);

// Bucketize, split allocations, then materialize one class per allocation
// leaf. The anchor of each class is a seeded uniform pick from the bucket
// with the largest demand (lowest index on ties) and counts toward that
// bucket's draw.
Release Burel(std::shared_ptr<const Table> table, const BurelOptions& options);

}  // namespace betalike

#endif  // BETALIKE_GENERALIZER_H_
