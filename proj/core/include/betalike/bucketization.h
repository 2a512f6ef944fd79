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

#ifndef BETALIKE_BUCKETIZATION_H_
#define BETALIKE_BUCKETIZATION_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "betalike/likeness.h"
#include "betalike/table.h"

namespace betalike {

// A contiguous run [first, last] of SA ids (ascending frequency order).
struct ValueRun {
  SaId first = 0;
  SaId last = 0;

  friend bool operator==(const ValueRun&, const ValueRun&) = default;
};

struct Bucket {
  ValueRun values;
  std::vector<RowIndex> rows;
  // Count of the least frequent value in the run (its first value).
  std::int64_t min_count = 0;
  // Sum of counts of the run's values, i.e. |B_j|.
  std::int64_t mass = 0;
};

// Exact partition of a table by SA-value runs, buckets ordered by run.
struct BucketPartition {
  std::vector<Bucket> buckets;
  std::int64_t total = 0;

  std::size_t size() const { return buckets.size(); }
};

// Whether values first..last (0-based, inclusive, ascending frequency) may
// share a bucket: sum of their frequencies < f(p_first). Throws
// InvalidArgument when the indices are out of range or reversed.
bool Combinable(const Distribution& p, std::size_t first, std::size_t last,
                const PrivacyParams& params);

// Minimum-count segmentation of the ascending value sequence into combinable
// runs (dynamic program over prefixes; a run's minimum is its first value so
// the scan for each end stops at the first non-combinable start). Among
// equal-count segmentations the last run is the shortest one found first.
// A single-value domain yields one run.
std::vector<ValueRun> PartitionValues(const Distribution& p,
                                      const PrivacyParams& params);

// Bucket partition of `table` following PartitionValues; row lists keep
// table order.
BucketPartition DpPartition(const Table& table, const PrivacyParams& params);

}  // namespace betalike

#endif  // BETALIKE_BUCKETIZATION_H_
