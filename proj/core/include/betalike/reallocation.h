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

#ifndef BETALIKE_REALLOCATION_H_
#define BETALIKE_REALLOCATION_H_

#include <cstdint>
#include <vector>

#include "betalike/bucketization.h"
#include "betalike/likeness.h"

namespace betalike {

// Number of tuples an equivalence class draws from each bucket.
struct AllocationVector {
  std::vector<std::int64_t> counts;

  std::int64_t size() const;
  friend bool operator==(const AllocationVector&, const AllocationVector&) = default;
};

// Eligibility: every bucket's share a_j/size stays within f of the bucket's
// least frequent value. Throws InvalidArgument on size 0 or length mismatch.
bool Eligible(const AllocationVector& a, const BucketPartition& partition,
              const PrivacyParams& params);

// Leaves of the recursive halving tree rooted at the full bucket sizes.
// A node splits into floor(a_j/2) (left) and the remainder (right) per
// bucket; the split is kept only if both children are non-empty and
// eligible. Leaves are returned left-first depth-first and sum component-wise
// to the bucket sizes.
std::vector<AllocationVector> BiSplit(const BucketPartition& partition,
                                      const PrivacyParams& params);

}  // namespace betalike

#endif  // BETALIKE_REALLOCATION_H_
