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

#include <numeric>
#include <utility>

#include "betalike/errors.h"

namespace betalike {

std::int64_t AllocationVector::size() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

bool Eligible(const AllocationVector& a, const BucketPartition& partition,
              const PrivacyParams& params) {
  if (a.counts.size() != partition.size()) {
    throw InvalidArgument("allocation length does not match the bucket count");
  }
  const std::int64_t size = a.size();
  if (size <= 0) throw InvalidArgument("allocation of size 0");
  for (std::size_t j = 0; j < a.counts.size(); ++j) {
    if (a.counts[j] < 0) throw InvalidArgument("negative allocation");
    if (!WithinFrequencyBound(a.counts[j], size, partition.buckets[j].min_count,
                              partition.total, params)) {
      return false;
    }
  }
  return true;
}

std::vector<AllocationVector> BiSplit(const BucketPartition& partition,
                                      const PrivacyParams& params) {
  AllocationVector root;
  for (const auto& bucket : partition.buckets) root.counts.push_back(bucket.mass);

  std::vector<AllocationVector> leaves;
  // Explicit stack; the right child is pushed first so the left is expanded
  // first.
  std::vector<AllocationVector> pending{std::move(root)};
  while (!pending.empty()) {
    AllocationVector node = std::move(pending.back());
    pending.pop_back();
    AllocationVector left, right;
    left.counts.reserve(node.counts.size());
    right.counts.reserve(node.counts.size());
    for (std::int64_t c : node.counts) {
      left.counts.push_back(c / 2);
      right.counts.push_back(c - c / 2);
    }
    if (left.size() > 0 && right.size() > 0 && Eligible(left, partition, params) &&
        Eligible(right, partition, params)) {
      pending.push_back(std::move(right));
      pending.push_back(std::move(left));
    } else {
      leaves.push_back(std::move(node));
    }
  }
  return leaves;
}

}  // namespace betalike
