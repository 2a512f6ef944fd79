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

#include "betalike/generalizer.h"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "betalike/errors.h"
#include "betalike/reallocation.h"

namespace betalike {

HilbertBucket::HilbertBucket(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key < b.key : a.row < b.row;
  });
  const std::size_t n = entries_.size();
  alive_.assign(n, true);
  live_ = n;
  // Linear-time Fenwick build with all counts 1.
  tree_.assign(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    tree_[i] += 1;
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= n) tree_[parent] += tree_[i];
  }
}

std::size_t HilbertBucket::LiveBefore(std::size_t position) const {
  std::int64_t sum = 0;
  for (std::size_t i = position; i > 0; i -= i & (~i + 1)) sum += tree_[i];
  return static_cast<std::size_t>(sum);
}

std::size_t HilbertBucket::PositionOfRank(std::size_t rank) const {
  // Smallest position whose prefix count exceeds rank.
  std::size_t pos = 0;
  std::size_t step = 1;
  while (step * 2 <= entries_.size()) step *= 2;
  std::int64_t remaining = static_cast<std::int64_t>(rank);
  for (; step > 0; step /= 2) {
    if (pos + step <= entries_.size() && tree_[pos + step] <= remaining) {
      pos += step;
      remaining -= tree_[pos];
    }
  }
  return pos;  // 0-based static position
}

const HilbertBucket::Entry& HilbertBucket::LiveAt(std::size_t rank) const {
  if (rank >= live_) throw InvalidArgument("bucket rank out of range");
  return entries_[PositionOfRank(rank)];
}

void HilbertBucket::Erase(std::size_t position) {
  alive_[position] = false;
  --live_;
  for (std::size_t i = position + 1; i <= entries_.size(); i += i & (~i + 1)) {
    tree_[i] -= 1;
  }
}

void HilbertBucket::Remove(RowIndex row, HilbertKey key) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{key, row},
                             [](const Entry& a, const Entry& b) {
                               return a.key != b.key ? a.key < b.key : a.row < b.row;
                             });
  const auto pos = static_cast<std::size_t>(it - entries_.begin());
  if (it == entries_.end() || it->row != row || it->key != key || !alive_[pos]) {
    throw InvalidArgument("row " + std::to_string(row) + " is not in the bucket");
  }
  Erase(pos);
}

std::vector<RowIndex> HilbertBucket::Retrieve(HilbertKey anchor, std::size_t count) {
  if (count > live_) {
    throw InvalidArgument("cannot retrieve " + std::to_string(count) + " rows from a bucket holding " +
                          std::to_string(live_));
  }
  const auto insertion = static_cast<std::size_t>(
      std::lower_bound(entries_.begin(), entries_.end(), anchor,
                       [](const Entry& e, HilbertKey k) { return e.key < k; }) -
      entries_.begin());
  const std::size_t split = LiveBefore(insertion);
  // Live ranks [left, right) form the window taken so far.
  std::size_t left = split;
  std::size_t right = split;
  while (right - left < count) {
    const bool has_left = left > 0;
    const bool has_right = right < live_;
    bool take_left;
    if (has_left && has_right) {
      const HilbertKey dl = anchor - LiveAt(left - 1).key;
      const HilbertKey dr = LiveAt(right).key - anchor;
      take_left = dl <= dr;
    } else {
      take_left = has_left;
    }
    if (take_left) {
      --left;
    } else {
      ++right;
    }
  }
  std::vector<std::size_t> positions;
  positions.reserve(count);
  for (std::size_t r = left; r < right; ++r) positions.push_back(PositionOfRank(r));
  std::vector<RowIndex> rows;
  rows.reserve(count);
  for (std::size_t pos : positions) {
    rows.push_back(entries_[pos].row);
    Erase(pos);
  }
  return rows;
}

std::vector<GeneralizedValue> GeneralizeRows(const Table& table,
                                             std::span<const RowIndex> rows) {
  if (rows.empty()) throw InvalidArgument("cannot generalize an empty row set");
  const Schema& schema = table.schema();
  std::vector<GeneralizedValue> out;
  out.reserve(schema.qi_count());
  for (std::size_t k = 0; k < schema.qi_count(); ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (RowIndex r : rows) {
      const double v = table.row(r).qi[k];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const auto& attr = schema.qi(k);
    if (attr.is_numerical()) {
      out.emplace_back(NumericRange{lo, hi});
    } else {
      const NodeId node = attr.hierarchy->lowest_common_ancestor(
          static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
      out.emplace_back(CategoryNode{node, attr.hierarchy->span(node)});
    }
  }
  return out;
}

Release Burel(std::shared_ptr<const Table> table, const BurelOptions& options) {
  if (table == nullptr) throw InvalidArgument("null table");
  const PrivacyParams params(options.beta);
  const Schema& schema = table->schema();
  if (options.curve_order < 1 || options.curve_order > 31 ||
      schema.qi_count() * static_cast<std::size_t>(options.curve_order) > 128) {
    throw InvalidArgument("curve order must lie in [1, 31] with QI count * order <= 128");
  }

  const Distribution overall = SaDistribution(*table);
  const BucketPartition partition = DpPartition(*table, params);
  const auto leaves = BiSplit(partition, params);

  std::vector<HilbertKey> keys(table->size());
  for (RowIndex r = 0; r < table->size(); ++r) {
    keys[r] = ComputeHilbertKey(table->row(r), schema, options.curve_order);
  }
  std::vector<HilbertBucket> buckets;
  buckets.reserve(partition.size());
  for (const auto& bucket : partition.buckets) {
    std::vector<HilbertBucket::Entry> entries;
    entries.reserve(bucket.rows.size());
    for (RowIndex r : bucket.rows) entries.push_back({keys[r], r});
    buckets.emplace_back(std::move(entries));
  }

  std::mt19937_64 rng(options.seed);
  auto draw_rank = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };

  Release release;
  release.schema = table->schema_ptr();
  release.domain = table->domain_ptr();
  release.overall = overall;
  release.parameters = {options.beta, options.seed, options.curve_order};
  release.source = table;
  release.classes.reserve(leaves.size());

  for (const auto& leaf : leaves) {
    const auto anchor_bucket = static_cast<std::size_t>(
        std::max_element(leaf.counts.begin(), leaf.counts.end()) - leaf.counts.begin());
    HilbertBucket& home = buckets[anchor_bucket];
    const HilbertBucket::Entry anchor = home.LiveAt(draw_rank(home.remaining()));
    home.Remove(anchor.row, anchor.key);

    std::vector<RowIndex> members{anchor.row};
    for (std::size_t j = 0; j < leaf.counts.size(); ++j) {
      auto want = static_cast<std::size_t>(leaf.counts[j]);
      if (j == anchor_bucket) --want;
      if (want == 0) continue;
      if (options.retrieval == RetrievalMode::kHilbert) {
        auto rows = buckets[j].Retrieve(anchor.key, want);
        members.insert(members.end(), rows.begin(), rows.end());
      } else {
        for (std::size_t t = 0; t < want; ++t) {
          const auto picked = buckets[j].LiveAt(draw_rank(buckets[j].remaining()));
          buckets[j].Remove(picked.row, picked.key);
          members.push_back(picked.row);
        }
      }
    }
    std::sort(members.begin(), members.end());

    EquivalenceClass ec;
    ec.sa.counts.assign(overall.size(), 0);
    for (RowIndex r : members) ++ec.sa.counts[table->row(r).sa];
    ec.qi = GeneralizeRows(*table, members);
    ec.members = std::move(members);
    release.classes.push_back(std::move(ec));
  }
  for (const auto& bucket : buckets) {
    if (bucket.remaining() != 0) {
      throw InvariantBreach("allocation leaves did not exhaust every bucket");
    }
  }
  return release;
}

}  // namespace betalike
