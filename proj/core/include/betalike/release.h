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

#ifndef BETALIKE_RELEASE_H_
#define BETALIKE_RELEASE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "betalike/likeness.h"
#include "betalike/schema.h"
#include "betalike/table.h"

namespace betalike {

// Closed range [low, high] of a numerical attribute within a class.
struct NumericRange {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const NumericRange&, const NumericRange&) = default;
};

// Lowest common ancestor of a class's categorical values.
struct CategoryNode {
  NodeId node = 0;
  LeafSpan leaves;

  friend bool operator==(const CategoryNode&, const CategoryNode&) = default;
};

using GeneralizedValue = std::variant<NumericRange, CategoryNode>;

struct EquivalenceClass {
  // Row indices into the source table; empty for releases read from disk.
  std::vector<RowIndex> members;
  // One entry per QI attribute.
  std::vector<GeneralizedValue> qi;
  // SA counts by SaId (the published multiset).
  EcDistribution sa;

  std::int64_t size() const { return sa.size(); }
};

struct ReleaseParameters {
  double beta = 0.0;
  std::uint64_t seed = 0;
  int curve_order = 0;
};

// Published output of generalization.
struct Release {
  std::shared_ptr<const Schema> schema;
  std::shared_ptr<const SaDomain> domain;
  Distribution overall;
  ReleaseParameters parameters;
  std::vector<EquivalenceClass> classes;
  // Set when produced in-process; gives access to member records.
  std::shared_ptr<const Table> source;

  std::int64_t row_count() const;
  std::vector<EcDistribution> ClassDistributions() const;
};

// JSON document carrying the schema, SA domain (ascending frequency order),
// overall counts, parameters and, per class, the generalized QI description
// and the members' SA labels. Member QI values are never written.
void WriteRelease(std::ostream& out, const Release& release);
void WriteRelease(const std::string& path, const Release& release);
Release ReadRelease(std::istream& in, const std::string& source_name = "<stream>");
Release ReadRelease(const std::string& path);

}  // namespace betalike

#endif  // BETALIKE_RELEASE_H_
