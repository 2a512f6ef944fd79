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

#ifndef BETALIKE_QUERY_H_
#define BETALIKE_QUERY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "betalike/perturbation.h"
#include "betalike/release.h"
#include "betalike/table.h"

namespace betalike {

// Closed interval over one QI axis: attribute values for numerical
// attributes, pre-order leaf ranks for categorical ones.
struct QiPredicate {
  std::size_t attribute = 0;
  double low = 0.0;
  double high = 0.0;
};

// COUNT(*) WHERE every QI predicate holds AND sa_first <= SA id <= sa_last.
struct AggregateQuery {
  std::vector<QiPredicate> qi;
  SaId sa_first = 0;
  SaId sa_last = 0;
};

// n queries, each constraining `lambda` distinct QI attributes chosen
// uniformly plus the SA. Every constrained axis gets a uniformly placed
// interval covering a fraction theta^(1/(lambda+1)) of it; categorical axes
// and the SA round that to a whole number (at least one) of leaves or values.
// Throws InvalidArgument unless 1 <= lambda <= d and 0 < theta < 1.
std::vector<AggregateQuery> GenWorkload(const Schema& schema, std::size_t sa_values,
                                        std::size_t lambda, double theta, std::size_t n,
                                        std::uint64_t seed);

bool Matches(const Record& record, const AggregateQuery& q);
std::int64_t ExactCount(const Table& table, const AggregateQuery& q);

// Fraction of a class extent inside the predicate interval, assuming members
// spread uniformly. Integer-valued attributes and categorical leaf spans
// count whole points; a zero-width extent is 1 when inside and 0 otherwise.
double OverlapFraction(const GeneralizedValue& extent, const AttributeSchema& attribute,
                       const QiPredicate& predicate);

double EstimateGeneralized(const Release& release, const AggregateQuery& q);

// Filters rows on exact QI values, reconstructs the SA counts of the filtered
// set and sums the clamped estimates over the SA range.
double EstimatePerturbed(const Table& perturbed, const Reconstructor& reconstructor,
                         const AggregateQuery& q);

// |filtered rows| times the global mass of the SA range.
double EstimateBaseline(const Table& table, const Distribution& p, const AggregateQuery& q);

struct QueryOutcome {
  std::int64_t prec = 0;
  double est = 0.0;
  std::optional<double> relative_error;  // empty when prec == 0
};

struct WorkloadReport {
  std::vector<QueryOutcome> queries;
  std::size_t dropped = 0;
  std::optional<double> median;  // empty when every query was dropped

  bool median_defined() const { return median.has_value(); }
};

using Estimator = std::function<double(const AggregateQuery&)>;

WorkloadReport EvaluateWorkload(const Table& original,
                                std::span<const AggregateQuery> workload,
                                const Estimator& estimator);

// Median of a non-empty sample (mean of the middle pair for even sizes).
double Median(std::vector<double> values);

// One query per line: "sa_first,sa_last,attribute:low:high;..." with SA
// labels and attribute names.
void WriteWorkload(std::ostream& out, const Schema& schema, const SaDomain& domain,
                   std::span<const AggregateQuery> workload);
void WriteReport(std::ostream& out, const WorkloadReport& report);

}  // namespace betalike

#endif  // BETALIKE_QUERY_H_
