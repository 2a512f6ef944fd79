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

#include "betalike/query.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <variant>

#include "betalike/errors.h"

namespace betalike {
namespace {

// Number of whole units of an axis of `units` covered by `fraction`.
std::size_t WholeUnits(std::size_t units, double fraction) {
  const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(units) * fraction));
  return std::clamp<std::size_t>(k, 1, units);
}

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t upper_inclusive) {
  return std::uniform_int_distribution<std::size_t>(0, upper_inclusive)(rng);
}

}  // namespace

std::vector<AggregateQuery> GenWorkload(const Schema& schema, std::size_t sa_values,
                                        std::size_t lambda, double theta, std::size_t n,
                                        std::uint64_t seed) {
  const std::size_t d = schema.qi_count();
  if (lambda < 1 || lambda > d) {
    throw InvalidArgument("lambda must lie in [1, " + std::to_string(d) + "]");
  }
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
  if (sa_values == 0) throw InvalidArgument("SA domain is empty");
  const double fraction = std::pow(theta, 1.0 / static_cast<double>(lambda + 1));

  std::mt19937_64 rng(seed);
  std::vector<AggregateQuery> workload;
  workload.reserve(n);
  std::vector<std::size_t> order(d);
  for (std::size_t q = 0; q < n; ++q) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < lambda; ++i) {
      std::swap(order[i], order[i + UniformIndex(rng, d - 1 - i)]);
    }
    std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<long>(lambda));
    std::sort(chosen.begin(), chosen.end());

    AggregateQuery query;
    for (std::size_t k : chosen) {
      const auto& attr = schema.qi(k);
      QiPredicate predicate;
      predicate.attribute = k;
      if (attr.is_numerical()) {
        const double length = (attr.upper - attr.lower) * fraction;
        predicate.low = std::uniform_real_distribution<double>(
            attr.lower, attr.upper - length)(rng);
        predicate.high = predicate.low + length;
      } else {
        const std::size_t leaves = attr.hierarchy->leaf_count();
        const std::size_t width = WholeUnits(leaves, fraction);
        const std::size_t start = UniformIndex(rng, leaves - width);
        predicate.low = static_cast<double>(start);
        predicate.high = static_cast<double>(start + width - 1);
      }
      query.qi.push_back(predicate);
    }
    const std::size_t width = WholeUnits(sa_values, fraction);
    const std::size_t start = UniformIndex(rng, sa_values - width);
    query.sa_first = static_cast<SaId>(start);
    query.sa_last = static_cast<SaId>(start + width - 1);
    workload.push_back(std::move(query));
  }
  return workload;
}

bool Matches(const Record& record, const AggregateQuery& q) {
  if (record.sa < q.sa_first || record.sa > q.sa_last) return false;
  for (const auto& predicate : q.qi) {
    const double v = record.qi[predicate.attribute];
    if (v < predicate.low || v > predicate.high) return false;
  }
  return true;
}

std::int64_t ExactCount(const Table& table, const AggregateQuery& q) {
  std::int64_t count = 0;
  for (const auto& row : table.rows()) count += Matches(row, q) ? 1 : 0;
  return count;
}

double OverlapFraction(const GeneralizedValue& extent, const AttributeSchema& attribute,
                       const QiPredicate& predicate) {
  double low, high;
  bool discrete = true;
  if (const auto* range = std::get_if<NumericRange>(&extent)) {
    low = range->low;
    high = range->high;
    discrete = attribute.integral;
  } else {
    const auto& node = std::get<CategoryNode>(extent);
    low = static_cast<double>(node.leaves.first);
    high = static_cast<double>(node.leaves.last);
  }
  if (low == high) return (predicate.low <= low && low <= predicate.high) ? 1.0 : 0.0;
  const double lo = std::max(low, predicate.low);
  const double hi = std::min(high, predicate.high);
  if (discrete) {
    const double points = std::floor(hi) - std::ceil(lo) + 1.0;
    return points <= 0.0 ? 0.0 : points / (high - low + 1.0);
  }
  return hi <= lo ? 0.0 : (hi - lo) / (high - low);
}

double EstimateGeneralized(const Release& release, const AggregateQuery& q) {
  const Schema& schema = *release.schema;
  double estimate = 0.0;
  for (const auto& ec : release.classes) {
    std::int64_t matching = 0;
    for (SaId v = q.sa_first; v <= q.sa_last && v < ec.sa.counts.size(); ++v) {
      matching += ec.sa.counts[v];
    }
    if (matching == 0) continue;
    double share = static_cast<double>(matching);
    for (const auto& predicate : q.qi) {
      share *= OverlapFraction(ec.qi[predicate.attribute], schema.qi(predicate.attribute),
                               predicate);
      if (share == 0.0) break;
    }
    estimate += share;
  }
  return estimate;
}

namespace {

bool MatchesQi(const Record& record, const AggregateQuery& q) {
  for (const auto& predicate : q.qi) {
    const double v = record.qi[predicate.attribute];
    if (v < predicate.low || v > predicate.high) return false;
  }
  return true;
}

}  // namespace

double EstimatePerturbed(const Table& perturbed, const Reconstructor& reconstructor,
                         const AggregateQuery& q) {
  std::vector<double> observed(reconstructor.size(), 0.0);
  for (const auto& row : perturbed.rows()) {
    if (MatchesQi(row, q)) observed[row.sa] += 1.0;
  }
  const Reconstruction n = reconstructor.Solve(observed);
  double estimate = 0.0;
  for (SaId v = q.sa_first; v <= q.sa_last && v < n.clamped.size(); ++v) {
    estimate += n.clamped[v];
  }
  return estimate;
}

double EstimateBaseline(const Table& table, const Distribution& p, const AggregateQuery& q) {
  std::int64_t filtered = 0;
  for (const auto& row : table.rows()) filtered += MatchesQi(row, q) ? 1 : 0;
  double mass = 0.0;
  for (SaId v = q.sa_first; v <= q.sa_last && v < p.size(); ++v) mass += p.frequency(v);
  return static_cast<double>(filtered) * mass;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

WorkloadReport EvaluateWorkload(const Table& original,
                                std::span<const AggregateQuery> workload,
                                const Estimator& estimator) {
  WorkloadReport report;
  report.queries.reserve(workload.size());
  std::vector<double> errors;
  for (const auto& q : workload) {
    QueryOutcome outcome;
    outcome.prec = ExactCount(original, q);
    outcome.est = estimator(q);
    if (outcome.prec == 0) {
      ++report.dropped;
    } else {
      const auto prec = static_cast<double>(outcome.prec);
      outcome.relative_error = std::abs(outcome.est - prec) / prec;
      errors.push_back(*outcome.relative_error);
    }
    report.queries.push_back(outcome);
  }
  if (!errors.empty()) report.median = Median(std::move(errors));
  return report;
}

void WriteWorkload(std::ostream& out, const Schema& schema, const SaDomain& domain,
                   std::span<const AggregateQuery> workload) {
  out << "query,sa_first,sa_last,predicates\n";
  for (std::size_t i = 0; i < workload.size(); ++i) {
    const auto& q = workload[i];
    out << i << ',' << domain.label(q.sa_first) << ',' << domain.label(q.sa_last) << ',';
    for (std::size_t j = 0; j < q.qi.size(); ++j) {
      const auto& predicate = q.qi[j];
      const auto& attr = schema.qi(predicate.attribute);
      if (j > 0) out << ';';
      out << attr.name << ':';
      if (attr.is_numerical()) {
        out << FormatNumber(predicate.low) << ':' << FormatNumber(predicate.high);
      } else {
        const auto& h = *attr.hierarchy;
        out << h.leaf_label(static_cast<std::size_t>(predicate.low)) << ':'
            << h.leaf_label(static_cast<std::size_t>(predicate.high));
      }
    }
    out << '\n';
  }
}

void WriteReport(std::ostream& out, const WorkloadReport& report) {
  out << "query,prec,est,relative_error\n";
  for (std::size_t i = 0; i < report.queries.size(); ++i) {
    const auto& q = report.queries[i];
    out << i << ',' << q.prec << ',' << FormatNumber(q.est) << ',';
    if (q.relative_error) {
      out << FormatNumber(*q.relative_error);
    } else {
      out << "dropped";
    }
    out << '\n';
  }
}

}  // namespace betalike
