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

#include "betalike/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "betalike/errors.h"
#include "betalike/generalizer.h"

namespace betalike {

ReleaseAudit AuditRelease(const Release& release, const PrivacyParams& params) {
  ReleaseAudit audit;
  const auto distributions = release.ClassDistributions();
  audit.achieved = ComputeAchievedBeta(release.overall, distributions);
  audit.classes.reserve(distributions.size());
  for (const auto& q : distributions) {
    ClassAudit entry;
    entry.size = q.size();
    entry.gain = WorstGain(release.overall, q);
    entry.passes = CheckEnhanced(release.overall, q, params);
    if (!entry.passes) ++audit.violations;
    audit.classes.push_back(entry);
  }
  return audit;
}

std::vector<std::string> StructuralIssues(const Release& release) {
  std::vector<std::string> issues;
  if (release.row_count() != release.overall.total) {
    issues.push_back("class sizes sum to " + std::to_string(release.row_count()) +
                     ", overall total is " + std::to_string(release.overall.total));
  }
  if (release.source == nullptr) return issues;
  const Table& table = *release.source;
  std::vector<int> seen(table.size(), 0);
  for (std::size_t c = 0; c < release.classes.size(); ++c) {
    const auto& ec = release.classes[c];
    const std::string where = "class " + std::to_string(c) + ": ";
    if (ec.members.empty()) {
      issues.push_back(where + "no members");
      continue;
    }
    std::vector<std::int64_t> counts(release.overall.size(), 0);
    for (RowIndex r : ec.members) {
      if (r >= table.size()) {
        issues.push_back(where + "row " + std::to_string(r) + " out of range");
        continue;
      }
      ++seen[r];
      ++counts[table.row(r).sa];
    }
    if (counts != ec.sa.counts) issues.push_back(where + "SA counts differ from members");
    if (GeneralizeRows(table, ec.members) != ec.qi) {
      issues.push_back(where + "description is not tight");
    }
  }
  for (RowIndex r = 0; r < seen.size(); ++r) {
    if (seen[r] != 1) {
      issues.push_back("row " + std::to_string(r) + " appears " + std::to_string(seen[r]) +
                       " times");
    }
  }
  return issues;
}

namespace {

// Index range [first, last] of `values` covered by a class extent; first >
// last when nothing is covered.
std::pair<std::size_t, std::size_t> Covered(const std::vector<double>& values,
                                            const GeneralizedValue& extent) {
  double low, high;
  if (const auto* range = std::get_if<NumericRange>(&extent)) {
    low = range->low;
    high = range->high;
  } else {
    const auto& node = std::get<CategoryNode>(extent);
    low = static_cast<double>(node.leaves.first);
    high = static_cast<double>(node.leaves.last);
  }
  const auto first = static_cast<std::size_t>(
      std::lower_bound(values.begin(), values.end(), low) - values.begin());
  const auto end = static_cast<std::size_t>(
      std::upper_bound(values.begin(), values.end(), high) - values.begin());
  return {first, end == 0 ? 0 : end - 1};
}

std::vector<double> Candidates(const Release& release, std::size_t k) {
  const auto& attr = release.schema->qi(k);
  std::vector<double> values;
  if (!attr.is_numerical()) {
    for (std::size_t r = 0; r < attr.hierarchy->leaf_count(); ++r) {
      values.push_back(static_cast<double>(r));
    }
    return values;
  }
  if (release.source != nullptr) {
    for (const auto& row : release.source->rows()) values.push_back(row.qi[k]);
  } else {
    for (const auto& ec : release.classes) {
      const auto& range = std::get<NumericRange>(ec.qi[k]);
      values.push_back(range.low);
      values.push_back(range.high);
      values.push_back(0.5 * (range.low + range.high));
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

NaiveBayesAudit AuditNaiveBayes(const Release& release, const PrivacyParams& params,
                                double tolerance) {
  if (release.classes.empty()) throw InvalidArgument("release has no classes");
  const Schema& schema = *release.schema;
  const std::size_t m = release.overall.size();
  const auto n = static_cast<double>(release.overall.total);
  const std::vector<double> p = release.overall.frequencies();

  NaiveBayesAudit audit;
  audit.most_frequent_share = *std::max_element(p.begin(), p.end());

  std::vector<double> bound(m);
  for (std::size_t i = 0; i < m; ++i) bound[i] = 1.0 + std::min(params.beta, -std::log(p[i]));

  // Per attribute: candidate values and log Pr[t|v_i] tables for the classifier.
  std::vector<std::vector<double>> candidates(schema.qi_count());
  std::vector<std::vector<double>> log_likelihood(schema.qi_count());
  for (std::size_t k = 0; k < schema.qi_count(); ++k) {
    candidates[k] = Candidates(release, k);
    const std::size_t t_count = candidates[k].size();
    // Difference arrays over candidate indices.
    std::vector<std::int64_t> size_diff(t_count + 1, 0);
    std::vector<std::int64_t> count_diff((t_count + 1) * m, 0);
    for (const auto& ec : release.classes) {
      const auto [first, last] = Covered(candidates[k], ec.qi[k]);
      if (first >= t_count || first > last) continue;
      size_diff[first] += ec.size();
      size_diff[last + 1] -= ec.size();
      for (std::size_t i = 0; i < m; ++i) {
        if (ec.sa.counts[i] == 0) continue;
        count_diff[first * m + i] += ec.sa.counts[i];
        count_diff[(last + 1) * m + i] -= ec.sa.counts[i];
      }
    }
    log_likelihood[k].assign(t_count * m, -std::numeric_limits<double>::infinity());
    std::int64_t size = 0;
    std::vector<std::int64_t> counts(m, 0);
    for (std::size_t t = 0; t < t_count; ++t) {
      size += size_diff[t];
      for (std::size_t i = 0; i < m; ++i) counts[i] += count_diff[t * m + i];
      if (size == 0) continue;
      const double pr_t = static_cast<double>(size) / n;
      for (std::size_t i = 0; i < m; ++i) {
        const double pr_t_given_v =
            static_cast<double>(counts[i]) / static_cast<double>(release.overall.counts[i]);
        const double ratio = pr_t_given_v / pr_t;
        ++audit.checked;
        audit.worst_ratio = std::max(audit.worst_ratio, ratio);
        const double excess = ratio - bound[i];
        if (audit.checked == 1 || excess > audit.worst_excess) audit.worst_excess = excess;
        if (counts[i] > 0) log_likelihood[k][t * m + i] = std::log(pr_t_given_v);
      }
    }
  }
  audit.bound_holds = audit.worst_excess <= tolerance;

  if (release.source != nullptr) {
    const Table& table = *release.source;
    std::vector<double> log_prior(m);
    for (std::size_t i = 0; i < m; ++i) log_prior[i] = std::log(p[i]);
    std::vector<std::size_t> t_index(schema.qi_count());
    std::size_t correct = 0;
    for (const auto& row : table.rows()) {
      for (std::size_t k = 0; k < schema.qi_count(); ++k) {
        t_index[k] = static_cast<std::size_t>(
            std::lower_bound(candidates[k].begin(), candidates[k].end(), row.qi[k]) -
            candidates[k].begin());
      }
      SaId best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        double score = log_prior[i];
        for (std::size_t k = 0; k < schema.qi_count(); ++k) {
          score += log_likelihood[k][t_index[k] * m + i];
        }
        // Later ids are more frequent and win ties.
        if (score >= best_score) {
          best_score = score;
          best = static_cast<SaId>(i);
        }
      }
      if (best == row.sa) ++correct;
    }
    audit.accuracy = static_cast<double>(correct) / static_cast<double>(table.size());
  }
  return audit;
}

}  // namespace betalike
