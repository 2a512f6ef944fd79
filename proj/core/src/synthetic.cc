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

#include "betalike/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "betalike/errors.h"

namespace betalike {
namespace {

std::vector<double> ProfileFrequencies(const SaProfile& profile, std::size_t m) {
  std::vector<double> p(m);
  if (const auto* zipf = std::get_if<ZipfProfile>(&profile)) {
    if (!(zipf->skew >= 0.0)) throw InvalidArgument("Zipf skew must be >= 0");
    for (std::size_t k = 0; k < m; ++k) {
      p[k] = std::pow(static_cast<double>(k + 1), -zipf->skew);
    }
  } else {
    const auto& band = std::get<BandedProfile>(profile);
    const double lo = band.min_frequency;
    const double hi = band.max_frequency;
    const double mean = 1.0 / static_cast<double>(m);
    if (!(lo > 0.0 && lo <= mean + 1e-15 && hi >= mean - 1e-15 && hi < 1.0)) {
      throw InvalidArgument("banded profile needs 0 < min <= 1/m <= max < 1");
    }
    if (m == 1 || hi - lo < 1e-15) {
      std::fill(p.begin(), p.end(), mean);
      return p;
    }
    // Solve sum_k (1 - t_k)^s = target for s by bisection; the sum falls
    // from m (s = 0) towards 1 as s grows.
    const double target = (1.0 - static_cast<double>(m) * lo) / (hi - lo);
    auto shape_sum = [m](double s) {
      double sum = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(m - 1);
        sum += std::pow(1.0 - t, s);
      }
      return sum;
    };
    if (!(target > 1.0 && target <= static_cast<double>(m))) {
      throw InvalidArgument("banded profile bounds are inconsistent with m");
    }
    double a = 0.0, b = 1.0;
    while (shape_sum(b) > target) b *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      (shape_sum(mid) > target ? a : b) = mid;
    }
    const double s = 0.5 * (a + b);
    for (std::size_t k = 0; k < m; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(m - 1);
      p[k] = lo + (hi - lo) * std::pow(1.0 - t, s);
    }
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= total;
  return p;
}

std::string SaLabel(std::size_t k, std::size_t m) {
  const int width = static_cast<int>(std::to_string(m > 0 ? m - 1 : 0).size());
  char buf[32];
  std::snprintf(buf, sizeof(buf), "v%0*zu", width, k);
  return buf;
}

}  // namespace

std::vector<std::int64_t> ProfileCounts(const SaProfile& profile,
                                        std::size_t rows, std::size_t values) {
  if (values == 0) throw InvalidArgument("SA domain size must be >= 1");
  if (rows < values) {
    throw InvalidArgument("row count " + std::to_string(rows) +
                          " is smaller than SA domain size " +
                          std::to_string(values));
  }
  const auto p = ProfileFrequencies(profile, values);
  // One guaranteed row per value, the rest by largest remainder.
  const double spare = static_cast<double>(rows - values);
  std::vector<std::int64_t> counts(values, 1);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::int64_t assigned = static_cast<std::int64_t>(values);
  for (std::size_t k = 0; k < values; ++k) {
    const double share = spare * p[k];
    const auto whole = static_cast<std::int64_t>(std::floor(share));
    counts[k] += whole;
    assigned += whole;
    remainders.emplace_back(share - static_cast<double>(whole), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < static_cast<std::int64_t>(rows); ++i) {
    ++counts[remainders[i % values].second];
    ++assigned;
  }
  return counts;
}

Table GenerateSynthetic(const SyntheticOptions& options) {
  const std::size_t n = options.rows;
  const std::size_t m = options.sa_values;
  if (options.qi.empty()) throw InvalidArgument("at least one QI attribute is required");
  if (!(options.cluster_weight >= 0.0 && options.trend_weight >= 0.0 &&
        options.cluster_weight + options.trend_weight <= 1.0)) {
    throw InvalidArgument("coupling weights must be non-negative and sum to at most 1");
  }
  const auto counts = ProfileCounts(options.profile, n, m);

  std::vector<std::string> labels;
  for (std::size_t k = 0; k < m; ++k) labels.push_back(SaLabel(k, m));
  std::vector<AttributeSchema> attrs;
  for (auto attr : options.qi) {
    attr.role = Role::kQuasiIdentifier;
    attrs.push_back(std::move(attr));
  }
  attrs.push_back(AttributeSchema::Categorical(
      "sa", Hierarchy::Flat("*", labels), Role::kSensitive));
  Schema schema(std::move(attrs));

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> sa_rank;
  sa_rank.reserve(n);
  for (std::size_t k = 0; k < m; ++k) sa_rank.insert(sa_rank.end(), counts[k], k);
  std::shuffle(sa_rank.begin(), sa_rank.end(), rng);

  const std::size_t d = options.qi.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (!(options.spread > 0.0)) throw InvalidArgument("spread must be positive");
  std::uniform_real_distribution<double> center_draw(0.1, 0.9);
  std::normal_distribution<double> jitter(0.0, options.spread);
  std::vector<double> clusters(d * m);
  for (auto& c : clusters) c = center_draw(rng);
  // Trend direction alternates per attribute.
  std::vector<double> trends(d * m);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t k = 0; k < m; ++k) {
      const double t = m == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(m - 1);
      trends[a * m + k] = 0.1 + 0.8 * (a % 2 == 0 ? t : 1.0 - t);
    }
  }

  std::vector<Table::RawRow> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = sa_rank[r];
    rows[r].sa = labels[k];
    rows[r].qi.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
      double x = unit(rng);
      const double u = unit(rng);
      if (u < options.cluster_weight) {
        x = std::clamp(clusters[a * m + k] + jitter(rng), 0.0, 1.0);
      } else if (u < options.cluster_weight + options.trend_weight) {
        x = std::clamp(trends[a * m + k] + jitter(rng), 0.0, 1.0);
      }
      const auto& attr = schema.qi(a);
      double value;
      if (attr.is_numerical()) {
        value = attr.lower + x * (attr.upper - attr.lower);
        if (attr.integral) value = std::round(value);
        value = std::clamp(value, attr.lower, attr.upper);
      } else {
        const double last = static_cast<double>(attr.hierarchy->leaf_count() - 1);
        value = std::round(x * last);
      }
      rows[r].qi[a] = value;
    }
  }
  return Table::FromRaw(std::move(schema), rows);
}

std::vector<AttributeSchema> CensusLikeQi(std::size_t count) {
  if (count < 1 || count > 5) throw InvalidArgument("census-like QI count must be 1..5");
  using Spec = Hierarchy::Spec;
  std::vector<AttributeSchema> all;
  all.push_back(AttributeSchema::Numerical("age", 17, 95, true));
  all.push_back(AttributeSchema::Categorical(
      "gender", Hierarchy::Flat("any", {"male", "female"})));
  all.push_back(AttributeSchema::Numerical("education", 1, 17, true));
  all.push_back(AttributeSchema::Categorical(
      "marital",
      Hierarchy(Spec{"any",
                     {Spec{"married",
                           {{"married-civ-spouse", {}},
                            {"married-spouse-absent", {}},
                            {"married-af-spouse", {}}}},
                      Spec{"not-married",
                           {{"never-married", {}}, {"divorced", {}}, {"widowed", {}}}}}})));
  all.push_back(AttributeSchema::Categorical(
      "workclass",
      Hierarchy(Spec{
          "any",
          {Spec{"employed",
                {Spec{"private", {{"private-sector", {}}}},
                 Spec{"self-employed", {{"self-emp-inc", {}}, {"self-emp-not-inc", {}}}},
                 Spec{"government",
                      {{"federal-gov", {}}, {"state-gov", {}}, {"local-gov", {}}}}}},
           Spec{"not-employed",
                {Spec{"unpaid", {{"without-pay", {}}, {"never-worked", {}}}},
                 Spec{"other", {{"retired", {}}, {"unknown", {}}}}}}}})));
  all.resize(count);
  return all;
}

SyntheticOptions CensusLikeOptions(std::size_t rows, std::uint64_t seed,
                                   std::size_t qi_count) {
  SyntheticOptions options;
  options.rows = rows;
  options.sa_values = 50;
  options.qi = CensusLikeQi(qi_count);
  options.profile = BandedProfile{0.002018, 0.048402};
  options.cluster_weight = 0.1;
  options.trend_weight = 0.25;
  options.spread = 0.05;
  options.seed = seed;
  return options;
}

}  // namespace betalike
