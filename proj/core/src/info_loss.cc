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

#include "betalike/info_loss.h"

#include <cmath>
#include <string>
#include <variant>

#include "betalike/errors.h"

namespace betalike {
namespace {

void ValidateWeights(std::span<const double> weights, std::size_t qi_count) {
  if (weights.size() != qi_count) {
    throw InvalidArgument("expected " + std::to_string(qi_count) + " weights, got " +
                          std::to_string(weights.size()));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("weights must sum to 1");
}

}  // namespace

double IlNumeric(const NumericRange& range, const AttributeSchema& attribute) {
  if (!attribute.is_numerical()) {
    throw InvalidArgument(attribute.name + " is not numerical");
  }
  const double span = attribute.upper - attribute.lower;
  if (!(span > 0.0)) throw InvalidArgument(attribute.name + " has a degenerate domain");
  return (range.high - range.low) / span;
}

double IlCategorical(const CategoryNode& node, const AttributeSchema& attribute) {
  if (attribute.is_numerical()) {
    throw InvalidArgument(attribute.name + " is not categorical");
  }
  const std::size_t covered = node.leaves.size();
  if (covered == 1) return 0.0;
  return static_cast<double>(covered) /
         static_cast<double>(attribute.hierarchy->leaf_count());
}

std::vector<double> AttributeLosses(const EquivalenceClass& ec, const Schema& schema) {
  if (ec.qi.size() != schema.qi_count()) {
    throw InvalidArgument("class description does not match the schema");
  }
  std::vector<double> losses;
  losses.reserve(ec.qi.size());
  for (std::size_t k = 0; k < ec.qi.size(); ++k) {
    const auto& attr = schema.qi(k);
    if (const auto* range = std::get_if<NumericRange>(&ec.qi[k])) {
      losses.push_back(IlNumeric(*range, attr));
    } else {
      losses.push_back(IlCategorical(std::get<CategoryNode>(ec.qi[k]), attr));
    }
  }
  return losses;
}

double IlClass(const EquivalenceClass& ec, const Schema& schema,
               std::span<const double> weights) {
  ValidateWeights(weights, schema.qi_count());
  const auto losses = AttributeLosses(ec, schema);
  double total = 0.0;
  for (std::size_t k = 0; k < losses.size(); ++k) total += weights[k] * losses[k];
  return total;
}

double IlClass(const EquivalenceClass& ec, const Schema& schema) {
  return IlClass(ec, schema, schema.weights());
}

double Ail(const Release& release, std::span<const double> weights) {
  if (release.classes.empty()) throw InvalidArgument("release has no classes");
  double weighted = 0.0;
  std::int64_t rows = 0;
  for (const auto& ec : release.classes) {
    weighted += static_cast<double>(ec.size()) * IlClass(ec, *release.schema, weights);
    rows += ec.size();
  }
  return weighted / static_cast<double>(rows);
}

double Ail(const Release& release) { return Ail(release, release.schema->weights()); }

}  // namespace betalike
