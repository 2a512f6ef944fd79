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

#ifndef BETALIKE_INFO_LOSS_H_
#define BETALIKE_INFO_LOSS_H_

#include <span>
#include <vector>

#include "betalike/release.h"
#include "betalike/schema.h"

namespace betalike {

// (u - l) / (U - L). Throws InvalidArgument for a degenerate domain.
double IlNumeric(const NumericRange& range, const AttributeSchema& attribute);

// 0 for a leaf, otherwise leaves under the node over all leaves.
double IlCategorical(const CategoryNode& node, const AttributeSchema& attribute);

// Per-QI losses of one class, in QI order.
std::vector<double> AttributeLosses(const EquivalenceClass& ec, const Schema& schema);

// Weighted sum of the per-attribute losses. Throws InvalidArgument when the
// weights do not match the QI count, are negative or do not sum to 1.
double IlClass(const EquivalenceClass& ec, const Schema& schema,
               std::span<const double> weights);
double IlClass(const EquivalenceClass& ec, const Schema& schema);

// Size-weighted mean of IlClass over the release. Throws InvalidArgument on
// an empty release.
double Ail(const Release& release, std::span<const double> weights);
double Ail(const Release& release);

}  // namespace betalike

#endif  // BETALIKE_INFO_LOSS_H_
