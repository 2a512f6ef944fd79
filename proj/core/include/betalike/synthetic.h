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

#ifndef BETALIKE_SYNTHETIC_H_
#define BETALIKE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "betalike/schema.h"
#include "betalike/table.h"

namespace betalike {

// SA frequency profiles for generated tables.
struct ZipfProfile {
  double skew = 0.0;  // p_k proportional to k^-skew; 0 is uniform
};
// p_k = min + (max - min) * (1 - t_k)^s with t_k = k/(m-1) and s chosen so
// the profile sums to 1. Requires min <= 1/m <= max.
struct BandedProfile {
  double min_frequency = 0.0;
  double max_frequency = 0.0;
};
using SaProfile = std::variant<ZipfProfile, BandedProfile>;

struct SyntheticOptions {
  std::size_t rows = 0;
  std::size_t sa_values = 0;
  // QI attributes (role ignored); the SA attribute is appended as "sa" with
  // values v0..v{m-1}.
  std::vector<AttributeSchema> qi;
  SaProfile profile = ZipfProfile{};
  // Each QI value is drawn near a center tied to the row's SA value with
  // these probabilities, uniformly otherwise. Cluster centers are random per
  // value and attribute; trend centers move steadily with the value's
  // frequency rank. Both zero makes QI independent of the SA.
  double cluster_weight = 0.0;
  double trend_weight = 0.0;
  // Standard deviation, in units of the axis, around a center.
  double spread = 0.08;
  std::uint64_t seed = 0;
};

// Exact per-value counts for `rows` rows under `profile`: every value gets at
// least one row, ranks ordered from most to least frequent.
std::vector<std::int64_t> ProfileCounts(const SaProfile& profile,
                                        std::size_t rows, std::size_t values);

// Deterministic for fixed options. Throws InvalidArgument when rows < values
// or values == 0.
Table GenerateSynthetic(const SyntheticOptions& options);

// QI attributes modeled on a census extract: age, gender, education level,
// marital status, work class (first `count` of them, 1 <= count <= 5).
std::vector<AttributeSchema> CensusLikeQi(std::size_t count = 3);

// m = 50, min 0.2018%, max 4.8402%; QI weakly coupled to the SA (cluster
// 0.1, trend 0.25, spread 0.05).
SyntheticOptions CensusLikeOptions(std::size_t rows, std::uint64_t seed,
                                   std::size_t qi_count = 3);

}  // namespace betalike

#endif  // BETALIKE_SYNTHETIC_H_
