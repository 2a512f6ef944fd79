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

#ifndef BETALIKE_LIKENESS_H_
#define BETALIKE_LIKENESS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "betalike/table.h"

namespace betalike {

struct PrivacyParams {
  double beta = 4.0;

  // Throws InvalidArgument unless beta > 0 and finite.
  explicit PrivacyParams(double beta_value);
};

// Slack granted to the logarithmic branch of the bound when comparing in
// floating point.
inline constexpr double kLogBranchSlack = 1e-12;

// D(p, q) = (q - p) / p. Throws InvalidArgument for p <= 0.
double RelativeDistance(double p, double q);

// f(p) = p (1 + beta) for p <= e^-beta, p (1 - ln p) otherwise.
// Throws InvalidArgument for p outside (0, 1].
double FrequencyBound(double p, const PrivacyParams& params);

// q_count/q_size <= f(p_count/p_total). Linear branch compared by
// cross-multiplication in extended precision (exact for dyadic beta and
// counts below 2^32); logarithmic branch in double with kLogBranchSlack.
bool WithinFrequencyBound(std::int64_t q_count, std::int64_t q_size,
                          std::int64_t p_count, std::int64_t p_total,
                          const PrivacyParams& params);

// SA counts of one equivalence class, indexed by SaId.
struct EcDistribution {
  std::vector<std::int64_t> counts;

  std::int64_t size() const;
  double frequency(SaId id) const;
};

// Basic beta-likeness: max over {i : q_i > p_i} of D(p_i, q_i) <= beta.
// Throws InvalidArgument when Q has a value P lacks.
bool CheckBasic(const Distribution& p, const EcDistribution& q,
                const PrivacyParams& params);

// Enhanced beta-likeness: q_i <= f(p_i) for every i (absent values pass).
bool CheckEnhanced(const Distribution& p, const EcDistribution& q,
                   const PrivacyParams& params);

// Smallest beta' >= 0 under which every class satisfies enhanced
// beta'-likeness, or unbounded when some q_i exceeds p_i (1 - ln p_i).
class AchievedBeta {
 public:
  static AchievedBeta Bounded(double beta) { return AchievedBeta(false, beta); }
  static AchievedBeta Unbounded() { return AchievedBeta(true, 0.0); }

  bool unbounded() const { return unbounded_; }
  // Only meaningful when bounded.
  double value() const { return value_; }

 private:
  AchievedBeta(bool unbounded, double value) : unbounded_(unbounded), value_(value) {}
  bool unbounded_;
  double value_;
};

// Worst positive gain of one class: the value with the largest D(p_i, q_i)
// (ties to the lower id) and whether it breaks the -ln p_i cap.
struct ClassGain {
  SaId worst_value = 0;
  double gain = 0.0;  // 0 when no value exceeds its global frequency
  bool exceeds_cap = false;
};
ClassGain WorstGain(const Distribution& p, const EcDistribution& q);

AchievedBeta ComputeAchievedBeta(const Distribution& p,
                                 std::span<const EcDistribution> classes);

}  // namespace betalike

#endif  // BETALIKE_LIKENESS_H_
