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

#include "betalike/likeness.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "betalike/errors.h"

namespace betalike {
namespace {

using Wide = long double;
__extension__ typedef __int128 Int128;

// q_count/q_size > p_count/p_total, exactly.
bool ExceedsPrior(std::int64_t q_count, std::int64_t q_size, std::int64_t p_count,
                  std::int64_t p_total) {
  return static_cast<Int128>(q_count) * p_total >
         static_cast<Int128>(p_count) * q_size;
}

// q_count/q_size <= (1 + beta) p_count/p_total.
bool WithinLinear(std::int64_t q_count, std::int64_t q_size, std::int64_t p_count,
                  std::int64_t p_total, double beta) {
  const Wide lhs = static_cast<Wide>(q_count) * static_cast<Wide>(p_total);
  const Wide rhs = (1.0L + static_cast<Wide>(beta)) *
                   (static_cast<Wide>(p_count) * static_cast<Wide>(q_size));
  return lhs <= rhs;
}

// The -ln p cap: q <= p (1 - ln p).
bool WithinCap(std::int64_t q_count, std::int64_t q_size, std::int64_t p_count,
               std::int64_t p_total) {
  const double p = static_cast<double>(p_count) / static_cast<double>(p_total);
  const double q = static_cast<double>(q_count) / static_cast<double>(q_size);
  return q <= p * (1.0 - std::log(p)) + kLogBranchSlack;
}

void CheckSupport(const Distribution& p, const EcDistribution& q) {
  if (q.counts.size() > p.counts.size()) {
    throw InvalidArgument("class distribution has SA values outside the table's domain");
  }
  for (std::size_t i = 0; i < q.counts.size(); ++i) {
    if (q.counts[i] < 0) throw InvalidArgument("negative SA count in class");
    if (q.counts[i] > 0 && p.counts[i] <= 0) {
      throw InvalidArgument("class contains SA id " + std::to_string(i) +
                            " absent from the overall distribution");
    }
  }
  if (q.size() <= 0) throw InvalidArgument("empty equivalence class");
}

}  // namespace

PrivacyParams::PrivacyParams(double beta_value) : beta(beta_value) {
  if (!(beta_value > 0.0) || !std::isfinite(beta_value)) {
    throw InvalidArgument("beta must be a finite value > 0");
  }
}

double RelativeDistance(double p, double q) {
  if (!(p > 0.0)) throw InvalidArgument("relative distance needs p > 0");
  return (q - p) / p;
}

double FrequencyBound(double p, const PrivacyParams& params) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("frequency must lie in (0, 1]");
  if (p <= std::exp(-params.beta)) return p * (1.0 + params.beta);
  return p * (1.0 - std::log(p));
}

bool WithinFrequencyBound(std::int64_t q_count, std::int64_t q_size,
                          std::int64_t p_count, std::int64_t p_total,
                          const PrivacyParams& params) {
  if (q_size <= 0 || p_total <= 0 || p_count <= 0) {
    throw InvalidArgument("frequency comparison needs positive denominators and p > 0");
  }
  if (q_count == 0) return true;
  const double p = static_cast<double>(p_count) / static_cast<double>(p_total);
  if (p <= std::exp(-params.beta)) {
    return WithinLinear(q_count, q_size, p_count, p_total, params.beta);
  }
  return WithinCap(q_count, q_size, p_count, p_total);
}

std::int64_t EcDistribution::size() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

double EcDistribution::frequency(SaId id) const {
  return static_cast<double>(counts.at(id)) / static_cast<double>(size());
}

bool CheckBasic(const Distribution& p, const EcDistribution& q,
                const PrivacyParams& params) {
  CheckSupport(p, q);
  const std::int64_t size = q.size();
  for (std::size_t i = 0; i < q.counts.size(); ++i) {
    if (!ExceedsPrior(q.counts[i], size, p.counts[i], p.total)) continue;
    if (!WithinLinear(q.counts[i], size, p.counts[i], p.total, params.beta)) {
      return false;
    }
  }
  return true;
}

bool CheckEnhanced(const Distribution& p, const EcDistribution& q,
                   const PrivacyParams& params) {
  CheckSupport(p, q);
  const std::int64_t size = q.size();
  for (std::size_t i = 0; i < q.counts.size(); ++i) {
    if (!WithinFrequencyBound(q.counts[i], size, p.counts[i], p.total, params)) {
      return false;
    }
  }
  return true;
}

ClassGain WorstGain(const Distribution& p, const EcDistribution& q) {
  CheckSupport(p, q);
  const std::int64_t size = q.size();
  ClassGain worst;
  bool any = false;
  for (std::size_t i = 0; i < q.counts.size(); ++i) {
    if (!ExceedsPrior(q.counts[i], size, p.counts[i], p.total)) continue;
    const double pi = p.frequency(static_cast<SaId>(i));
    const double gain = RelativeDistance(pi, q.frequency(static_cast<SaId>(i)));
    if (!WithinCap(q.counts[i], size, p.counts[i], p.total)) worst.exceeds_cap = true;
    if (!any || gain > worst.gain) {
      worst.gain = gain;
      worst.worst_value = static_cast<SaId>(i);
      any = true;
    }
  }
  return worst;
}

AchievedBeta ComputeAchievedBeta(const Distribution& p,
                                 std::span<const EcDistribution> classes) {
  double beta = 0.0;
  for (const auto& q : classes) {
    const ClassGain gain = WorstGain(p, q);
    if (gain.exceeds_cap) return AchievedBeta::Unbounded();
    beta = std::max(beta, gain.gain);
  }
  return AchievedBeta::Bounded(beta);
}

}  // namespace betalike
