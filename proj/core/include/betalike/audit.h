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

#ifndef BETALIKE_AUDIT_H_
#define BETALIKE_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betalike/likeness.h"
#include "betalike/release.h"

namespace betalike {

struct ClassAudit {
  std::int64_t size = 0;
  ClassGain gain;
  bool passes = false;  // enhanced likeness at the audited beta
};

struct ReleaseAudit {
  AchievedBeta achieved = AchievedBeta::Bounded(0.0);
  std::vector<ClassAudit> classes;
  std::size_t violations = 0;

  bool passed() const { return violations == 0; }
};

// Re-checks every class of `release` against its published overall
// distribution with the likeness predicates.
ReleaseAudit AuditRelease(const Release& release, const PrivacyParams& params);

// Structural problems of a release: class sizes not summing to the overall
// total and, when the source table is attached, rows missing or repeated,
// class counts disagreeing with member values, and generalized descriptions
// that are not the tight range or lowest common ancestor of the members.
std::vector<std::string> StructuralIssues(const Release& release);

// Attack-side view of a release: Pr[t|v_i] and Pr[t] per QI value t, where
// a class contributes to t when its generalized extent covers t.
struct NaiveBayesAudit {
  std::size_t checked = 0;       // (attribute, t, v_i) triples with Pr[t] > 0
  double worst_ratio = 0.0;      // max Pr[t|v_i] / Pr[t]
  double worst_excess = 0.0;     // max of ratio - (1 + min(beta, -ln p_i))
  bool bound_holds = true;       // worst_excess <= tolerance
  // Share of source rows whose value the classifier argmax_i p_i prod_j
  // Pr[t_j|v_i] gets right; empty without a source table.
  std::optional<double> accuracy;
  double most_frequent_share = 0.0;
};

// Candidate values t per attribute are the distinct member values when the
// source table is attached, otherwise class endpoints and midpoints for
// numerical attributes; categorical attributes always use every leaf.
NaiveBayesAudit AuditNaiveBayes(const Release& release, const PrivacyParams& params,
                                double tolerance = 1e-9);

}  // namespace betalike

#endif  // BETALIKE_AUDIT_H_
