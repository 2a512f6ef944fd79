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

#ifndef BETALIKE_TESTS_FIXTURES_H_
#define BETALIKE_TESTS_FIXTURES_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "betalike/generalizer.h"
#include "betalike/release.h"
#include "betalike/schema.h"
#include "betalike/table.h"

namespace betalike::testing {

inline std::string DataPath(const std::string& relative) {
  return std::string(BETALIKE_TEST_DATA_DIR) + "/" + relative;
}

inline Hierarchy DiseaseHierarchy() {
  using Spec = Hierarchy::Spec;
  return Hierarchy(Spec{"any disease",
                        {Spec{"nervous problems",
                              {{"headache", {}}, {"epilepsy", {}}, {"brain tumors", {}}}},
                         Spec{"circulatory problems",
                              {{"anemia", {}}, {"angina", {}}, {"heart murmur", {}}}}}});
}

// weight [40, 100], age [20, 80] (integers) and disease as the SA.
inline Schema PatientSchema() {
  std::vector<AttributeSchema> attrs;
  attrs.push_back(AttributeSchema::Numerical("weight", 40, 100, true));
  attrs.push_back(AttributeSchema::Numerical("age", 20, 80, true));
  attrs.push_back(AttributeSchema::Categorical("disease", DiseaseHierarchy(), Role::kSensitive));
  return Schema(std::move(attrs));
}

// The six patient records: (weight, age, disease).
inline Table PatientTable() {
  return Table::FromRaw(PatientSchema(), {{{70, 40}, "headache"},
                                          {{60, 60}, "epilepsy"},
                                          {{50, 50}, "brain tumors"},
                                          {{70, 50}, "heart murmur"},
                                          {{80, 50}, "anemia"},
                                          {{60, 70}, "angina"}});
}

// 2 headache, 3 epilepsy, 3 brain tumors, 3 anemia, 4 angina, 4 heart murmur.
inline Table NineteenRowTable() {
  return LoadTable(DataPath("example2/data.csv"), LoadSchema(DataPath("example2/schema.json")));
}

// Random tree with up to `max_nodes` nodes, every internal node having 1-4
// children; leaf labels are unique.
inline Hierarchy::Spec RandomTreeSpec(std::mt19937_64& rng, std::size_t max_nodes) {
  std::size_t made = 1;
  std::size_t next_label = 0;
  auto build = [&](auto&& self, std::size_t depth) -> Hierarchy::Spec {
    Hierarchy::Spec spec{"n" + std::to_string(next_label++), {}};
    const bool must_branch = depth == 0;
    std::uniform_int_distribution<int> fanout(must_branch ? 1 : 0, 4);
    int children = depth > 5 ? 0 : fanout(rng);
    if (must_branch && children == 0) children = 1;
    for (int c = 0; c < children && made < max_nodes; ++c) {
      ++made;
      spec.children.push_back(self(self, depth + 1));
    }
    return spec;
  };
  auto root = build(build, 0);
  if (root.children.empty()) root.children.push_back({"n" + std::to_string(next_label++), {}});
  return root;
}

// A release over `table` whose classes hold exactly the given row groups.
inline Release ReleaseFromGroups(std::shared_ptr<const Table> table,
                                 const std::vector<std::vector<RowIndex>>& groups,
                                 double beta = 1.0) {
  Release release;
  release.schema = table->schema_ptr();
  release.domain = table->domain_ptr();
  release.overall = SaDistribution(*table);
  release.parameters.beta = beta;
  release.parameters.curve_order = 16;
  for (const auto& group : groups) {
    EquivalenceClass ec;
    ec.members = group;
    ec.qi = GeneralizeRows(*table, group);
    ec.sa.counts.assign(table->domain().size(), 0);
    for (RowIndex r : group) ++ec.sa.counts[table->row(r).sa];
    release.classes.push_back(std::move(ec));
  }
  release.source = std::move(table);
  return release;
}

}  // namespace betalike::testing

#endif  // BETALIKE_TESTS_FIXTURES_H_
