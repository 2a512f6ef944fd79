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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "betalike/generalizer.h"
#include "betalike/synthetic.h"
#include "fixtures.h"

namespace betalike {
namespace {

using ::testing::Contains;
using ::testing::HasSubstr;
using ::testing::IsEmpty;

std::shared_ptr<const Table> Nineteen() {
  return std::make_shared<const Table>(testing::NineteenRowTable());
}

std::vector<RowIndex> AllRows(const Table& table) {
  std::vector<RowIndex> rows(table.size());
  for (RowIndex r = 0; r < rows.size(); ++r) rows[r] = r;
  return rows;
}

TEST(StructuralIssuesTest, CleanRelease) {
  auto table = Nineteen();
  EXPECT_THAT(StructuralIssues(testing::ReleaseFromGroups(table, {AllRows(*table)})), IsEmpty());
}

TEST(StructuralIssuesTest, FindsMissingAndRepeatedRows) {
  auto table = Nineteen();
  auto rows = AllRows(*table);
  rows.back() = 0;
  const auto issues = StructuralIssues(testing::ReleaseFromGroups(table, {rows}));
  EXPECT_THAT(issues, Contains(HasSubstr("row 0 appears 2")));
  EXPECT_THAT(issues, Contains(HasSubstr("row 18 appears 0")));
}

TEST(StructuralIssuesTest, FindsCountsThatDisagreeWithMembers) {
  auto table = Nineteen();
  Release release = testing::ReleaseFromGroups(table, {AllRows(*table)});
  --release.classes[0].sa.counts[0];
  ++release.classes[0].sa.counts[1];
  EXPECT_THAT(StructuralIssues(release), Contains(HasSubstr("SA counts differ")));
}

TEST(StructuralIssuesTest, FindsLooseDescriptionsAndLostRows) {
  auto table = Nineteen();
  Release release = testing::ReleaseFromGroups(table, {AllRows(*table)});
  std::get<NumericRange>(release.classes[0].qi[0]).high += 1;
  EXPECT_THAT(StructuralIssues(release), Contains(HasSubstr("not tight")));
  release.classes.clear();
  EXPECT_THAT(StructuralIssues(release), Contains(HasSubstr("class sizes sum to 0")));
}

TEST(AuditReleaseTest, WholeTableClassMatchesTheOverall) {
  auto table = Nineteen();
  const ReleaseAudit audit =
      AuditRelease(testing::ReleaseFromGroups(table, {AllRows(*table)}), PrivacyParams(0.01));
  EXPECT_TRUE(audit.passed());
  ASSERT_FALSE(audit.achieved.unbounded());
  EXPECT_EQ(audit.achieved.value(), 0.0);
  ASSERT_EQ(audit.classes.size(), 1u);
  EXPECT_EQ(audit.classes[0].size, 19);
}

TEST(AuditReleaseTest, SingleValueClassIsUnbounded) {
  auto table = Nineteen();
  std::vector<RowIndex> headache, rest;
  for (RowIndex r = 0; r < table->size(); ++r) {
    (table->domain().label(table->row(r).sa) == "headache" ? headache : rest).push_back(r);
  }
  const ReleaseAudit audit =
      AuditRelease(testing::ReleaseFromGroups(table, {headache, rest}), PrivacyParams(5.0));
  EXPECT_TRUE(audit.achieved.unbounded());
  EXPECT_FALSE(audit.passed());
  EXPECT_FALSE(audit.classes[0].passes);
  EXPECT_TRUE(audit.classes[0].gain.exceeds_cap);
}

TEST(AuditReleaseTest, BurelOutputPassesAtItsBeta) {
  auto table = Nineteen();
  BurelOptions options;
  options.beta = 2.0;
  const ReleaseAudit audit = AuditRelease(Burel(table, options), PrivacyParams(2.0));
  EXPECT_TRUE(audit.passed());
  EXPECT_LE(audit.achieved.value(), 2.0);
}

TEST(NaiveBayesAuditTest, OneClassRevealsNothing) {
  auto table = Nineteen();
  const NaiveBayesAudit nb = AuditNaiveBayes(
      testing::ReleaseFromGroups(table, {AllRows(*table)}), PrivacyParams(1.0));
  EXPECT_GT(nb.checked, 0u);
  EXPECT_NEAR(nb.worst_ratio, 1.0, 1e-12);
  EXPECT_TRUE(nb.bound_holds);
  ASSERT_TRUE(nb.accuracy.has_value());
  EXPECT_DOUBLE_EQ(*nb.accuracy, 4.0 / 19.0);
  EXPECT_DOUBLE_EQ(nb.most_frequent_share, 4.0 / 19.0);
}

TEST(NaiveBayesAuditTest, BoundHoldsOnGeneratedReleases) {
  auto table = std::make_shared<const Table>(GenerateSynthetic(CensusLikeOptions(5000, 3)));
  for (double beta : {1.0, 2.0, 4.0}) {
    BurelOptions options;
    options.beta = beta;
    const Release release = Burel(table, options);
    const NaiveBayesAudit nb = AuditNaiveBayes(release, PrivacyParams(beta));
    EXPECT_TRUE(nb.bound_holds) << "beta " << beta << " excess " << nb.worst_excess;
    EXPECT_GT(nb.checked, 0u);
    EXPECT_TRUE(nb.accuracy.has_value());
  }
}

TEST(NaiveBayesAuditTest, LeakyReleaseBreaksTheBound) {
  auto table = Nineteen();
  std::vector<std::vector<RowIndex>> by_value(table->domain().size());
  for (RowIndex r = 0; r < table->size(); ++r) by_value[table->row(r).sa].push_back(r);
  const NaiveBayesAudit nb =
      AuditNaiveBayes(testing::ReleaseFromGroups(table, by_value), PrivacyParams(1.0));
  EXPECT_FALSE(nb.bound_holds);
  EXPECT_GT(nb.worst_excess, 0.0);
}

}  // namespace
}  // namespace betalike
