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

#include "betalike/perturbation.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "betalike/errors.h"
#include "betalike/synthetic.h"
#include "fixtures.h"

namespace betalike {
namespace {

// Independent formula: f(p) on the log branch and the odds ratio.
double OracleGamma(double p, double beta) {
  const double f = p <= std::exp(-beta) ? p * (1 + beta) : p * (1 - std::log(p));
  return (f / p) * (1 - p) / (1 - f);
}

std::vector<double> CensusFrequencies() {
  return SaDistribution(GenerateSynthetic(CensusLikeOptions(20000, 1))).frequencies();
}

std::shared_ptr<const Schema> FlatSchema(std::size_t m) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<AttributeSchema> attrs;
  attrs.push_back(AttributeSchema::Numerical("x", 0, 1));
  attrs.push_back(AttributeSchema::Categorical("sa", Hierarchy::Flat("*", labels), Role::kSensitive));
  return std::make_shared<const Schema>(std::move(attrs));
}

Table ConstantTable(std::size_t m, SaId value, std::size_t rows) {
  auto schema = FlatSchema(m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back(schema->sa_hierarchy().leaf_label(i));
  auto domain = std::make_shared<const SaDomain>(std::move(labels));
  return Table(schema, domain, std::vector<Record>(rows, Record{{0.5}, value}));
}

TEST(GammaTest, SpotValues) {
  EXPECT_NEAR(Gamma(0.5, PrivacyParams(1.0)), 5.519, 2e-3);
  EXPECT_NEAR(Gamma(0.5, PrivacyParams(1.0)), OracleGamma(0.5, 1.0), 1e-12);
  EXPECT_NEAR(Gamma(0.002, PrivacyParams(4.0)), 5.04, 5e-3);
  EXPECT_GT(Gamma(0.3, PrivacyParams(0.1)), 1.0);
  EXPECT_THROW(Gamma(0.0, PrivacyParams(1.0)), InvalidArgument);
  EXPECT_THROW(Gamma(1.5, PrivacyParams(1.0)), InvalidArgument);
  EXPECT_THROW(Gamma(1.0, PrivacyParams(1.0)), Infeasible);
}

TEST(BuildModelTest, TwoValueModel) {
  const std::vector<double> p = {0.5, 0.5};
  const PerturbationModel model = BuildModel(p, PrivacyParams(1.0));
  EXPECT_NEAR(model.c, 0.1534, 5e-5);
  EXPECT_NEAR(model.alpha[0], 0.6931, 5e-5);
  EXPECT_NEAR(model.alpha[1], 0.6931, 5e-5);
  EXPECT_NEAR(model.pm(0, 0), model.alpha[0] + (1 - model.alpha[0]) / 2, 1e-15);
  EXPECT_NEAR(model.pm(1, 0), (1 - model.alpha[0]) / 2, 1e-15);
  const DenseMatrix post = Posterior(model, p);
  const double f = 0.5 * (1 - std::log(0.5));
  EXPECT_NEAR(f, 0.8466, 5e-5);
  EXPECT_LE(post(0, 0), f + 1e-9);
  EXPECT_LE(post(1, 1), f + 1e-9);
}

TEST(BuildModelTest, UniformPriorGivesTheClosedForm) {
  for (std::size_t m : {2u, 5u, 20u}) {
    const std::vector<double> p(m, 1.0 / m);
    for (double beta : {0.5, 1.0, 3.0}) {
      const PerturbationModel model = BuildModel(p, PrivacyParams(beta));
      const double g = OracleGamma(1.0 / m, beta);
      for (double a : model.alpha) EXPECT_NEAR(a, (g - 1) / (g + m - 1), 1e-12);
      const DenseMatrix post = Posterior(model, p);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t v = 0; v < m; ++v) {
          EXPECT_NEAR(post(i, v), i == v ? post(0, 0) : post(1, 0), 1e-12);
        }
      }
    }
  }
}

TEST(BuildModelTest, RejectsTinyDomainsAndHeterogeneousGamma) {
  EXPECT_THROW(BuildModel(std::vector<double>{1.0}, PrivacyParams(1.0)), InvalidArgument);
  // One very rare value next to a dominant one drives the other alpha below 0.
  EXPECT_THROW(BuildModel(std::vector<double>{0.999, 0.001}, PrivacyParams(5.0)), Infeasible);
}

class CensusModelTest : public ::testing::TestWithParam<double> {};

TEST_P(CensusModelTest, GuaranteesHold) {
  const auto p = CensusFrequencies();
  const PerturbationModel model = BuildModel(p, PrivacyParams(GetParam()));
  ASSERT_EQ(model.m, 50u);
  const ModelCheck check = CheckModel(model);
  EXPECT_LE(check.column_sum_error, 1e-12);
  EXPECT_LE(check.ratio_excess, 1e-9);
  EXPECT_LE(check.posterior_excess, 1e-9);
  EXPECT_LE(check.alpha_cap_excess, 1e-12);
  EXPECT_TRUE(check.diagonal_dominant);
  // Independent sweep of the ratio and posterior bounds.
  const DenseMatrix post = Posterior(model, p);
  for (std::size_t i = 0; i < model.m; ++i) {
    EXPECT_GT(model.alpha[i], 0.0);
    EXPECT_LE(model.alpha[i], 1.0);
    const double f = FrequencyBound(p[i], PrivacyParams(GetParam()));
    for (std::size_t v = 0; v < model.m; ++v) {
      ASSERT_LE(post(i, v), f + 1e-9);
      for (std::size_t j = 0; j < model.m; ++j) {
        ASSERT_LE(model.transition(i, v) / model.transition(j, v), model.gamma[i] + 1e-9);
      }
    }
  }
  // Every ratio is tight against the value with the largest gamma.
  const std::size_t top =
      std::max_element(model.gamma.begin(), model.gamma.end()) - model.gamma.begin();
  for (std::size_t i = 0; i < model.m; ++i) {
    if (i == top) continue;
    EXPECT_NEAR(model.transition(i, i) / model.transition(top, i), model.gamma[i], 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Betas, CensusModelTest, ::testing::Values(1.0, 2.0, 3.0, 4.0, 5.0));

TEST(PerturbTest, RetentionRateMatchesTheDiagonal) {
  const std::size_t m = 5;
  const std::vector<double> p = {0.1, 0.15, 0.2, 0.25, 0.3};
  const PerturbationModel model = BuildModel(p, PrivacyParams(1.0));
  const std::size_t n = 1000000;
  const Table out = Perturb(ConstantTable(m, 2, n), model, 17);
  std::vector<double> observed(m, 0);
  for (const auto& row : out.rows()) {
    ASSERT_EQ(row.qi[0], 0.5);
    ++observed[row.sa];
  }
  const double keep = model.alpha[2] + (1 - model.alpha[2]) / m;
  const double sigma = std::sqrt(n * keep * (1 - keep));
  EXPECT_NEAR(observed[2], n * keep, 3 * sigma);
  // Chi-square against column 2, 4 degrees of freedom, 0.001 level.
  double chi2 = 0;
  for (std::size_t v = 0; v < m; ++v) {
    const double expected = n * model.pm(v, 2);
    chi2 += (observed[v] - expected) * (observed[v] - expected) / expected;
  }
  EXPECT_LT(chi2, 18.467);
}

TEST(PerturbTest, DeterministicAndQiPreserving) {
  const Table table = GenerateSynthetic(CensusLikeOptions(5000, 4));
  const PerturbationModel model = BuildModel(SaDistribution(table), PrivacyParams(2.0));
  const Table a = Perturb(table, model, 9);
  const Table b = Perturb(table, model, 9);
  EXPECT_EQ(a.rows(), b.rows());
  std::size_t changed = 0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    ASSERT_EQ(a.row(r).qi, table.row(r).qi);
    changed += a.row(r).sa != table.row(r).sa;
  }
  EXPECT_GT(changed, 0u);
  EXPECT_NE(Perturb(table, model, 10).rows(), a.rows());
}

TEST(ReconstructTest, ExactRoundTrip) {
  const auto p = CensusFrequencies();
  const PerturbationModel model = BuildModel(p, PrivacyParams(3.0));
  std::vector<double> truth(model.m);
  for (std::size_t i = 0; i < model.m; ++i) truth[i] = static_cast<double>(17 * i + 3);
  const auto expected = model.pm.Multiply(truth);
  const Reconstruction back = Reconstruct(expected, model);
  for (std::size_t i = 0; i < model.m; ++i) EXPECT_NEAR(back.raw[i], truth[i], 1e-9);
  double sum = 0;
  for (double x : back.clamped) sum += x;
  double total = 0;
  for (double x : truth) total += x;
  EXPECT_NEAR(sum, total, 1e-6 * total);
}

TEST(ReconstructTest, IdentityMatrixIsANoOp) {
  DenseMatrix identity(3, 3);
  for (std::size_t i = 0; i < 3; ++i) identity(i, i) = 1.0;
  const Reconstructor solver(identity);
  const std::vector<double> observed = {4, 0, 9};
  EXPECT_EQ(solver.Solve(observed).raw, observed);
  EXPECT_THROW(solver.Solve(std::vector<double>{1, 2}), InvalidArgument);
  EXPECT_THROW(solver.Solve(std::vector<double>{1, -2, 3}), InvalidArgument);
}

TEST(ReconstructTest, SingularMatrixIsInfeasible) {
  EXPECT_THROW(Reconstructor(DenseMatrix(2, 2, 0.5)), Infeasible);
}

TEST(ReconstructTest, MonteCarloRecoversTheDistribution) {
  SyntheticOptions options;
  options.rows = 100000;
  options.sa_values = 10;
  options.qi = CensusLikeQi(3);
  options.profile = ZipfProfile{1.0};
  options.seed = 6;
  const Table table = GenerateSynthetic(options);
  const Distribution p = SaDistribution(table);
  const PerturbationModel model = BuildModel(p, PrivacyParams(4.0));
  const Distribution observed = SaDistribution(Perturb(table, model, 6));
  std::vector<double> counts(observed.counts.begin(), observed.counts.end());
  const Reconstruction n = Reconstruct(counts, model);
  double l1 = 0;
  for (std::size_t i = 0; i < model.m; ++i) l1 += std::abs(n.raw[i] - p.counts[i]);
  EXPECT_LE(l1 / p.total, 0.05);
}

TEST(PerturbationIoTest, MatrixAndDistributionRoundTrip) {
  const auto dir = std::filesystem::path(::testing::TempDir()) / "betalike_pm";
  std::filesystem::create_directories(dir);
  const Table table = testing::NineteenRowTable();
  const Distribution p = SaDistribution(table);
  const PerturbationModel model = BuildModel(p, PrivacyParams(2.0));
  WritePm((dir / "pm.txt").string(), model.pm);
  const DenseMatrix back = ReadPm((dir / "pm.txt").string());
  ASSERT_EQ(back.rows(), model.m);
  for (std::size_t i = 0; i < model.m; ++i) {
    for (std::size_t j = 0; j < model.m; ++j) EXPECT_EQ(back(i, j), model.pm(i, j));
  }
  WriteDistribution((dir / "distribution.csv").string(), table.domain(), p);
  const auto [domain, again] = ReadDistribution((dir / "distribution.csv").string());
  EXPECT_EQ(domain.labels(), table.domain().labels());
  EXPECT_EQ(again.counts, p.counts);
  EXPECT_EQ(again.total, 19);
  std::ofstream((dir / "bad.txt").string()) << "1 0\n0\n";
  EXPECT_THROW(ReadPm((dir / "bad.txt").string()), DataError);
}

}  // namespace
}  // namespace betalike
