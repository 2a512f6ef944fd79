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

#ifndef BETALIKE_PERTURBATION_H_
#define BETALIKE_PERTURBATION_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "betalike/likeness.h"
#include "betalike/table.h"

namespace betalike {

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }

  std::vector<double> Multiply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// gamma = (f/p) (1 - p) / (1 - f) with f = f(p). Throws InvalidArgument for
// p outside (0, 1) and Infeasible when f(p) >= 1.
double Gamma(double p, const PrivacyParams& params);

// Uniform randomized response with per-value retention alpha_i. Column i of
// `pm` is the output distribution of value i: pm(v, i) = Pr(v_i -> v).
struct PerturbationModel {
  std::size_t m = 0;
  std::vector<double> rho1;   // p_i
  std::vector<double> rho2;   // f(p_i)
  std::vector<double> gamma;
  double c = 0.0;             // 1 / (max gamma + m - 1)
  std::vector<double> alpha;
  DenseMatrix pm;

  double transition(SaId from, SaId to) const { return pm(to, from); }
};

// Throws InvalidArgument for m < 2 and Infeasible when some alpha_i falls
// outside (0, 1].
PerturbationModel BuildModel(const Distribution& p, const PrivacyParams& params);
PerturbationModel BuildModel(std::span<const double> p, const PrivacyParams& params);

// Keeps each row's value with probability alpha_i, otherwise replaces it by a
// uniform draw over all m values. One sequential stream seeded by `seed`.
Table Perturb(const Table& table, const PerturbationModel& model, std::uint64_t seed);

// Entry (i, v) = p_i Pr(v_i -> v) / sum_j p_j Pr(v_j -> v).
DenseMatrix Posterior(const PerturbationModel& model, std::span<const double> p);

// Worst-case deviations of a model from its guarantees.
struct ModelCheck {
  double column_sum_error = 0.0;    // max |sum of column - 1|
  double ratio_excess = 0.0;        // max Pr(v_i->v)/Pr(v_j->v) - gamma_i
  double posterior_excess = 0.0;    // max posterior(i, v) - f(p_i)
  double alpha_cap_excess = 0.0;    // max alpha_i - (gamma_i - 1)/(gamma_i + m - 1)
  bool diagonal_dominant = true;    // every diagonal exceeds its column
};
ModelCheck CheckModel(const PerturbationModel& model);

struct Reconstruction {
  std::vector<double> raw;      // PM^-1 E'
  std::vector<double> clamped;  // negatives set to 0, rescaled to sum E'
};

// Factorizes a transition matrix once for repeated solves. Throws
// Infeasible when the matrix is numerically singular (reciprocal condition
// estimate below 1e-12).
class Reconstructor {
 public:
  explicit Reconstructor(const DenseMatrix& pm);
  ~Reconstructor();
  Reconstructor(Reconstructor&&) noexcept;
  Reconstructor& operator=(Reconstructor&&) noexcept;

  std::size_t size() const;
  // Throws InvalidArgument on a length mismatch or negative entries.
  Reconstruction Solve(std::span<const double> observed) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Reconstruction Reconstruct(std::span<const double> observed, const PerturbationModel& model);

// pm as decimal text, one matrix row per line, space separated.
void WritePm(std::ostream& out, const DenseMatrix& pm);
void WritePm(const std::string& path, const DenseMatrix& pm);
DenseMatrix ReadPm(const std::string& path);

// "value,count,frequency" lines in id order.
void WriteDistribution(std::ostream& out, const SaDomain& domain, const Distribution& p);
void WriteDistribution(const std::string& path, const SaDomain& domain,
                       const Distribution& p);
// Reads a distribution file back; the row order fixes the ids.
std::pair<SaDomain, Distribution> ReadDistribution(const std::string& path);

}  // namespace betalike

#endif  // BETALIKE_PERTURBATION_H_
