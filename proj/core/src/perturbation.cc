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

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string_view>

#include "betalike/errors.h"

namespace betalike {

std::vector<double> DenseMatrix::Multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("matrix/vector size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) sum += (*this)(r, c) * x[c];
    y[r] = sum;
  }
  return y;
}

double Gamma(double p, const PrivacyParams& params) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("frequency must lie in (0, 1]");
  const double f = FrequencyBound(p, params);
  if (f >= 1.0) throw Infeasible("value cannot be protected by perturbation");
  return (f / p) * (1.0 - p) / (1.0 - f);
}

PerturbationModel BuildModel(const Distribution& p, const PrivacyParams& params) {
  const auto frequencies = p.frequencies();
  return BuildModel(frequencies, params);
}

PerturbationModel BuildModel(std::span<const double> p, const PrivacyParams& params) {
  const std::size_t m = p.size();
  if (m < 2) throw InvalidArgument("perturbation needs at least two SA values");
  PerturbationModel model;
  model.m = m;
  model.rho1.assign(p.begin(), p.end());
  for (double pi : p) {
    model.rho2.push_back(FrequencyBound(pi, params));
    model.gamma.push_back(Gamma(pi, params));
  }
  const double gamma_max = *std::max_element(model.gamma.begin(), model.gamma.end());
  const auto md = static_cast<double>(m);
  model.c = 1.0 / (gamma_max + md - 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double alpha = (md * model.gamma[i] * model.c - 1.0) / (md - 1.0);
    if (!(alpha > 0.0) || alpha > 1.0) {
      throw Infeasible("infeasible alpha under heterogeneous gamma (value " +
                       std::to_string(i) + ", alpha " + std::to_string(alpha) + ")");
    }
    model.alpha.push_back(alpha);
  }
  model.pm = DenseMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double off = (1.0 - model.alpha[i]) / md;
    for (std::size_t v = 0; v < m; ++v) model.pm(v, i) = off;
    model.pm(i, i) = model.alpha[i] + off;
  }
  return model;
}

Table Perturb(const Table& table, const PerturbationModel& model, std::uint64_t seed) {
  if (table.domain().size() != model.m) {
    throw InvalidArgument("model size does not match the table's SA domain");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<SaId> replacement(0, static_cast<SaId>(model.m - 1));
  std::vector<Record> rows = table.rows();
  for (auto& row : rows) {
    if (coin(rng) >= model.alpha[row.sa]) row.sa = replacement(rng);
  }
  return Table(table.schema_ptr(), table.domain_ptr(), std::move(rows));
}

DenseMatrix Posterior(const PerturbationModel& model, std::span<const double> p) {
  if (p.size() != model.m) throw InvalidArgument("prior size does not match the model");
  DenseMatrix post(model.m, model.m);
  for (std::size_t v = 0; v < model.m; ++v) {
    double evidence = 0.0;
    for (std::size_t j = 0; j < model.m; ++j) evidence += p[j] * model.pm(v, j);
    for (std::size_t i = 0; i < model.m; ++i) post(i, v) = p[i] * model.pm(v, i) / evidence;
  }
  return post;
}

ModelCheck CheckModel(const PerturbationModel& model) {
  const std::size_t m = model.m;
  const auto md = static_cast<double>(m);
  ModelCheck check;
  check.ratio_excess = -std::numeric_limits<double>::infinity();
  check.posterior_excess = -std::numeric_limits<double>::infinity();
  check.alpha_cap_excess = -std::numeric_limits<double>::infinity();
  double min_diagonal = std::numeric_limits<double>::infinity();
  double max_off = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      sum += model.pm(v, i);
      if (v != i) max_off = std::max(max_off, model.pm(v, i));
    }
    min_diagonal = std::min(min_diagonal, model.pm(i, i));
    check.column_sum_error = std::max(check.column_sum_error, std::abs(sum - 1.0));
    const double cap = (model.gamma[i] - 1.0) / (model.gamma[i] + md - 1.0);
    check.alpha_cap_excess = std::max(check.alpha_cap_excess, model.alpha[i] - cap);
  }
  check.diagonal_dominant = min_diagonal > max_off;
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double ratio = model.pm(v, i) / model.pm(v, j);
        check.ratio_excess = std::max(check.ratio_excess, ratio - model.gamma[i]);
      }
    }
  }
  const DenseMatrix post = Posterior(model, model.rho1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = 0; v < m; ++v) {
      check.posterior_excess = std::max(check.posterior_excess, post(i, v) - model.rho2[i]);
    }
  }
  return check;
}

struct Reconstructor::Impl {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  std::size_t m = 0;
};

Reconstructor::Reconstructor(const DenseMatrix& pm) : impl_(std::make_unique<Impl>()) {
  if (pm.rows() != pm.cols() || pm.rows() == 0) {
    throw InvalidArgument("transition matrix must be square and non-empty");
  }
  impl_->m = pm.rows();
  Eigen::MatrixXd a(pm.rows(), pm.cols());
  for (std::size_t r = 0; r < pm.rows(); ++r) {
    for (std::size_t c = 0; c < pm.cols(); ++c) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = pm(r, c);
    }
  }
  impl_->lu.compute(a);
  const double rcond = impl_->lu.rcond();
  if (!(rcond >= 1e-12)) throw Infeasible("transition matrix is numerically singular");
}

Reconstructor::~Reconstructor() = default;
Reconstructor::Reconstructor(Reconstructor&&) noexcept = default;
Reconstructor& Reconstructor::operator=(Reconstructor&&) noexcept = default;

std::size_t Reconstructor::size() const { return impl_->m; }

Reconstruction Reconstructor::Solve(std::span<const double> observed) const {
  if (observed.size() != impl_->m) throw InvalidArgument("observed counts have the wrong length");
  Eigen::VectorXd e(static_cast<Eigen::Index>(impl_->m));
  double total = 0.0;
  for (std::size_t i = 0; i < impl_->m; ++i) {
    if (!(observed[i] >= 0.0)) throw InvalidArgument("observed counts must be non-negative");
    e(static_cast<Eigen::Index>(i)) = observed[i];
    total += observed[i];
  }
  const Eigen::VectorXd n = impl_->lu.solve(e);
  Reconstruction out;
  out.raw.assign(n.data(), n.data() + n.size());
  out.clamped.resize(out.raw.size());
  double positive = 0.0;
  for (std::size_t i = 0; i < out.raw.size(); ++i) {
    out.clamped[i] = std::max(0.0, out.raw[i]);
    positive += out.clamped[i];
  }
  if (positive > 0.0) {
    for (double& x : out.clamped) x *= total / positive;
  }
  return out;
}

Reconstruction Reconstruct(std::span<const double> observed, const PerturbationModel& model) {
  return Reconstructor(model.pm).Solve(observed);
}

void WritePm(std::ostream& out, const DenseMatrix& pm) {
  for (std::size_t r = 0; r < pm.rows(); ++r) {
    for (std::size_t c = 0; c < pm.cols(); ++c) {
      if (c > 0) out << ' ';
      out << FormatNumber(pm(r, c));
    }
    out << '\n';
  }
}

void WritePm(const std::string& path, const DenseMatrix& pm) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  WritePm(out, pm);
  if (!out) throw DataError("failed writing " + path);
}

namespace {

double ParseDouble(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError(where + ": cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

DenseMatrix ReadPm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      row.push_back(ParseDouble(token, path + ":" + std::to_string(line_no)));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": empty matrix");
  DenseMatrix pm(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw DataError(path + ": matrix is not square");
    for (std::size_t c = 0; c < rows.size(); ++c) pm(r, c) = rows[r][c];
  }
  return pm;
}

void WriteDistribution(std::ostream& out, const SaDomain& domain, const Distribution& p) {
  out << "value,count,frequency\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto id = static_cast<SaId>(i);
    out << domain.label(id) << ',' << p.counts[i] << ',' << FormatNumber(p.frequency(id))
        << '\n';
  }
}

void WriteDistribution(const std::string& path, const SaDomain& domain,
                       const Distribution& p) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  WriteDistribution(out, domain, p);
  if (!out) throw DataError("failed writing " + path);
}

std::pair<SaDomain, Distribution> ReadDistribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header");
  std::vector<std::string> labels;
  Distribution p;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    // Labels may contain commas; the last two fields are numeric.
    const auto second = line.rfind(',');
    const auto first = second == std::string::npos || second == 0
                           ? std::string::npos
                           : line.rfind(',', second - 1);
    if (first == std::string::npos) throw DataError(where + ": expected value,count,frequency");
    labels.push_back(line.substr(0, first));
    const double count = ParseDouble(std::string_view(line).substr(first + 1, second - first - 1),
                                     where);
    if (count < 1 || count != std::floor(count)) {
      throw DataError(where + ": count must be a positive integer");
    }
    p.counts.push_back(static_cast<std::int64_t>(count));
    p.total += p.counts.back();
  }
  if (labels.empty()) throw DataError(path + ": no values");
  return {SaDomain(std::move(labels)), std::move(p)};
}

}  // namespace betalike
