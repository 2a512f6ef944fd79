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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "betalike/audit.h"
#include "betalike/bucketization.h"
#include "betalike/errors.h"
#include "betalike/generalizer.h"
#include "betalike/info_loss.h"
#include "betalike/likeness.h"
#include "betalike/perturbation.h"
#include "betalike/query.h"
#include "betalike/reallocation.h"
#include "betalike/release.h"
#include "betalike/schema.h"
#include "betalike/synthetic.h"
#include "betalike/table.h"

namespace betalike::cli {
namespace {

namespace fs = std::filesystem;

struct Config {
  std::string input;
  std::string schema;
  std::string out;
  std::string release;
  std::string perturbed;
  std::string report;
  double beta = 4.0;
  std::uint64_t seed = 0;
  int order = kDefaultCurveOrder;
  std::size_t lambda = 3;
  double theta = 0.1;
  std::size_t queries = 2000;
  std::size_t rows = 100000;
  std::size_t qi_count = 3;
  std::optional<double> cluster;
  std::optional<double> trend;
  std::optional<double> spread;
  bool dump_buckets = false;
  bool random_retrieval = false;
  bool verbose = false;
};

std::string Num(double v) { return FormatNumber(v); }

std::string LabelsOf(const SaDomain& domain, const ValueRun& run) {
  std::string text;
  for (SaId v = run.first; v <= run.last; ++v) {
    if (!text.empty()) text += ", ";
    text += domain.label(v);
  }
  return "{" + text + "}";
}

std::string CountsOf(const AllocationVector& a) {
  std::string text = "[";
  for (std::size_t j = 0; j < a.counts.size(); ++j) {
    if (j > 0) text += ",";
    text += std::to_string(a.counts[j]);
  }
  return text + "]";
}

fs::path PrepareDirectory(const std::string& dir) {
  if (dir.empty()) throw InvalidArgument("--out is required");
  fs::path path(dir);
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
  return path;
}

void PrintAudit(std::ostream& out, const ReleaseAudit& audit) {
  if (audit.achieved.unbounded()) {
    out << "achieved_beta: unbounded\n";
  } else {
    out << "achieved_beta: " << Num(audit.achieved.value()) << "\n";
  }
  out << "audit_violations: " << audit.violations << "\n";
}

int GenData(const Config& config, std::ostream& out) {
  const fs::path dir = PrepareDirectory(config.out);
  SyntheticOptions options = CensusLikeOptions(config.rows, config.seed, config.qi_count);
  if (config.cluster) options.cluster_weight = *config.cluster;
  if (config.trend) options.trend_weight = *config.trend;
  if (config.spread) options.spread = *config.spread;
  const Table table = GenerateSynthetic(options);
  const std::string data_path = (dir / "data.csv").string();
  const std::string schema_path = (dir / "schema.json").string();
  WriteTable(data_path, table);
  std::ofstream schema_out(schema_path);
  if (!schema_out) throw DataError("cannot open " + schema_path + " for writing");
  schema_out << SchemaToJson(table.schema()) << "\n";
  out << "rows: " << table.size() << "\n"
      << "sa_values: " << table.domain().size() << "\n"
      << "data: " << data_path << "\n"
      << "schema: " << schema_path << "\n";
  return kExitOk;
}

Table LoadInput(const Config& config) {
  if (config.input.empty()) throw InvalidArgument("--input is required");
  if (config.schema.empty()) throw InvalidArgument("--schema is required");
  return LoadTable(config.input, LoadSchema(config.schema));
}

int Generalize(const Config& config, std::ostream& out, std::ostream& err) {
  auto table = std::make_shared<const Table>(LoadInput(config));
  const PrivacyParams params(config.beta);
  if (config.dump_buckets) {
    const BucketPartition partition = DpPartition(*table, params);
    for (std::size_t j = 0; j < partition.size(); ++j) {
      out << "bucket " << j << ": " << LabelsOf(table->domain(), partition.buckets[j].values)
          << " size " << partition.buckets[j].mass << "\n";
    }
    for (const auto& leaf : BiSplit(partition, params)) out << "leaf: " << CountsOf(leaf) << "\n";
  }
  BurelOptions options;
  options.beta = config.beta;
  options.seed = config.seed;
  options.curve_order = config.order;
  options.retrieval = config.random_retrieval ? RetrievalMode::kRandom : RetrievalMode::kHilbert;
  const Release release = Burel(table, options);

  const ReleaseAudit audit = AuditRelease(release, params);
  const auto issues = StructuralIssues(release);
  out << "classes: " << release.classes.size() << "\n"
      << "rows: " << release.row_count() << "\n"
      << "ail: " << Num(Ail(release)) << "\n";
  PrintAudit(out, audit);
  if (!audit.passed() || !issues.empty()) {
    for (const auto& issue : issues) err << "error: " << issue << "\n";
    err << "error: generated release failed its audit\n";
    return kExitBreach;
  }
  if (!config.out.empty()) {
    WriteRelease(config.out, release);
    out << "release: " << config.out << "\n";
  }
  return kExitOk;
}

int PerturbCommand(const Config& config, std::ostream& out, std::ostream& err) {
  const Table table = LoadInput(config);
  const PrivacyParams params(config.beta);
  const Distribution p = SaDistribution(table);
  const PerturbationModel model = BuildModel(p, params);
  const ModelCheck check = CheckModel(model);
  const bool sound = check.column_sum_error <= 1e-12 && check.ratio_excess <= 1e-9 &&
                     check.posterior_excess <= 1e-9 && check.alpha_cap_excess <= 1e-12 &&
                     check.diagonal_dominant;
  out << "sa_values: " << model.m << "\n"
      << "alpha_min: " << Num(*std::min_element(model.alpha.begin(), model.alpha.end())) << "\n"
      << "alpha_max: " << Num(*std::max_element(model.alpha.begin(), model.alpha.end())) << "\n"
      << "posterior_excess: " << Num(check.posterior_excess) << "\n"
      << "ratio_excess: " << Num(check.ratio_excess) << "\n";
  if (!sound) {
    err << "error: perturbation model failed its audit\n";
    return kExitBreach;
  }
  const fs::path dir = PrepareDirectory(config.out);
  const Table perturbed = Perturb(table, model, config.seed);
  WriteTable((dir / "perturbed.csv").string(), perturbed);
  WritePm((dir / "pm.txt").string(), model.pm);
  WriteDistribution((dir / "distribution.csv").string(), table.domain(), p);
  out << "perturbed: " << (dir / "perturbed.csv").string() << "\n"
      << "pm: " << (dir / "pm.txt").string() << "\n"
      << "distribution: " << (dir / "distribution.csv").string() << "\n";
  return kExitOk;
}

int Audit(const Config& config, std::ostream& out) {
  if (config.release.empty()) throw InvalidArgument("--release is required");
  Release release = ReadRelease(config.release);
  if (!config.input.empty()) {
    auto table = std::make_shared<const Table>(
        LoadTable(config.input, *release.schema, *release.domain));
    if (table->size() == static_cast<std::size_t>(release.overall.total)) {
      release.source = std::move(table);
    }
  }
  const double beta = config.beta > 0 ? config.beta : release.parameters.beta;
  const PrivacyParams params(beta);
  const ReleaseAudit audit = AuditRelease(release, params);
  out << "beta: " << Num(beta) << "\n"
      << "classes: " << release.classes.size() << "\n";
  PrintAudit(out, audit);
  if (config.verbose) {
    for (std::size_t c = 0; c < audit.classes.size(); ++c) {
      const auto& entry = audit.classes[c];
      out << "class " << c << " size " << entry.size << " worst "
          << release.domain->label(entry.gain.worst_value) << " gain " << Num(entry.gain.gain)
          << (entry.gain.exceeds_cap ? " unbounded" : "") << (entry.passes ? " pass" : " FAIL")
          << "\n";
    }
  } else {
    for (std::size_t c = 0; c < audit.classes.size(); ++c) {
      const auto& entry = audit.classes[c];
      if (entry.passes) continue;
      out << "violation: class " << c << " size " << entry.size << " value "
          << release.domain->label(entry.gain.worst_value) << " gain "
          << (entry.gain.exceeds_cap ? std::string("unbounded") : Num(entry.gain.gain)) << "\n";
    }
  }
  const NaiveBayesAudit nb = AuditNaiveBayes(release, params);
  out << "nb_checked: " << nb.checked << "\n"
      << "nb_worst_ratio: " << Num(nb.worst_ratio) << "\n"
      << "nb_bound: " << (nb.bound_holds ? "holds" : "violated") << "\n";
  if (nb.accuracy) {
    out << "nb_accuracy: " << Num(*nb.accuracy) << "\n"
        << "most_frequent_share: " << Num(nb.most_frequent_share) << "\n";
  }
  return kExitOk;
}

void PrintReport(std::ostream& out, const std::string& name, const WorkloadReport& report) {
  out << name << "_median_relative_error: "
      << (report.median ? Num(*report.median) : std::string("undefined")) << "\n"
      << name << "_dropped: " << report.dropped << "\n";
}

int QueryEval(const Config& config, std::ostream& out) {
  if (config.input.empty()) throw InvalidArgument("--input is required");
  if (config.release.empty() == config.perturbed.empty()) {
    throw InvalidArgument("exactly one of --release or --perturbed is required");
  }
  std::shared_ptr<const Schema> schema;
  std::shared_ptr<const SaDomain> domain;
  std::optional<Release> release;
  std::optional<Distribution> p;
  if (!config.release.empty()) {
    release = ReadRelease(config.release);
    schema = release->schema;
    domain = release->domain;
  } else {
    if (config.schema.empty()) throw InvalidArgument("--schema is required with --perturbed");
    schema = std::make_shared<const Schema>(LoadSchema(config.schema));
    auto [labels, distribution] =
        ReadDistribution((fs::path(config.perturbed) / "distribution.csv").string());
    domain = std::make_shared<const SaDomain>(std::move(labels));
    p = std::move(distribution);
  }
  const Table original = LoadTable(config.input, *schema, *domain);
  const auto workload =
      GenWorkload(*schema, domain->size(), config.lambda, config.theta, config.queries, config.seed);
  out << "queries: " << workload.size() << "\n"
      << "lambda: " << config.lambda << "\n"
      << "theta: " << Num(config.theta) << "\n";

  WorkloadReport primary;
  if (release) {
    primary = EvaluateWorkload(original, workload, [&](const AggregateQuery& q) {
      return EstimateGeneralized(*release, q);
    });
    PrintReport(out, "generalized", primary);
  } else {
    const Table perturbed =
        LoadTable((fs::path(config.perturbed) / "perturbed.csv").string(), *schema, *domain);
    const Reconstructor reconstructor(ReadPm((fs::path(config.perturbed) / "pm.txt").string()));
    primary = EvaluateWorkload(original, workload, [&](const AggregateQuery& q) {
      return EstimatePerturbed(perturbed, reconstructor, q);
    });
    PrintReport(out, "perturbed", primary);
    const WorkloadReport baseline = EvaluateWorkload(original, workload, [&](const AggregateQuery& q) {
      return EstimateBaseline(perturbed, *p, q);
    });
    PrintReport(out, "baseline", baseline);
  }
  if (!config.out.empty()) {
    std::ofstream report_out(config.out);
    if (!report_out) throw DataError("cannot open " + config.out + " for writing");
    WriteReport(report_out, primary);
  }
  if (!config.report.empty()) {
    std::ofstream workload_out(config.report);
    if (!workload_out) throw DataError("cannot open " + config.report + " for writing");
    WriteWorkload(workload_out, *schema, *domain, workload);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config config;
  CLI::App app{"beta-likeness anonymization: generalization, perturbation and audits",
               "betalike"};
  app.require_subcommand(1);

  auto add_input = [&config](CLI::App* sub) {
    sub->add_option("--input", config.input, "Microdata CSV with a header row");
    sub->add_option("--schema", config.schema, "Schema JSON");
  };
  auto add_privacy = [&config](CLI::App* sub) {
    sub->add_option("--beta", config.beta, "Likeness threshold beta > 0")->capture_default_str();
    sub->add_option("--seed", config.seed, "64-bit seed for all randomness")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen-data", "Write a synthetic CENSUS-like table and schema");
  gen->add_option("--rows", config.rows, "Row count")->capture_default_str();
  gen->add_option("--qi-count", config.qi_count, "Number of QI attributes (1-5)")
      ->capture_default_str();
  gen->add_option("--seed", config.seed, "Generator seed")->capture_default_str();
  gen->add_option("--cluster", config.cluster,
                  "Probability that a QI value sits near its SA value's own center");
  gen->add_option("--trend", config.trend,
                  "Probability that a QI value follows the SA frequency-rank trend");
  gen->add_option("--spread", config.spread, "Spread of QI values around their center");
  gen->add_option("--out", config.out, "Output directory")->required();

  auto* generalize = app.add_subcommand("generalize", "Anonymize by bucketization and generalization");
  add_input(generalize);
  add_privacy(generalize);
  generalize->add_option("--order", config.order, "Hilbert curve bits per dimension")
      ->capture_default_str();
  generalize->add_option("--out", config.out, "Release JSON output path");
  generalize->add_flag("--dump-buckets", config.dump_buckets, "Print buckets and allocation leaves");
  generalize->add_flag("--random-retrieval", config.random_retrieval,
                       "Fill classes with random bucket members instead of curve neighbours");

  auto* perturb = app.add_subcommand("perturb", "Anonymize by randomized response");
  add_input(perturb);
  add_privacy(perturb);
  perturb->add_option("--out", config.out, "Output directory")->required();

  auto* audit = app.add_subcommand("audit", "Audit a release");
  audit->add_option("--release", config.release, "Release JSON")->required();
  audit->add_option("--input", config.input, "Source CSV (enables the classifier check)");
  audit->add_option("--beta", config.beta, "Audit threshold (default: the release's)");
  audit->add_flag("--verbose", config.verbose, "Print every class");

  auto* queryeval = app.add_subcommand("queryeval", "Evaluate a random COUNT workload");
  queryeval->add_option("--input", config.input, "Original CSV")->required();
  queryeval->add_option("--schema", config.schema, "Schema JSON (with --perturbed)");
  queryeval->add_option("--release", config.release, "Release JSON");
  queryeval->add_option("--perturbed", config.perturbed, "Directory written by perturb");
  queryeval->add_option("--lambda", config.lambda, "QI attributes per query")->capture_default_str();
  queryeval->add_option("--theta", config.theta, "Target selectivity")->capture_default_str();
  queryeval->add_option("--queries", config.queries, "Workload size")->capture_default_str();
  queryeval->add_option("--seed", config.seed, "Workload seed")->capture_default_str();
  queryeval->add_option("--out", config.out, "Per-query report CSV");
  queryeval->add_option("--workload", config.report, "Workload CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  // Audit uses beta 0 as "take it from the release".
  if (audit->parsed() && audit->count("--beta") == 0) config.beta = 0;

  try {
    if (gen->parsed()) return GenData(config, out);
    if (generalize->parsed()) return Generalize(config, out, err);
    if (perturb->parsed()) return PerturbCommand(config, out, err);
    if (audit->parsed()) return Audit(config, out);
    return QueryEval(config, out);
  } catch (const InvariantBreach& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitBreach;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace betalike::cli
