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

#include "betalike/release.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "betalike/errors.h"
#include "schema_json.h"

namespace betalike {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "betalike-release";
constexpr int kVersion = 1;

json ClassToJson(const EquivalenceClass& ec, const Schema& schema,
                 const SaDomain& domain) {
  json qi = json::array();
  for (std::size_t k = 0; k < ec.qi.size(); ++k) {
    const auto& attr = schema.qi(k);
    if (const auto* range = std::get_if<NumericRange>(&ec.qi[k])) {
      qi.push_back({{"attribute", attr.name}, {"low", range->low}, {"high", range->high}});
    } else {
      const auto& cat = std::get<CategoryNode>(ec.qi[k]);
      qi.push_back({{"attribute", attr.name},
                    {"node", attr.hierarchy->label(cat.node)},
                    {"leaf_first", cat.leaves.first},
                    {"leaf_last", cat.leaves.last}});
    }
  }
  json sa = json::array();
  for (std::size_t id = 0; id < ec.sa.counts.size(); ++id) {
    for (std::int64_t c = 0; c < ec.sa.counts[id]; ++c) {
      sa.push_back(domain.label(static_cast<SaId>(id)));
    }
  }
  return json{{"size", ec.size()}, {"qi", std::move(qi)}, {"sa", std::move(sa)}};
}

EquivalenceClass ClassFromJson(const json& item, const Schema& schema,
                               const SaDomain& domain, std::size_t index) {
  const std::string where = "class " + std::to_string(index);
  EquivalenceClass ec;
  const auto& qi = item.at("qi");
  if (!qi.is_array() || qi.size() != schema.qi_count()) {
    throw DataError(where + ": expected " + std::to_string(schema.qi_count()) +
                    " QI descriptions");
  }
  for (std::size_t k = 0; k < qi.size(); ++k) {
    const auto& attr = schema.qi(k);
    if (qi[k].value("attribute", "") != attr.name) {
      throw DataError(where + ": QI description " + std::to_string(k) +
                      " does not name '" + attr.name + "'");
    }
    if (attr.is_numerical()) {
      NumericRange range{qi[k].at("low").get<double>(), qi[k].at("high").get<double>()};
      if (range.low > range.high || range.low < attr.lower || range.high > attr.upper) {
        throw DataError(where + ": invalid range for '" + attr.name + "'");
      }
      ec.qi.emplace_back(range);
    } else {
      const auto first = qi[k].at("leaf_first").get<std::size_t>();
      const auto last = qi[k].at("leaf_last").get<std::size_t>();
      if (first > last || last >= attr.hierarchy->leaf_count()) {
        throw DataError(where + ": invalid leaf span for '" + attr.name + "'");
      }
      const NodeId node = attr.hierarchy->lowest_common_ancestor(first, last);
      if (attr.hierarchy->span(node) != LeafSpan{first, last} ||
          attr.hierarchy->label(node) != qi[k].at("node").get<std::string>()) {
        throw DataError(where + ": '" + attr.name + "' node does not match its leaf span");
      }
      ec.qi.emplace_back(CategoryNode{node, {first, last}});
    }
  }
  ec.sa.counts.assign(domain.size(), 0);
  for (const auto& label : item.at("sa")) {
    const auto text = label.get<std::string>();
    if (!domain.contains(text)) {
      throw DataError(where + ": SA value '" + text + "' not in the domain");
    }
    ++ec.sa.counts[domain.id(text)];
  }
  if (ec.size() == 0) throw DataError(where + ": empty class");
  if (item.contains("size") && item.at("size").get<std::int64_t>() != ec.size()) {
    throw DataError(where + ": size does not match its SA list");
  }
  return ec;
}

}  // namespace

std::int64_t Release::row_count() const {
  std::int64_t n = 0;
  for (const auto& ec : classes) n += ec.size();
  return n;
}

std::vector<EcDistribution> Release::ClassDistributions() const {
  std::vector<EcDistribution> out;
  out.reserve(classes.size());
  for (const auto& ec : classes) out.push_back(ec.sa);
  return out;
}

void WriteRelease(std::ostream& out, const Release& release) {
  const json header{
      {"format", kFormat},
      {"version", kVersion},
      {"parameters",
       {{"beta", release.parameters.beta},
        {"seed", release.parameters.seed},
        {"curve_order", release.parameters.curve_order}}},
      {"schema", internal::SchemaToJsonValue(*release.schema)},
      {"sa_domain", release.domain->labels()},
      {"overall_counts", release.overall.counts},
  };
  // Header fields pretty-printed, then one compact line per class.
  std::string text = header.dump(1);
  text.pop_back();  // closing brace
  while (!text.empty() && text.back() == '\n') text.pop_back();
  out << text << ",\n \"classes\": [";
  for (std::size_t i = 0; i < release.classes.size(); ++i) {
    out << (i ? ",\n  " : "\n  ")
        << ClassToJson(release.classes[i], *release.schema, *release.domain).dump();
  }
  out << "\n ]\n}\n";
}

void WriteRelease(const std::string& path, const Release& release) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot write");
  WriteRelease(out, release);
  if (!out) throw DataError(path + ": write failed");
}

Release ReadRelease(std::istream& in, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(source_name + ": " + e.what());
  }
  try {
    if (doc.value("format", "") != kFormat) {
      throw DataError("not a release document");
    }
    Release release;
    release.schema =
        std::make_shared<const Schema>(internal::SchemaFromJsonValue(doc.at("schema")));
    release.domain = std::make_shared<const SaDomain>(
        doc.at("sa_domain").get<std::vector<std::string>>());
    for (const auto& label : release.domain->labels()) {
      if (!release.schema->sa_hierarchy().has_leaf(label)) {
        throw DataError("SA value '" + label + "' is not a leaf of the SA hierarchy");
      }
    }
    release.overall.counts = doc.at("overall_counts").get<std::vector<std::int64_t>>();
    if (release.overall.counts.size() != release.domain->size()) {
      throw DataError("overall_counts length does not match sa_domain");
    }
    for (auto c : release.overall.counts) {
      if (c <= 0) throw DataError("overall counts must be positive");
      release.overall.total += c;
    }
    const auto& params = doc.at("parameters");
    release.parameters.beta = params.at("beta").get<double>();
    release.parameters.seed = params.at("seed").get<std::uint64_t>();
    release.parameters.curve_order = params.at("curve_order").get<int>();
    const auto& classes = doc.at("classes");
    for (std::size_t i = 0; i < classes.size(); ++i) {
      release.classes.push_back(
          ClassFromJson(classes[i], *release.schema, *release.domain, i));
    }
    std::vector<std::int64_t> per_value(release.domain->size(), 0);
    for (const auto& ec : release.classes) {
      for (std::size_t id = 0; id < per_value.size(); ++id) per_value[id] += ec.sa.counts[id];
    }
    if (per_value != release.overall.counts) {
      throw DataError("class SA lists do not add up to overall_counts");
    }
    if (release.row_count() != release.overall.total) {
      throw DataError("classes hold " + std::to_string(release.row_count()) +
                      " rows but the overall distribution has " +
                      std::to_string(release.overall.total));
    }
    return release;
  } catch (const DataError& e) {
    throw DataError(source_name + ": " + e.what());
  } catch (const json::exception& e) {
    throw DataError(source_name + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(source_name + ": " + e.what());
  }
}

Release ReadRelease(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  return ReadRelease(in, path);
}

}  // namespace betalike
