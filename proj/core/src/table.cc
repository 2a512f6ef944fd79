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

#include "betalike/table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "betalike/errors.h"

namespace betalike {
namespace {

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> ParseDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::string CsvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void ValidateQi(const Schema& schema, const std::vector<double>& qi,
                std::size_t row_number) {
  if (qi.size() != schema.qi_count()) {
    throw DataError("row " + std::to_string(row_number) + ": expected " +
                    std::to_string(schema.qi_count()) + " QI values");
  }
  for (std::size_t k = 0; k < qi.size(); ++k) {
    const auto& attr = schema.qi(k);
    const double v = qi[k];
    if (attr.is_numerical()) {
      if (!std::isfinite(v) || v < attr.lower || v > attr.upper) {
        throw DataError("row " + std::to_string(row_number) + ": " + attr.name +
                        "=" + FormatNumber(v) + " outside domain [" +
                        FormatNumber(attr.lower) + ", " +
                        FormatNumber(attr.upper) + "]");
      }
    } else {
      const double leaves = static_cast<double>(attr.hierarchy->leaf_count());
      if (!(v >= 0.0 && v < leaves && v == std::floor(v))) {
        throw DataError("row " + std::to_string(row_number) + ": " + attr.name +
                        " leaf rank out of range");
      }
    }
  }
}

Table ReadTableImpl(std::istream& in, const Schema& schema,
                    const SaDomain* fixed_domain, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto context = [&](std::size_t row) {
    return source + ":" + std::to_string(line_no) + " (row " + std::to_string(row) + ")";
  };
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw DataError(source + ": missing header row");

  const auto header = SplitCsvLine(line);
  const auto& attrs = schema.attributes();
  std::vector<std::size_t> column(attrs.size());
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return Trim(h) == attrs[a].name;
    });
    if (it == header.end()) {
      throw DataError(source + ": missing column '" + attrs[a].name + "'");
    }
    column[a] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<Table::RawRow> rows;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ++row_no;
    const auto fields = SplitCsvLine(line);
    Table::RawRow raw;
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      const auto& attr = attrs[a];
      if (column[a] >= fields.size()) {
        throw DataError(context(row_no) + ": missing value for '" + attr.name + "'");
      }
      const std::string_view text = Trim(fields[column[a]]);
      if (attr.role == Role::kSensitive) {
        raw.sa = std::string(text);
        continue;
      }
      if (attr.is_numerical()) {
        auto value = ParseDouble(text);
        if (!value) {
          throw DataError(context(row_no) + ": cannot parse " + attr.name + "='" +
                          std::string(text) + "'");
        }
        if (*value < attr.lower || *value > attr.upper) {
          throw DataError(context(row_no) + ": " + attr.name + "=" +
                          std::string(text) + " outside domain [" +
                          FormatNumber(attr.lower) + ", " +
                          FormatNumber(attr.upper) + "]");
        }
        if (attr.integral && *value != std::floor(*value)) {
          throw DataError(context(row_no) + ": " + attr.name + "=" + std::string(text) +
                          " is not an integer");
        }
        raw.qi.push_back(*value);
      } else {
        if (!attr.hierarchy->has_leaf(text)) {
          throw DataError(context(row_no) + ": unknown " + attr.name + " value '" +
                          std::string(text) + "'");
        }
        raw.qi.push_back(
            static_cast<double>(attr.hierarchy->leaf_preorder_index(text)));
      }
    }
    rows.push_back(std::move(raw));
  }
  if (rows.empty()) throw DataError(source + ": no rows");
  try {
    if (fixed_domain != nullptr) return Table::FromRaw(schema, *fixed_domain, rows);
    return Table::FromRaw(schema, rows);
  } catch (const DataError& e) {
    throw DataError(source + ": " + e.what());
  }
}

}  // namespace

SaDomain::SaDomain(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], static_cast<SaId>(i)).second) {
      throw InvalidArgument("SA label '" + labels_[i] + "' repeats");
    }
  }
}

bool SaDomain::contains(std::string_view label) const {
  return index_.find(std::string(label)) != index_.end();
}

SaId SaDomain::id(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw InvalidArgument("unknown SA value '" + std::string(label) + "'");
  }
  return it->second;
}

std::vector<double> Distribution::frequencies() const {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = frequency(static_cast<SaId>(i));
  return out;
}

Table Table::FromRaw(Schema schema, const std::vector<RawRow>& rows) {
  if (rows.empty()) throw DataError("no rows");
  const Hierarchy& sa_tree = schema.sa_hierarchy();
  // Count by SA-hierarchy leaf rank first; this also validates labels.
  std::vector<std::int64_t> by_rank(sa_tree.leaf_count(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!sa_tree.has_leaf(rows[r].sa)) {
      throw DataError("row " + std::to_string(r + 1) + ": unknown " +
                      schema.sa().name + " value '" + rows[r].sa + "'");
    }
    ++by_rank[sa_tree.leaf_preorder_index(rows[r].sa)];
  }
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < by_rank.size(); ++k) {
    if (by_rank[k] > 0) ranks.push_back(k);
  }
  std::stable_sort(ranks.begin(), ranks.end(), [&](std::size_t a, std::size_t b) {
    return by_rank[a] < by_rank[b];
  });
  std::vector<std::string> labels;
  labels.reserve(ranks.size());
  for (std::size_t k : ranks) labels.push_back(sa_tree.leaf_label(k));
  return FromRaw(std::move(schema), SaDomain(std::move(labels)), rows);
}

Table Table::FromRaw(Schema schema, SaDomain domain,
                     const std::vector<RawRow>& rows) {
  if (rows.empty()) throw DataError("no rows");
  std::vector<Record> records;
  records.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!domain.contains(rows[r].sa)) {
      throw DataError("row " + std::to_string(r + 1) + ": " + schema.sa().name +
                      " value '" + rows[r].sa + "' not in the SA domain");
    }
    ValidateQi(schema, rows[r].qi, r + 1);
    records.push_back(Record{rows[r].qi, domain.id(rows[r].sa)});
  }
  return Table(std::make_shared<const Schema>(std::move(schema)),
               std::make_shared<const SaDomain>(std::move(domain)),
               std::move(records));
}

Table::Table(std::shared_ptr<const Schema> schema,
             std::shared_ptr<const SaDomain> domain, std::vector<Record> rows)
    : schema_(std::move(schema)), domain_(std::move(domain)), rows_(std::move(rows)) {
  if (rows_.empty()) throw DataError("no rows");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    ValidateQi(*schema_, rows_[r].qi, r + 1);
    if (rows_[r].sa >= domain_->size()) {
      throw DataError("row " + std::to_string(r + 1) + ": SA id out of range");
    }
  }
}

std::vector<std::int64_t> Table::SaCounts() const {
  std::vector<std::int64_t> counts(domain_->size(), 0);
  for (const auto& row : rows_) ++counts[row.sa];
  return counts;
}

Distribution SaDistribution(const Table& table) {
  Distribution dist{table.SaCounts(), static_cast<std::int64_t>(table.size())};
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    if (dist.counts[i] == 0) {
      throw InvalidArgument("SA value '" + table.domain().label(static_cast<SaId>(i)) +
                            "' has zero count");
    }
  }
  return dist;
}

Table ReadTable(std::istream& in, const Schema& schema, const std::string& source_name) {
  return ReadTableImpl(in, schema, nullptr, source_name);
}

Table ReadTable(std::istream& in, const Schema& schema, const SaDomain& fixed_domain,
                const std::string& source_name) {
  return ReadTableImpl(in, schema, &fixed_domain, source_name);
}

Table LoadTable(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  return ReadTableImpl(in, schema, nullptr, path);
}

Table LoadTable(const std::string& path, const Schema& schema,
                const SaDomain& fixed_domain) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  return ReadTableImpl(in, schema, &fixed_domain, path);
}

std::string FormatNumber(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteTable(std::ostream& out, const Table& table) {
  const auto& schema = table.schema();
  const auto& attrs = schema.attributes();
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    if (a) out << ',';
    out << CsvEscape(attrs[a].name);
  }
  out << '\n';
  for (const auto& row : table.rows()) {
    std::size_t q = 0;
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      if (a) out << ',';
      if (attrs[a].role == Role::kSensitive) {
        out << CsvEscape(table.domain().label(row.sa));
        continue;
      }
      const double v = row.qi[q++];
      if (attrs[a].is_numerical()) {
        out << FormatNumber(v);
      } else {
        out << CsvEscape(attrs[a].hierarchy->leaf_label(static_cast<std::size_t>(v)));
      }
    }
    out << '\n';
  }
}

void WriteTable(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot write");
  WriteTable(out, table);
  if (!out) throw DataError(path + ": write failed");
}

}  // namespace betalike
