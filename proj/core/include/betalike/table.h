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

#ifndef BETALIKE_TABLE_H_
#define BETALIKE_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "betalike/schema.h"

namespace betalike {

// Dense sensitive-value identifier. Identifiers are ordered by ascending
// frequency in the table they were interned from.
using SaId = std::uint32_t;
using RowIndex = std::size_t;

// One microdata row. `qi[k]` holds the k-th QI attribute: the value itself
// for numerical attributes, the pre-order leaf rank for categorical ones.
struct Record {
  std::vector<double> qi;
  SaId sa = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

// The interned SA value set V. Id order is ascending frequency, ties broken
// by the value's pre-order rank in the SA hierarchy.
class SaDomain {
 public:
  SaDomain() = default;
  explicit SaDomain(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(SaId id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(std::string_view label) const;
  // Throws InvalidArgument for unknown labels.
  SaId id(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, SaId> index_;
};

// Overall SA distribution P: exact counts per SaId plus the total.
struct Distribution {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  std::size_t size() const { return counts.size(); }
  double frequency(SaId id) const {
    return static_cast<double>(counts.at(id)) / static_cast<double>(total);
  }
  std::vector<double> frequencies() const;
};

// Immutable validated table.
class Table {
 public:
  // Rows whose SA is given as a label; interns SA ids by ascending frequency.
  struct RawRow {
    std::vector<double> qi;
    std::string sa;
  };

  // Interns the SA domain from the rows. Throws DataError ("row N: ...",
  // 1-based data rows) on any schema violation and on an empty row set.
  static Table FromRaw(Schema schema, const std::vector<RawRow>& rows);
  // Uses a fixed, previously published domain (e.g. for perturbed data).
  static Table FromRaw(Schema schema, SaDomain domain,
                       const std::vector<RawRow>& rows);
  // Rows already expressed in `domain` ids.
  Table(std::shared_ptr<const Schema> schema,
        std::shared_ptr<const SaDomain> domain, std::vector<Record> rows);

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }
  const SaDomain& domain() const { return *domain_; }
  const std::shared_ptr<const SaDomain>& domain_ptr() const { return domain_; }
  const std::vector<Record>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  const Record& row(RowIndex i) const { return rows_.at(i); }

  // Per-id SA counts (zero entries possible for fixed-domain tables).
  std::vector<std::int64_t> SaCounts() const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::shared_ptr<const SaDomain> domain_;
  std::vector<Record> rows_;
};

// P = (N_i / |rows|). Throws InvalidArgument when some domain value has zero
// count (only possible for fixed-domain tables).
Distribution SaDistribution(const Table& table);

// Comma-separated text with a header naming schema attributes; extra columns
// are ignored. Fields may be double-quoted.
Table LoadTable(const std::string& path, const Schema& schema);
Table LoadTable(const std::string& path, const Schema& schema,
                const SaDomain& fixed_domain);
Table ReadTable(std::istream& in, const Schema& schema,
                const std::string& source_name = "<stream>");
Table ReadTable(std::istream& in, const Schema& schema,
                const SaDomain& fixed_domain,
                const std::string& source_name = "<stream>");

// Writes the schema's columns in schema order. Numerical values are printed
// with round-trip precision, categorical values as leaf labels.
void WriteTable(std::ostream& out, const Table& table);
void WriteTable(const std::string& path, const Table& table);

// Decimal text for a numeric value that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace betalike

#endif  // BETALIKE_TABLE_H_
