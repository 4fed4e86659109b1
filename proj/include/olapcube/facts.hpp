#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "olapcube/schema.hpp"
#include "olapcube/status.hpp"

namespace olap {

using IntegerColumn = std::vector<std::int64_t>;
using RealColumn = std::vector<double>;
using MeasureColumn = std::variant<IntegerColumn, RealColumn>;

struct OrphanReference {
  std::size_t row = 0;  // 1-based data row number
  std::string dimension;
  std::string member;
  friend bool operator==(const OrphanReference&, const OrphanReference&) = default;
};

struct GranularityViolation {
  std::string dimension;
  std::string detail;
  friend bool operator==(const GranularityViolation&, const GranularityViolation&) = default;
};

struct ValidationReport {
  std::vector<OrphanReference> orphan_references;
  std::vector<GranularityViolation> granularity_violations;
  bool ok = true;

  std::string to_json() const;
};

// Columnar base-granularity facts. Dimension cells arrive as raw member
// strings and are interned to base-level member ids by validate().
class FactTable {
 public:
  // Raw (unresolved) table, as produced by the CSV loader.
  static Result<FactTable> FromRaw(SchemaPtr schema, std::vector<std::vector<std::string>> dimension_cells,
                                   std::vector<MeasureColumn> measures);
  // Already-interned table (synthetic generators). Ids are range-checked and
  // the table is marked validated.
  static Result<FactTable> FromMembers(SchemaPtr schema, std::vector<std::vector<MemberId>> members,
                                       std::vector<MeasureColumn> measures);

  const CubeSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  std::size_t row_count() const { return rows_; }

  std::span<const std::string> raw_members(std::size_t dim) const {
    return raw_.empty() ? std::span<const std::string>{} : std::span<const std::string>(raw_[dim]);
  }
  // Interned base-level member ids; empty until validated.
  std::span<const MemberId> members(std::size_t dim) const {
    return interned_.empty() ? std::span<const MemberId>{} : std::span<const MemberId>(interned_[dim]);
  }
  const MeasureColumn& measure(std::size_t m) const { return measures_[m]; }

  bool validated() const { return validated_; }

 private:
  friend ValidationReport validate(FactTable& facts);

  SchemaPtr schema_;
  std::size_t rows_ = 0;
  std::vector<std::vector<std::string>> raw_;
  std::vector<std::vector<MemberId>> interned_;
  std::vector<MeasureColumn> measures_;
  bool validated_ = false;
};

// Parses a UTF-8, comma-separated fact file with a header row. Columns not
// named by the schema are ignored.
Result<FactTable> load_facts(std::string_view csv_bytes, SchemaPtr schema);

// Checks every dimension cell against the declared base-level members and, if
// the table is clean, interns the cells. Findings are data, not failures.
ValidationReport validate(FactTable& facts);

}  // namespace olap
