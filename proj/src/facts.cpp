#include "olapcube/facts.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "json_util.hpp"

namespace olap {

namespace {

// Splits one CSV record starting at `pos`. Handles RFC 4180 quoting and
// CRLF line endings. Returns false at end of input.
bool next_record(std::string_view text, std::size_t& pos, std::vector<std::string>& fields, bool& malformed) {
  fields.clear();
  malformed = false;
  if (pos >= text.size()) return false;
  std::string field;
  bool in_quotes = false;
  bool quoted_field = false;
  while (pos < text.size()) {
    const char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
          continue;
        }
        in_quotes = false;
        ++pos;
        continue;
      }
      field.push_back(c);
      ++pos;
      continue;
    }
    if (c == '"') {
      if (!field.empty() || quoted_field) malformed = true;
      in_quotes = true;
      quoted_field = true;
      ++pos;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      quoted_field = false;
      ++pos;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      fields.push_back(std::move(field));
      return true;
    } else {
      if (quoted_field) malformed = true;
      field.push_back(c);
      ++pos;
    }
  }
  if (in_quotes) malformed = true;
  fields.push_back(std::move(field));
  return true;
}

bool blank_record(const std::vector<std::string>& fields) { return fields.size() == 1 && fields[0].empty(); }

std::optional<std::int64_t> parse_integer(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::size_t column_length(const MeasureColumn& col) {
  return std::visit([](const auto& c) { return c.size(); }, col);
}

Status check_measures(const CubeSchema& schema, const std::vector<MeasureColumn>& measures, std::size_t rows) {
  if (measures.size() != schema.measures().size()) {
    return Status(ErrorCode::kSchemaMismatch, "measure column count does not match schema");
  }
  for (std::size_t m = 0; m < measures.size(); ++m) {
    const bool is_int = std::holds_alternative<IntegerColumn>(measures[m]);
    if (is_int != (schema.measure(m).kind == MeasureKind::kInteger)) {
      return Status(ErrorCode::kSchemaMismatch, "measure '" + schema.measure(m).name + "' has the wrong kind");
    }
    if (column_length(measures[m]) != rows) {
      return Status(ErrorCode::kSchemaMismatch, "measure '" + schema.measure(m).name + "' has the wrong length");
    }
  }
  return Status::OK();
}

}  // namespace

Result<FactTable> FactTable::FromRaw(SchemaPtr schema, std::vector<std::vector<std::string>> dimension_cells,
                                     std::vector<MeasureColumn> measures) {
  if (dimension_cells.size() != schema->dimensions().size()) {
    return Status(ErrorCode::kSchemaMismatch, "dimension column count does not match schema");
  }
  const std::size_t rows = dimension_cells.front().size();
  for (const auto& col : dimension_cells) {
    if (col.size() != rows) return Status(ErrorCode::kSchemaMismatch, "dimension columns differ in length");
  }
  OLAP_RETURN_IF_ERROR(check_measures(*schema, measures, rows));
  FactTable table;
  table.schema_ = std::move(schema);
  table.rows_ = rows;
  table.raw_ = std::move(dimension_cells);
  table.measures_ = std::move(measures);
  return table;
}

Result<FactTable> FactTable::FromMembers(SchemaPtr schema, std::vector<std::vector<MemberId>> members,
                                         std::vector<MeasureColumn> measures) {
  if (members.size() != schema->dimensions().size()) {
    return Status(ErrorCode::kSchemaMismatch, "dimension column count does not match schema");
  }
  const std::size_t rows = members.front().size();
  for (std::size_t d = 0; d < members.size(); ++d) {
    if (members[d].size() != rows) return Status(ErrorCode::kSchemaMismatch, "dimension columns differ in length");
    const std::size_t card = schema->dimension(d).cardinality(0);
    for (MemberId id : members[d]) {
      if (id >= card) {
        return Status(ErrorCode::kSchemaMismatch,
                      "member id out of range for dimension '" + schema->dimension(d).name() + "'");
      }
    }
  }
  OLAP_RETURN_IF_ERROR(check_measures(*schema, measures, rows));
  FactTable table;
  table.schema_ = std::move(schema);
  table.rows_ = rows;
  table.interned_ = std::move(members);
  table.measures_ = std::move(measures);
  table.validated_ = true;
  return table;
}

Result<FactTable> load_facts(std::string_view csv_bytes, SchemaPtr schema) {
  if (schema == nullptr) return Status(ErrorCode::kSchema, "no schema given");
  if (csv_bytes.size() >= 3 && csv_bytes.substr(0, 3) == "\xEF\xBB\xBF") csv_bytes.remove_prefix(3);

  std::size_t pos = 0;
  std::vector<std::string> header;
  bool malformed = false;
  if (!next_record(csv_bytes, pos, header, malformed) || blank_record(header)) {
    return Status(ErrorCode::kEmptyTable, "fact file is empty");
  }
  if (malformed) return Status(ErrorCode::kParse, "malformed quoting in header row");

  std::map<std::string, std::size_t> column_of;
  for (std::size_t i = 0; i < header.size(); ++i) column_of.emplace(header[i], i);

  const auto& dims = schema->dimensions();
  const auto& measure_specs = schema->measures();
  std::vector<std::size_t> dim_col;
  std::vector<std::size_t> measure_col;
  for (const auto& d : dims) {
    auto it = column_of.find(d.name());
    if (it == column_of.end()) {
      return Status(ErrorCode::kSchemaMismatch, "missing column '" + d.name() + "'");
    }
    dim_col.push_back(it->second);
  }
  for (const auto& m : measure_specs) {
    auto it = column_of.find(m.name);
    if (it == column_of.end()) {
      return Status(ErrorCode::kSchemaMismatch, "missing column '" + m.name + "'");
    }
    measure_col.push_back(it->second);
  }

  std::vector<std::vector<std::string>> cells(dims.size());
  std::vector<MeasureColumn> measures;
  for (const auto& m : measure_specs) {
    if (m.kind == MeasureKind::kInteger) {
      measures.emplace_back(IntegerColumn{});
    } else {
      measures.emplace_back(RealColumn{});
    }
  }

  std::vector<std::string> fields;
  std::size_t row = 0;
  while (next_record(csv_bytes, pos, fields, malformed)) {
    if (blank_record(fields)) continue;
    ++row;
    if (malformed) return Status(ErrorCode::kParse, "row " + std::to_string(row) + ": malformed quoting");
    if (fields.size() != header.size()) {
      return Status(ErrorCode::kParse, "row " + std::to_string(row) + ": expected " +
                                           std::to_string(header.size()) + " fields, found " +
                                           std::to_string(fields.size()));
    }
    for (std::size_t d = 0; d < dims.size(); ++d) cells[d].push_back(fields[dim_col[d]]);
    for (std::size_t m = 0; m < measure_specs.size(); ++m) {
      const std::string& text = fields[measure_col[m]];
      if (auto* ints = std::get_if<IntegerColumn>(&measures[m])) {
        auto v = parse_integer(text);
        if (!v) {
          return Status(ErrorCode::kParse, "row " + std::to_string(row) + " column '" + measure_specs[m].name +
                                               "': cannot parse '" + text + "' as a 64-bit integer");
        }
        ints->push_back(*v);
      } else {
        auto v = parse_real(text);
        if (!v) {
          return Status(ErrorCode::kParse, "row " + std::to_string(row) + " column '" + measure_specs[m].name +
                                               "': cannot parse '" + text + "' as a finite real");
        }
        std::get<RealColumn>(measures[m]).push_back(*v);
      }
    }
  }
  if (row == 0) return Status(ErrorCode::kEmptyTable, "fact file has a header but no data rows");
  return FactTable::FromRaw(std::move(schema), std::move(cells), std::move(measures));
}

ValidationReport validate(FactTable& facts) {
  ValidationReport report;
  const CubeSchema& schema = facts.schema();
  if (facts.raw_.empty()) {
    // Interned at construction.
    report.ok = true;
    return report;
  }

  std::vector<std::vector<MemberId>> interned(schema.dimensions().size());
  for (std::size_t d = 0; d < schema.dimensions().size(); ++d) {
    const DimensionSpec& dim = schema.dimension(d);
    const auto& column = facts.raw_[d];
    auto& ids = interned[d];
    ids.reserve(column.size());
    // member -> (level, first rows) for members declared only at coarser levels
    std::map<std::string, std::pair<std::size_t, std::vector<std::size_t>>> coarse;
    for (std::size_t r = 0; r < column.size(); ++r) {
      const std::string& member = column[r];
      if (auto id = dim.find_member(0, member)) {
        ids.push_back(*id);
        continue;
      }
      ids.push_back(0);
      std::optional<std::size_t> found_level;
      for (std::size_t lvl = 1; lvl < dim.level_count(); ++lvl) {
        if (dim.find_member(lvl, member)) {
          found_level = lvl;
          break;
        }
      }
      if (found_level) {
        auto& entry = coarse[member];
        entry.first = *found_level;
        entry.second.push_back(r + 1);
      } else {
        report.orphan_references.push_back({r + 1, dim.name(), member});
      }
    }
    if (!coarse.empty()) {
      std::string detail;
      for (const auto& [member, where] : coarse) {
        if (!detail.empty()) detail += "; ";
        detail += "member '" + member + "' belongs to coarser level '" + dim.level(where.first).name +
                  "' (base level '" + dim.level(0).name + "') at row";
        detail += where.second.size() > 1 ? "s " : " ";
        for (std::size_t i = 0; i < where.second.size(); ++i) {
          if (i > 0) detail += ", ";
          detail += std::to_string(where.second[i]);
        }
      }
      report.granularity_violations.push_back({dim.name(), std::move(detail)});
    }
  }
  report.ok = report.orphan_references.empty() && report.granularity_violations.empty();
  if (report.ok) {
    facts.interned_ = std::move(interned);
    facts.validated_ = true;
  }
  return report;
}

std::string ValidationReport::to_json() const {
  using json_util::json;
  json doc = json::object();
  doc["ok"] = ok;
  json orphans = json::array();
  for (const auto& o : orphan_references) {
    orphans.push_back({{"row", o.row}, {"dimension", o.dimension}, {"member", o.member}});
  }
  json gran = json::array();
  for (const auto& g : granularity_violations) {
    gran.push_back({{"dimension", g.dimension}, {"detail", g.detail}});
  }
  doc["orphan_references"] = std::move(orphans);
  doc["granularity_violations"] = std::move(gran);
  return json_util::dump(doc);
}

}  // namespace olap
