#pragma once

// Query and result documents shared by the `cube query` CLI, the embedding
// bridge and the Python module. Output bytes are a pure function of
// (schema, facts, query), independent of worker count.
//
// Query document: either a bare operation array or
//   {"aggregate": {"sales": "sum" | ["sum", "mean", ...]},
//    "operations": [
//      {"op": "rollup",    "dimension": "geo", "level": "country" | "ALL"},
//      {"op": "drilldown", "dimension": "geo", "level": "city"},
//      {"op": "slice",     "dimension": "quarter", "member": "Q1"},
//      {"op": "dice",      "filter": {"product": ["A", "B"]}},
//      {"op": "view",      "rows": ["geo"], "cols": ["quarter"]},
//      {"op": "pivot",     "rows": ["quarter"], "cols": ["geo"]}]}
//
// Result document:
//   {"cells": N, "cols": [...], "col_headers": [[...]], "levels": [...],
//    "measures": ["sum(sales)"], "rows": [...], "row_headers": [[...]],
//    "values": [[[v, ...] | null, ...], ...]}
//
// Error document: {"error": {"code": "...", "message": "...", "details": {...}}}

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olapcube/cube.hpp"
#include "olapcube/ops.hpp"
#include "olapcube/view.hpp"

namespace olap {

struct Operation {
  enum class Kind { kRollUp, kDrillDown, kSlice, kDice, kView, kPivot };
  Kind kind = Kind::kView;
  std::string dimension;
  std::string level;
  std::string member;
  DiceFilter filter;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
};

struct QueryDocument {
  std::optional<std::vector<AggRequest>> aggregate;
  std::vector<Operation> operations;
};

Result<QueryDocument> parse_query(std::string_view json_text);

// A cube plus the arrangement chosen by view/pivot operations so far.
struct QueryState {
  CubePtr cube;
  std::optional<std::vector<std::size_t>> rows;
  std::optional<std::vector<std::size_t>> cols;
};

// Applies operations in order. The input state is untouched, so a failure
// leaves the caller's state as it was.
Result<QueryState> apply_operations(const QueryState& state, const std::vector<Operation>& ops);

// The state's arrangement, or rows = all retained dimensions, cols = [] when
// no view was requested.
Result<CubeView> current_view(const QueryState& state);

std::string result_document(const CubeView& view);
std::string error_document(const Status& status);

// Schema parse + CSV load + validation. Validation findings become a
// kValidation status whose details carry the report.
Result<FactsPtr> open_facts(std::string_view schema_json, std::string_view facts_csv);

// One-shot evaluation against the base cube. Always yields a document; `ok`
// tells whether it is a result or an error document.
struct QueryOutput {
  bool ok = false;
  std::string document;
};
QueryOutput run_query(std::string_view schema_json, std::string_view facts_csv, std::string_view query_json,
                      const ParallelConfig& cfg = ParallelConfig::Default());
QueryOutput run_query(const FactsPtr& facts, const QueryDocument& query,
                      const ParallelConfig& cfg = ParallelConfig::Default());

}  // namespace olap
