#include "olapcube/query.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace olap {

namespace {

using json_util::json;

Status query_error(std::string message) { return Status(ErrorCode::kQuery, std::move(message)); }

Result<std::vector<std::string>> string_list(const json& op, std::string_view key, bool required) {
  std::vector<std::string> out;
  const json* v = json_util::find(op, key);
  if (v == nullptr) {
    if (required) return query_error("operation needs '" + std::string(key) + "'");
    return out;
  }
  if (!v->is_array()) return query_error("'" + std::string(key) + "' must be an array of strings");
  for (const auto& item : *v) {
    if (!item.is_string()) return query_error("'" + std::string(key) + "' must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Result<Operation> parse_operation(const json& doc) {
  if (!doc.is_object()) return query_error("each operation must be an object");
  OLAP_ASSIGN_OR_RETURN(std::string name, json_util::get_string(doc, "op", ErrorCode::kQuery, "operation"));
  Operation op;
  if (name == "rollup" || name == "drilldown") {
    op.kind = name == "rollup" ? Operation::Kind::kRollUp : Operation::Kind::kDrillDown;
    OLAP_ASSIGN_OR_RETURN(op.dimension, json_util::get_string(doc, "dimension", ErrorCode::kQuery, name));
    OLAP_ASSIGN_OR_RETURN(op.level, json_util::get_string(doc, "level", ErrorCode::kQuery, name));
  } else if (name == "slice") {
    op.kind = Operation::Kind::kSlice;
    OLAP_ASSIGN_OR_RETURN(op.dimension, json_util::get_string(doc, "dimension", ErrorCode::kQuery, name));
    OLAP_ASSIGN_OR_RETURN(op.member, json_util::get_string(doc, "member", ErrorCode::kQuery, name));
  } else if (name == "dice") {
    op.kind = Operation::Kind::kDice;
    const json* filter = json_util::find(doc, "filter");
    if (filter == nullptr || !filter->is_object()) return query_error("dice needs a 'filter' object");
    for (const auto& [dim, members] : filter->items()) {
      if (!members.is_array()) return query_error("dice filter for '" + dim + "' must be an array");
      std::vector<std::string> list;
      for (const auto& m : members) {
        if (!m.is_string()) return query_error("dice filter for '" + dim + "' must list member strings");
        list.push_back(m.get<std::string>());
      }
      op.filter.emplace(dim, std::move(list));
    }
  } else if (name == "view" || name == "pivot") {
    op.kind = name == "view" ? Operation::Kind::kView : Operation::Kind::kPivot;
    OLAP_ASSIGN_OR_RETURN(op.rows, string_list(doc, "rows", true));
    OLAP_ASSIGN_OR_RETURN(op.cols, string_list(doc, "cols", true));
  } else {
    return query_error("unknown operation '" + name + "'");
  }
  return op;
}

Result<std::vector<AggRequest>> parse_aggregate(const json& doc) {
  if (!doc.is_object()) return query_error("'aggregate' must map measure names to functions");
  std::vector<AggRequest> out;
  auto add = [&out](const std::string& measure, const json& fn) -> Status {
    if (!fn.is_string()) return query_error("aggregation function for '" + measure + "' must be a string");
    auto parsed = parse_agg_fn(fn.get<std::string>());
    if (!parsed) return query_error("unknown aggregation function '" + fn.get<std::string>() + "'");
    out.push_back({measure, *parsed});
    return Status::OK();
  };
  for (const auto& [measure, fns] : doc.items()) {
    if (fns.is_array()) {
      if (fns.empty()) return query_error("empty function list for '" + measure + "'");
      for (const auto& fn : fns) OLAP_RETURN_IF_ERROR(add(measure, fn));
    } else {
      OLAP_RETURN_IF_ERROR(add(measure, fns));
    }
  }
  return out;
}

Result<std::vector<std::size_t>> dims_of(const CubeSchema& schema, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto d = schema.find_dimension(n);
    if (!d) return Status(ErrorCode::kAxis, "unknown dimension '" + n + "' in axes");
    out.push_back(*d);
  }
  return out;
}

// Keeps a chosen arrangement valid after the cube's dimensionality changed:
// rolled-away dimensions leave their axis, re-attached ones join the rows.
void reconcile_axes(QueryState& state) {
  if (!state.rows) return;
  const auto present = state.cube->present_dimensions();
  auto is_present = [&present](std::size_t d) {
    return std::find(present.begin(), present.end(), d) != present.end();
  };
  std::erase_if(*state.rows, [&](std::size_t d) { return !is_present(d); });
  std::erase_if(*state.cols, [&](std::size_t d) { return !is_present(d); });
  for (std::size_t d : present) {
    const bool placed = std::find(state.rows->begin(), state.rows->end(), d) != state.rows->end() ||
                        std::find(state.cols->begin(), state.cols->end(), d) != state.cols->end();
    if (!placed) state.rows->push_back(d);
  }
}

json member_tuple(const CubeSchema& schema, const CubeView& view, const std::vector<std::size_t>& axes,
                  const Coordinate& header) {
  json tuple = json::array();
  const auto& levels = view.cube()->levels();
  for (std::size_t k = 0; k < axes.size(); ++k) {
    tuple.push_back(schema.dimension(axes[k]).member_name(*levels[axes[k]], header[k]));
  }
  return tuple;
}

json value_json(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return json(*i);
  return json(std::get<double>(v));
}

}  // namespace

Result<QueryDocument> parse_query(std::string_view json_text) {
  OLAP_ASSIGN_OR_RETURN(json doc, json_util::parse(json_text, "query document"));
  QueryDocument query;
  const json* ops = nullptr;
  if (doc.is_array()) {
    ops = &doc;
  } else if (doc.is_object()) {
    ops = json_util::find(doc, "operations");
    if (ops == nullptr) return query_error("query document needs an 'operations' array");
    if (const json* agg = json_util::find(doc, "aggregate")) {
      OLAP_ASSIGN_OR_RETURN(query.aggregate, parse_aggregate(*agg));
    }
  } else {
    return query_error("query document must be an array or an object");
  }
  if (!ops->is_array()) return query_error("'operations' must be an array");
  for (const auto& op : *ops) {
    OLAP_ASSIGN_OR_RETURN(Operation parsed, parse_operation(op));
    query.operations.push_back(std::move(parsed));
  }
  return query;
}

Result<QueryState> apply_operations(const QueryState& state, const std::vector<Operation>& ops) {
  QueryState next = state;
  for (const auto& op : ops) {
    const Cube& cube = *next.cube;
    switch (op.kind) {
      case Operation::Kind::kRollUp: {
        OLAP_ASSIGN_OR_RETURN(Cube out, roll_up(cube, op.dimension, op.level));
        next.cube = std::make_shared<const Cube>(std::move(out));
        break;
      }
      case Operation::Kind::kDrillDown: {
        OLAP_ASSIGN_OR_RETURN(Cube out, drill_down(cube, op.dimension, op.level));
        next.cube = std::make_shared<const Cube>(std::move(out));
        break;
      }
      case Operation::Kind::kSlice: {
        OLAP_ASSIGN_OR_RETURN(Cube out, slice(cube, op.dimension, op.member));
        next.cube = std::make_shared<const Cube>(std::move(out));
        break;
      }
      case Operation::Kind::kDice: {
        OLAP_ASSIGN_OR_RETURN(Cube out, dice(cube, op.filter));
        next.cube = std::make_shared<const Cube>(std::move(out));
        break;
      }
      case Operation::Kind::kView: {
        OLAP_ASSIGN_OR_RETURN(auto rows, dims_of(cube.schema(), op.rows));
        OLAP_ASSIGN_OR_RETURN(auto cols, dims_of(cube.schema(), op.cols));
        // Materializing checks the partition; the grid itself is rebuilt on demand.
        OLAP_RETURN_IF_ERROR(materialize(next.cube, rows, cols));
        next.rows = std::move(rows);
        next.cols = std::move(cols);
        continue;
      }
      case Operation::Kind::kPivot: {
        OLAP_ASSIGN_OR_RETURN(CubeView view, current_view(next));
        OLAP_ASSIGN_OR_RETURN(CubeView pivoted, pivot(view, op.rows, op.cols));
        next.rows = pivoted.row_axes();
        next.cols = pivoted.col_axes();
        continue;
      }
    }
    reconcile_axes(next);
  }
  return next;
}

Result<CubeView> current_view(const QueryState& state) {
  if (state.rows) return materialize(state.cube, *state.rows, *state.cols);
  return materialize(state.cube, state.cube->present_dimensions(), {});
}

std::string result_document(const CubeView& view) {
  const Cube& cube = *view.cube();
  const CubeSchema& schema = cube.schema();
  json doc = json::object();
  doc["rows"] = view.row_axis_names();
  doc["cols"] = view.col_axis_names();
  json measures = json::array();
  for (const auto& col : cube.agg()) measures.push_back(col.label);
  doc["measures"] = std::move(measures);
  json levels = json::array();
  for (std::size_t d = 0; d < cube.levels().size(); ++d) {
    const auto& level = cube.levels()[d];
    levels.push_back({{"dimension", schema.dimension(d).name()},
                      {"level", level ? json(schema.dimension(d).level(*level).name) : json(nullptr)}});
  }
  doc["levels"] = std::move(levels);
  doc["cells"] = cube.cell_count();

  json row_headers = json::array();
  for (const auto& h : view.row_headers()) row_headers.push_back(member_tuple(schema, view, view.row_axes(), h));
  json col_headers = json::array();
  for (const auto& h : view.col_headers()) col_headers.push_back(member_tuple(schema, view, view.col_axes(), h));
  doc["row_headers"] = std::move(row_headers);
  doc["col_headers"] = std::move(col_headers);

  json values = json::array();
  for (std::size_t r = 0; r < view.row_count(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < view.col_count(); ++c) {
      const auto& cell = view.at(r, c);
      if (!cell) {
        row.push_back(nullptr);
        continue;
      }
      json entry = json::array();
      for (const auto& v : *cell) entry.push_back(value_json(v));
      row.push_back(std::move(entry));
    }
    values.push_back(std::move(row));
  }
  doc["values"] = std::move(values);
  return json_util::dump(doc);
}

std::string error_document(const Status& status) {
  json err = json::object();
  err["code"] = std::string(error_code_name(status.code()));
  err["message"] = status.message();
  if (!status.details().empty()) {
    json details = json::parse(status.details(), nullptr, false);
    if (!details.is_discarded()) err["details"] = std::move(details);
  }
  json doc = json::object();
  doc["error"] = std::move(err);
  return json_util::dump(doc);
}

Result<FactsPtr> open_facts(std::string_view schema_json, std::string_view facts_csv) {
  OLAP_ASSIGN_OR_RETURN(SchemaPtr schema, parse_schema(schema_json));
  OLAP_ASSIGN_OR_RETURN(FactTable facts, load_facts(facts_csv, std::move(schema)));
  ValidationReport report = validate(facts);
  if (!report.ok) {
    return Status(ErrorCode::kValidation,
                  std::to_string(report.orphan_references.size()) + " orphan reference(s), " +
                      std::to_string(report.granularity_violations.size()) + " granularity violation(s)",
                  report.to_json());
  }
  return std::make_shared<const FactTable>(std::move(facts));
}

QueryOutput run_query(const FactsPtr& facts, const QueryDocument& query, const ParallelConfig& cfg) {
  auto evaluate = [&]() -> Result<std::string> {
    AggSpec agg = default_agg(facts->schema());
    if (query.aggregate) {
      OLAP_ASSIGN_OR_RETURN(agg, resolve_agg(facts->schema(), *query.aggregate));
    }
    OLAP_ASSIGN_OR_RETURN(Cube base, build_cube(facts, agg, cfg));
    QueryState state{std::make_shared<const Cube>(std::move(base)), std::nullopt, std::nullopt};
    OLAP_ASSIGN_OR_RETURN(QueryState final_state, apply_operations(state, query.operations));
    OLAP_ASSIGN_OR_RETURN(CubeView view, current_view(final_state));
    return result_document(view);
  };
  auto out = evaluate();
  if (!out.ok()) return {false, error_document(out.status())};
  return {true, std::move(out).value()};
}

QueryOutput run_query(std::string_view schema_json, std::string_view facts_csv, std::string_view query_json,
                      const ParallelConfig& cfg) {
  auto facts = open_facts(schema_json, facts_csv);
  if (!facts.ok()) return {false, error_document(facts.status())};
  auto query = parse_query(query_json);
  if (!query.ok()) return {false, error_document(query.status())};
  return run_query(*facts, *query, cfg);
}

}  // namespace olap
