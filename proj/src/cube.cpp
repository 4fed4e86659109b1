#include "olapcube/cube.hpp"

namespace olap {

std::vector<std::size_t> Cube::present_dimensions() const {
  std::vector<std::size_t> dims;
  for (std::size_t d = 0; d < levels_.size(); ++d) {
    if (levels_[d]) dims.push_back(d);
  }
  return dims;
}

std::vector<Value> Cube::finalized(const CellStates& states) const {
  std::vector<Value> out;
  out.reserve(states.size());
  for (std::size_t c = 0; c < states.size(); ++c) out.push_back(finalize(states[c], agg_[c]));
  return out;
}

Result<Cube> build_cube(FactsPtr facts, const AggSpec& agg, const ParallelConfig& cfg) {
  if (facts == nullptr) return Status(ErrorCode::kPrecondition, "no fact table");
  if (!facts->validated()) {
    return Status(ErrorCode::kPrecondition, "fact table has not passed validation");
  }
  const CubeSchema& schema = facts->schema();
  std::vector<bool> covered(schema.measures().size(), false);
  for (const auto& col : agg) {
    if (col.measure >= covered.size()) return Status(ErrorCode::kSchema, "aggregation names an unknown measure");
    covered[col.measure] = true;
  }
  for (std::size_t m = 0; m < covered.size(); ++m) {
    if (!covered[m]) {
      return Status(ErrorCode::kSchema, "measure '" + schema.measure(m).name + "' has no aggregation function");
    }
  }
  LevelAssignment levels(schema.dimensions().size(), std::size_t{0});
  OLAP_ASSIGN_OR_RETURN(AggregateResult result, parallel_group_aggregate(*facts, levels, {}, agg, cfg));
  SchemaPtr schema_ptr = facts->schema_ptr();
  return Cube(std::move(schema_ptr), std::move(facts), std::move(levels), {}, agg, cfg, std::move(result.cells));
}

Result<Cube> build_cube(FactsPtr facts, const std::vector<AggRequest>& agg, const ParallelConfig& cfg) {
  if (facts == nullptr) return Status(ErrorCode::kPrecondition, "no fact table");
  OLAP_ASSIGN_OR_RETURN(AggSpec spec, resolve_agg(facts->schema(), agg));
  return build_cube(std::move(facts), spec, cfg);
}

Result<std::optional<std::vector<Value>>> cell(const Cube& cube, const std::vector<std::string>& coordinate) {
  const auto dims = cube.present_dimensions();
  if (coordinate.size() != dims.size()) {
    return Status(ErrorCode::kCoordinate, "coordinate has " + std::to_string(coordinate.size()) +
                                              " components; cube has " + std::to_string(dims.size()) +
                                              " dimensions");
  }
  Coordinate key;
  key.reserve(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const DimensionSpec& dim = cube.schema().dimension(dims[k]);
    const std::size_t level = *cube.levels()[dims[k]];
    auto id = dim.find_member(level, coordinate[k]);
    if (!id) {
      return Status(ErrorCode::kCoordinate, "'" + coordinate[k] + "' is not a member of level '" +
                                                dim.level(level).name + "' of dimension '" + dim.name() + "'");
    }
    key.push_back(*id);
  }
  auto it = cube.cells().find(key);
  if (it == cube.cells().end()) return std::optional<std::vector<Value>>{};
  return std::optional<std::vector<Value>>(cube.finalized(it->second));
}

}  // namespace olap
