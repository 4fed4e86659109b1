#include "olapcube/ops.hpp"

#include <algorithm>

namespace olap {

namespace {

Result<std::size_t> find_dimension(const Cube& cube, std::string_view name, ErrorCode code) {
  auto d = cube.schema().find_dimension(name);
  if (!d) return Status(code, "unknown dimension '" + std::string(name) + "'");
  return *d;
}

// Position of dimension `d` inside a coordinate of `cube`.
std::size_t component_of(const LevelAssignment& levels, std::size_t d) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (levels[i]) ++k;
  }
  return k;
}

std::string level_label(const DimensionSpec& dim, const std::optional<std::size_t>& level) {
  return level ? "'" + dim.level(*level).name + "'" : std::string("ALL");
}

}  // namespace

Result<Cube> roll_up(const Cube& cube, std::string_view dimension, std::string_view target) {
  OLAP_ASSIGN_OR_RETURN(std::size_t d, find_dimension(cube, dimension, ErrorCode::kSchema));
  const DimensionSpec& dim = cube.schema().dimension(d);
  const auto& current = cube.levels()[d];

  std::optional<std::size_t> to;
  if (target != kAllLevel) {
    to = dim.find_level(target);
    if (!to) {
      return Status(ErrorCode::kSchema, "dimension '" + dim.name() + "' has no level '" + std::string(target) + "'");
    }
  }
  const bool coarser = current && (!to || *to > *current);
  if (!coarser) {
    return Status(ErrorCode::kLevelOrder, "roll-up target " + (to ? "'" + std::string(target) + "'" : "ALL") +
                                              " is not coarser than the current level " + level_label(dim, current) +
                                              " of '" + dim.name() + "'");
  }

  LevelAssignment levels = cube.levels();
  levels[d] = to;
  const std::size_t k = component_of(cube.levels(), d);
  const AggSpec& agg = cube.agg();

  CellMap cells;
  Coordinate key;
  for (const auto& [coord, states] : cube.cells()) {
    key = coord;
    if (to) {
      key[k] = dim.ancestor(*current, *to, coord[k]);
    } else {
      key.erase(key.begin() + static_cast<std::ptrdiff_t>(k));
    }
    auto [it, inserted] = cells.try_emplace(key, states);
    if (inserted) continue;
    for (std::size_t c = 0; c < agg.size(); ++c) {
      if (!merge_state(it->second[c], states[c], agg[c])) {
        return Status(ErrorCode::kOverflow, "64-bit overflow in " + agg[c].label + " at " +
                                                format_coordinate(cube.schema(), levels, key));
      }
    }
  }
  return Cube(cube.schema_ptr(), cube.facts(), std::move(levels), cube.filters(), agg, cube.config(),
              std::move(cells));
}

Result<Cube> drill_down(const Cube& cube, std::string_view dimension, std::string_view target) {
  OLAP_ASSIGN_OR_RETURN(std::size_t d, find_dimension(cube, dimension, ErrorCode::kSchema));
  const DimensionSpec& dim = cube.schema().dimension(d);
  const auto& current = cube.levels()[d];
  if (target == kAllLevel) {
    return Status(ErrorCode::kLevelOrder, "drill-down target ALL is never finer than the current level");
  }
  auto to = dim.find_level(target);
  if (!to) {
    return Status(ErrorCode::kSchema, "dimension '" + dim.name() + "' has no level '" + std::string(target) + "'");
  }
  const std::size_t current_rank = current ? *current : dim.level_count();
  if (*to >= current_rank) {
    return Status(ErrorCode::kLevelOrder, "drill-down target '" + std::string(target) +
                                              "' is not finer than the current level " + level_label(dim, current) +
                                              " of '" + dim.name() + "'");
  }
  if (cube.facts() == nullptr) {
    return Status(ErrorCode::kUnsupportedDrill, "cube holds no base facts to drill into");
  }

  LevelAssignment levels = cube.levels();
  levels[d] = *to;
  OLAP_ASSIGN_OR_RETURN(AggregateResult result, parallel_group_aggregate(*cube.facts(), levels, cube.filters(),
                                                                         cube.agg(), cube.config()));
  return Cube(cube.schema_ptr(), cube.facts(), std::move(levels), cube.filters(), cube.agg(), cube.config(),
              std::move(result.cells));
}

Result<Cube> slice(const Cube& cube, std::string_view dimension, std::string_view member) {
  OLAP_ASSIGN_OR_RETURN(std::size_t d, find_dimension(cube, dimension, ErrorCode::kSchema));
  const DimensionSpec& dim = cube.schema().dimension(d);
  const auto& current = cube.levels()[d];
  if (!current) {
    return Status(ErrorCode::kCoordinate, "dimension '" + dim.name() + "' has been rolled away; nothing to slice");
  }
  auto id = dim.find_member(*current, member);
  if (!id) {
    return Status(ErrorCode::kCoordinate, "'" + std::string(member) + "' is not a member of level '" +
                                              dim.level(*current).name + "' of dimension '" + dim.name() + "'");
  }

  const std::size_t k = component_of(cube.levels(), d);
  CellMap cells;
  for (const auto& [coord, states] : cube.cells()) {
    if (coord[k] != *id) continue;
    Coordinate key = coord;
    key.erase(key.begin() + static_cast<std::ptrdiff_t>(k));
    cells.emplace(std::move(key), states);
  }
  LevelAssignment levels = cube.levels();
  levels[d].reset();
  auto filters = cube.filters();
  filters.push_back({d, *current, {*id}});
  return Cube(cube.schema_ptr(), cube.facts(), std::move(levels), std::move(filters), cube.agg(), cube.config(),
              std::move(cells));
}

Result<Cube> dice(const Cube& cube, const DiceFilter& filter) {
  struct Resolved {
    std::size_t component;
    std::vector<char> allowed;
  };
  std::vector<Resolved> checks;
  auto filters = cube.filters();
  for (const auto& [name, members] : filter) {
    auto d = cube.schema().find_dimension(name);
    if (!d) return Status(ErrorCode::kFilter, "unknown dimension '" + name + "' in dice filter");
    const DimensionSpec& dim = cube.schema().dimension(*d);
    const auto& current = cube.levels()[*d];
    if (!current) return Status(ErrorCode::kFilter, "dimension '" + name + "' has been rolled away");
    if (members.empty()) return Status(ErrorCode::kFilter, "empty member set for dimension '" + name + "'");
    Resolved r{component_of(cube.levels(), *d), std::vector<char>(dim.cardinality(*current), 0)};
    MemberFilter recorded{*d, *current, {}};
    for (const auto& m : members) {
      auto id = dim.find_member(*current, m);
      if (!id) {
        return Status(ErrorCode::kFilter, "'" + m + "' is not a member of level '" + dim.level(*current).name +
                                              "' of dimension '" + name + "'");
      }
      r.allowed[*id] = 1;
      recorded.members.push_back(*id);
    }
    std::sort(recorded.members.begin(), recorded.members.end());
    recorded.members.erase(std::unique(recorded.members.begin(), recorded.members.end()), recorded.members.end());
    filters.push_back(std::move(recorded));
    checks.push_back(std::move(r));
  }

  CellMap cells;
  for (const auto& [coord, states] : cube.cells()) {
    const bool keep = std::all_of(checks.begin(), checks.end(),
                                  [&coord](const Resolved& r) { return r.allowed[coord[r.component]] != 0; });
    if (keep) cells.emplace_hint(cells.end(), coord, states);
  }
  return Cube(cube.schema_ptr(), cube.facts(), cube.levels(), std::move(filters), cube.agg(), cube.config(),
              std::move(cells));
}

}  // namespace olap
