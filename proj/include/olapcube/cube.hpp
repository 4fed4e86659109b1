#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olapcube/aggregate.hpp"
#include "olapcube/facts.hpp"
#include "olapcube/parallel.hpp"
#include "olapcube/status.hpp"

namespace olap {

using FactsPtr = std::shared_ptr<const FactTable>;

// Immutable sparse cube. Cells map a coordinate (one member per retained
// dimension, at that dimension's current level) to one aggregate state per
// AggColumn. Absent cells encode emptiness. The cube keeps its base facts and
// the slice/dice predicates applied so far, so drill-down can re-aggregate.
class Cube {
 public:
  Cube(SchemaPtr schema, FactsPtr facts, LevelAssignment levels, std::vector<MemberFilter> filters, AggSpec agg,
       ParallelConfig cfg, CellMap cells)
      : schema_(std::move(schema)),
        facts_(std::move(facts)),
        levels_(std::move(levels)),
        filters_(std::move(filters)),
        agg_(std::move(agg)),
        cfg_(cfg),
        cells_(std::move(cells)) {}

  const CubeSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }
  // Base facts; null for a detached cube, which cannot drill down.
  const FactsPtr& facts() const { return facts_; }
  const LevelAssignment& levels() const { return levels_; }
  const std::vector<MemberFilter>& filters() const { return filters_; }
  const AggSpec& agg() const { return agg_; }
  const ParallelConfig& config() const { return cfg_; }
  const CellMap& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }

  // Dimensions that are not ABSENT, in schema order.
  std::vector<std::size_t> present_dimensions() const;

  std::vector<Value> finalized(const CellStates& states) const;

  Cube detached() const {
    Cube copy = *this;
    copy.facts_.reset();
    return copy;
  }

  // Same levels and bit-identical cells. Recorded filters are not compared:
  // two cubes with equal content are equal.
  friend bool operator==(const Cube& a, const Cube& b) {
    return a.levels_ == b.levels_ && a.agg_ == b.agg_ && a.cells_ == b.cells_;
  }

 private:
  SchemaPtr schema_;
  FactsPtr facts_;
  LevelAssignment levels_;
  std::vector<MemberFilter> filters_;
  AggSpec agg_;
  ParallelConfig cfg_;
  CellMap cells_;
};

using CubePtr = std::shared_ptr<const Cube>;

// Base-granularity cube over validated facts.
Result<Cube> build_cube(FactsPtr facts, const AggSpec& agg, const ParallelConfig& cfg = ParallelConfig::Default());
Result<Cube> build_cube(FactsPtr facts, const std::vector<AggRequest>& agg,
                        const ParallelConfig& cfg = ParallelConfig::Default());

// Finalized values at a coordinate given as member names (one per retained
// dimension); nullopt when no fact maps there.
Result<std::optional<std::vector<Value>>> cell(const Cube& cube, const std::vector<std::string>& coordinate);

}  // namespace olap
