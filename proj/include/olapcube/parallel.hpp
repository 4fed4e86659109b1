#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "olapcube/aggregate.hpp"
#include "olapcube/facts.hpp"
#include "olapcube/status.hpp"

namespace olap {

struct ParallelConfig {
  std::size_t worker_count = 1;
  std::size_t sequential_cutoff = 2048;  // elements; sorts below this run serially
  std::size_t chunk_size = 65536;        // fact rows per aggregation partition

  // worker_count = detected hardware parallelism (1 when threads are unavailable)
  static ParallelConfig Default();
  static std::size_t hardware_workers();

  Status Validate() const;
};

// Per-call introspection: what the fork-join runtime actually did.
struct ParallelRunInfo {
  std::size_t tasks_spawned = 0;
  std::size_t partitions = 0;
  std::size_t workers = 1;
};

// ---- Sorting ---------------------------------------------------------------

std::vector<std::int64_t> quicksort_seq(std::span<const std::int64_t> values);

struct SortResult {
  std::vector<std::int64_t> values;
  ParallelRunInfo info;
};
SortResult quicksort_par(std::span<const std::int64_t> values, const ParallelConfig& cfg);

// In-place kernels used by the benchmark so timings cover the sort only.
void sort_in_place_seq(std::span<std::int64_t> values);
ParallelRunInfo sort_in_place_par(std::span<std::int64_t> values, const ParallelConfig& cfg);

// ---- Grouped aggregation ---------------------------------------------------

// One member id per retained dimension, in schema dimension order.
using Coordinate = std::vector<MemberId>;
using CellStates = std::vector<AggregateState>;  // one per AggColumn
using CellMap = std::map<Coordinate, CellStates>;

struct CoordinateHash {
  std::size_t operator()(const Coordinate& c) const noexcept;
};
using PartialCells = std::unordered_map<Coordinate, CellStates, CoordinateHash>;

// Level per dimension; nullopt marks a dimension rolled away (ABSENT).
using LevelAssignment = std::vector<std::optional<std::size_t>>;

// Row predicate: the ancestor of the row's member at `level` must be one of
// `members` (sorted, unique).
struct MemberFilter {
  std::size_t dimension = 0;
  std::size_t level = 0;
  std::vector<MemberId> members;

  friend bool operator==(const MemberFilter&, const MemberFilter&) = default;
};

struct PartialAggregate {
  std::size_t partition = 0;
  PartialCells cells;
};

// Renders a coordinate for error messages.
using CoordinateFormatter = std::function<std::string(const Coordinate&)>;

// Merges partials in ascending partition order. Indices must be exactly
// 0..P-1 in order.
Result<CellMap> merge_partials(std::span<const PartialAggregate> partials, const AggSpec& agg,
                               const CoordinateFormatter& format = {});

struct AggregateResult {
  CellMap cells;
  ParallelRunInfo info;
};

// Groups validated facts by the ancestors at `levels`, keeping only rows that
// pass every filter. Rows are cut into ceil(N / chunk_size) contiguous
// partitions aggregated independently and merged in partition order, so the
// result depends on (N, chunk_size) but never on worker_count.
Result<AggregateResult> parallel_group_aggregate(const FactTable& facts, const LevelAssignment& levels,
                                                 const std::vector<MemberFilter>& filters, const AggSpec& agg,
                                                 const ParallelConfig& cfg);

std::string format_coordinate(const CubeSchema& schema, const LevelAssignment& levels, const Coordinate& coord);

}  // namespace olap
