#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "olapcube/schema.hpp"
#include "olapcube/status.hpp"

namespace olap {

enum class AggFn { kSum, kCount, kMin, kMax, kMean };

std::string_view agg_fn_name(AggFn fn);
std::optional<AggFn> parse_agg_fn(std::string_view name);

// Finalized cell value. Integer sums, counts and integer extrema stay exact;
// means and real measures are binary64.
using Value = std::variant<std::int64_t, double>;

// One output column of a cube: an aggregation function over a measure.
struct AggColumn {
  std::size_t measure = 0;
  AggFn fn = AggFn::kSum;
  MeasureKind kind = MeasureKind::kInteger;
  std::string label;  // e.g. "sum(sales)"

  friend bool operator==(const AggColumn&, const AggColumn&) = default;
};

using AggSpec = std::vector<AggColumn>;

// Requested aggregation, by measure name. Several functions per measure are
// allowed; every measure of the schema must be covered.
struct AggRequest {
  std::string measure;
  AggFn fn = AggFn::kSum;
};

Result<AggSpec> resolve_agg(const CubeSchema& schema, const std::vector<AggRequest>& requests);
// sum over every measure
AggSpec default_agg(const CubeSchema& schema);

// Mergeable accumulator for one (cell, AggColumn). The interpretation of the
// fields depends on the column:
//   integer sum/mean: `exact` holds the running sum
//   integer min/max:  `exact` holds the extremum
//   real sum/mean:    `sum` + `compensation` (Neumaier two-term summation)
//   real min/max:     `sum` holds the extremum
// `count` is the number of folded inputs in every case. A state with count 0
// is empty and is never stored in a cube.
struct AggregateState {
  std::int64_t count = 0;
  std::int64_t exact = 0;
  double sum = 0.0;
  double compensation = 0.0;

  friend bool operator==(const AggregateState&, const AggregateState&) = default;
};

// Folds one input value. Returns false on signed 64-bit overflow, leaving the
// state unchanged.
bool accumulate_integer(AggregateState& state, AggFn fn, std::int64_t value);
void accumulate_real(AggregateState& state, AggFn fn, double value);

// Merges `other` into `state` as if its inputs had been folded after the
// inputs already in `state`. Returns false on integer overflow.
bool merge_state(AggregateState& state, const AggregateState& other, const AggColumn& column);

Value finalize(const AggregateState& state, const AggColumn& column);

}  // namespace olap
