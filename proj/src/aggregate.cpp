#include "olapcube/aggregate.hpp"

#include <cmath>

namespace olap {

std::string_view agg_fn_name(AggFn fn) {
  switch (fn) {
    case AggFn::kSum: return "sum";
    case AggFn::kCount: return "count";
    case AggFn::kMin: return "min";
    case AggFn::kMax: return "max";
    case AggFn::kMean: return "mean";
  }
  return "sum";
}

std::optional<AggFn> parse_agg_fn(std::string_view name) {
  if (name == "sum") return AggFn::kSum;
  if (name == "count") return AggFn::kCount;
  if (name == "min") return AggFn::kMin;
  if (name == "max") return AggFn::kMax;
  if (name == "mean") return AggFn::kMean;
  return std::nullopt;
}

Result<AggSpec> resolve_agg(const CubeSchema& schema, const std::vector<AggRequest>& requests) {
  AggSpec spec;
  std::vector<bool> covered(schema.measures().size(), false);
  for (const auto& req : requests) {
    auto m = schema.find_measure(req.measure);
    if (!m) return Status(ErrorCode::kSchema, "unknown measure '" + req.measure + "' in aggregation");
    AggColumn col;
    col.measure = *m;
    col.fn = req.fn;
    col.kind = schema.measure(*m).kind;
    col.label = std::string(agg_fn_name(req.fn)) + "(" + req.measure + ")";
    for (const auto& existing : spec) {
      if (existing.label == col.label) {
        return Status(ErrorCode::kSchema, "aggregation '" + col.label + "' requested twice");
      }
    }
    covered[*m] = true;
    spec.push_back(std::move(col));
  }
  for (std::size_t m = 0; m < covered.size(); ++m) {
    if (!covered[m]) {
      return Status(ErrorCode::kSchema, "measure '" + schema.measure(m).name + "' has no aggregation function");
    }
  }
  return spec;
}

AggSpec default_agg(const CubeSchema& schema) {
  AggSpec spec;
  for (std::size_t m = 0; m < schema.measures().size(); ++m) {
    spec.push_back({m, AggFn::kSum, schema.measure(m).kind, "sum(" + schema.measure(m).name + ")"});
  }
  return spec;
}

namespace {

void neumaier_add(double& sum, double& compensation, double x) {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x)) {
    compensation += (sum - t) + x;
  } else {
    compensation += (x - t) + sum;
  }
  sum = t;
}

}  // namespace

bool accumulate_integer(AggregateState& state, AggFn fn, std::int64_t value) {
  switch (fn) {
    case AggFn::kCount:
      break;
    case AggFn::kSum:
    case AggFn::kMean: {
      std::int64_t next = 0;
      if (__builtin_add_overflow(state.exact, value, &next)) return false;
      state.exact = next;
      break;
    }
    case AggFn::kMin:
      if (state.count == 0 || value < state.exact) state.exact = value;
      break;
    case AggFn::kMax:
      if (state.count == 0 || value > state.exact) state.exact = value;
      break;
  }
  ++state.count;
  return true;
}

void accumulate_real(AggregateState& state, AggFn fn, double value) {
  switch (fn) {
    case AggFn::kCount:
      break;
    case AggFn::kSum:
    case AggFn::kMean:
      neumaier_add(state.sum, state.compensation, value);
      break;
    case AggFn::kMin:
      if (state.count == 0 || value < state.sum) state.sum = value;
      break;
    case AggFn::kMax:
      if (state.count == 0 || value > state.sum) state.sum = value;
      break;
  }
  ++state.count;
}

bool merge_state(AggregateState& state, const AggregateState& other, const AggColumn& column) {
  if (other.count == 0) return true;
  if (state.count == 0) {
    state = other;
    return true;
  }
  const bool integer = column.kind == MeasureKind::kInteger;
  switch (column.fn) {
    case AggFn::kCount:
      break;
    case AggFn::kSum:
    case AggFn::kMean:
      if (integer) {
        std::int64_t next = 0;
        if (__builtin_add_overflow(state.exact, other.exact, &next)) return false;
        state.exact = next;
      } else {
        neumaier_add(state.sum, state.compensation, other.sum);
        state.compensation += other.compensation;
      }
      break;
    case AggFn::kMin:
      if (integer) {
        if (other.exact < state.exact) state.exact = other.exact;
      } else if (other.sum < state.sum) {
        state.sum = other.sum;
      }
      break;
    case AggFn::kMax:
      if (integer) {
        if (other.exact > state.exact) state.exact = other.exact;
      } else if (other.sum > state.sum) {
        state.sum = other.sum;
      }
      break;
  }
  std::int64_t count = 0;
  if (__builtin_add_overflow(state.count, other.count, &count)) return false;
  state.count = count;
  return true;
}

Value finalize(const AggregateState& state, const AggColumn& column) {
  const bool integer = column.kind == MeasureKind::kInteger;
  switch (column.fn) {
    case AggFn::kCount:
      return state.count;
    case AggFn::kSum:
      if (integer) return state.exact;
      return state.sum + state.compensation;
    case AggFn::kMin:
    case AggFn::kMax:
      if (integer) return state.exact;
      return state.sum;
    case AggFn::kMean:
      if (integer) {
        // Split into quotient and remainder so sums beyond 2^53 keep their
        // integral part exact.
        const std::int64_t q = state.exact / state.count;
        const std::int64_t r = state.exact % state.count;
        return static_cast<double>(q) + static_cast<double>(r) / static_cast<double>(state.count);
      }
      return (state.sum + state.compensation) / static_cast<double>(state.count);
  }
  return std::int64_t{0};
}

}  // namespace olap
