#include "olapcube/parallel.hpp"

#include <algorithm>
#include <utility>

#include "fork_join.hpp"

namespace olap {

ParallelConfig ParallelConfig::Default() {
  ParallelConfig cfg;
  cfg.worker_count = hardware_workers();
  return cfg;
}

std::size_t ParallelConfig::hardware_workers() {
#if OLAP_HAS_THREADS
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
#else
  return 1;
#endif
}

Status ParallelConfig::Validate() const {
  if (worker_count < 1) return Status(ErrorCode::kConfig, "worker_count must be >= 1");
  if (sequential_cutoff < 1) return Status(ErrorCode::kConfig, "sequential_cutoff must be >= 1");
  if (chunk_size < 1) return Status(ErrorCode::kConfig, "chunk_size must be >= 1");
  return Status::OK();
}

namespace {

constexpr std::size_t kInsertionThreshold = 16;

void insertion_sort(std::span<std::int64_t> s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    const std::int64_t v = s[i];
    std::size_t j = i;
    while (j > 0 && s[j - 1] > v) {
      s[j] = s[j - 1];
      --j;
    }
    s[j] = v;
  }
}

// Hoare partition around the median of first, middle and last. Requires
// s.size() >= 3. Returns p with s[0, p) <= pivot <= s[p, n), 0 < p < n.
std::size_t partition(std::span<std::int64_t> s) {
  const std::size_t n = s.size();
  const std::size_t mid = n / 2;
  if (s[mid] < s[0]) std::swap(s[mid], s[0]);
  if (s[n - 1] < s[0]) std::swap(s[n - 1], s[0]);
  if (s[n - 1] < s[mid]) std::swap(s[n - 1], s[mid]);
  const std::int64_t pivot = s[mid];

  std::ptrdiff_t i = -1;
  auto j = static_cast<std::ptrdiff_t>(n);
  for (;;) {
    do {
      ++i;
    } while (s[i] < pivot);
    do {
      --j;
    } while (s[j] > pivot);
    if (i >= j) return static_cast<std::size_t>(j) + 1;
    std::swap(s[i], s[j]);
  }
}

void sort_seq(std::span<std::int64_t> s) {
  while (s.size() > kInsertionThreshold) {
    const std::size_t p = partition(s);
    // Recurse into the smaller side, loop on the larger: O(log n) stack.
    if (p < s.size() - p) {
      sort_seq(s.first(p));
      s = s.subspan(p);
    } else {
      sort_seq(s.subspan(p));
      s = s.first(p);
    }
  }
  insertion_sort(s);
}

void sort_par(std::span<std::int64_t> s, std::size_t cutoff, detail::ForkJoinPool::TaskGroup& group) {
  while (s.size() > cutoff && s.size() > kInsertionThreshold) {
    const std::size_t p = partition(s);
    auto left = s.first(p);
    group.run([left, cutoff, &group] { sort_par(left, cutoff, group); });
    s = s.subspan(p);
  }
  sort_seq(s);
}

}  // namespace

void sort_in_place_seq(std::span<std::int64_t> values) { sort_seq(values); }

ParallelRunInfo sort_in_place_par(std::span<std::int64_t> values, const ParallelConfig& cfg) {
  ParallelRunInfo info;
  if (cfg.worker_count <= 1 || values.size() <= cfg.sequential_cutoff) {
    sort_seq(values);
    return info;
  }
  detail::ForkJoinPool pool(cfg.worker_count);
  {
    detail::ForkJoinPool::TaskGroup group(pool);
    sort_par(values, std::max<std::size_t>(cfg.sequential_cutoff, 1), group);
    group.wait();
  }
  info.tasks_spawned = pool.tasks_spawned();
  info.workers = pool.workers();
  return info;
}

std::vector<std::int64_t> quicksort_seq(std::span<const std::int64_t> values) {
  std::vector<std::int64_t> out(values.begin(), values.end());
  sort_seq(out);
  return out;
}

SortResult quicksort_par(std::span<const std::int64_t> values, const ParallelConfig& cfg) {
  SortResult result;
  result.values.assign(values.begin(), values.end());
  result.info = sort_in_place_par(result.values, cfg);
  return result;
}

// ---- Grouped aggregation ---------------------------------------------------

std::size_t CoordinateHash::operator()(const Coordinate& c) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ c.size();
  for (MemberId m : c) {
    h ^= m + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

std::string format_coordinate(const CubeSchema& schema, const LevelAssignment& levels, const Coordinate& coord) {
  std::string out = "(";
  std::size_t k = 0;
  for (std::size_t d = 0; d < levels.size() && k < coord.size(); ++d) {
    if (!levels[d]) continue;
    if (k > 0) out += ",";
    out += schema.dimension(d).member_name(*levels[d], coord[k]);
    ++k;
  }
  out += ")";
  return out;
}

Result<CellMap> merge_partials(std::span<const PartialAggregate> partials, const AggSpec& agg,
                               const CoordinateFormatter& format) {
  for (std::size_t i = 0; i < partials.size(); ++i) {
    if (partials[i].partition == i) continue;
    if (i > 0 && partials[i].partition == partials[i - 1].partition) {
      return Status(ErrorCode::kContract, "duplicate partition index " + std::to_string(partials[i].partition));
    }
    return Status(ErrorCode::kContract, "partition indices must be dense and ascending; position " +
                                            std::to_string(i) + " holds " + std::to_string(partials[i].partition));
  }
  CellMap out;
  for (const auto& partial : partials) {
    for (const auto& [coord, states] : partial.cells) {
      auto [it, inserted] = out.try_emplace(coord, states);
      if (inserted) continue;
      for (std::size_t c = 0; c < agg.size(); ++c) {
        if (!merge_state(it->second[c], states[c], agg[c])) {
          return Status(ErrorCode::kOverflow, "64-bit overflow in " + agg[c].label + " at " +
                                                  (format ? format(coord) : std::string("coordinate")));
        }
      }
    }
  }
  return out;
}

namespace {

struct RowPlan {
  // Per retained dimension: the dimension index and its base -> level table.
  std::vector<std::size_t> dims;
  std::vector<const std::vector<MemberId>*> ancestors;
  // Per dimension with filters: base-member admission mask.
  std::vector<std::pair<std::size_t, std::vector<char>>> masks;
};

Status aggregate_partition(const FactTable& facts, const RowPlan& plan, const AggSpec& agg, std::size_t begin,
                           std::size_t end, PartialCells& cells, const CoordinateFormatter& format) {
  std::vector<std::span<const MemberId>> dim_cols;
  for (std::size_t d : plan.dims) dim_cols.push_back(facts.members(d));
  std::vector<std::span<const MemberId>> mask_cols;
  for (const auto& [d, mask] : plan.masks) mask_cols.push_back(facts.members(d));

  Coordinate key(plan.dims.size());
  for (std::size_t row = begin; row < end; ++row) {
    bool admitted = true;
    for (std::size_t f = 0; f < plan.masks.size(); ++f) {
      if (!plan.masks[f].second[mask_cols[f][row]]) {
        admitted = false;
        break;
      }
    }
    if (!admitted) continue;
    for (std::size_t k = 0; k < plan.dims.size(); ++k) key[k] = (*plan.ancestors[k])[dim_cols[k][row]];

    auto it = cells.find(key);
    if (it == cells.end()) it = cells.emplace(key, CellStates(agg.size())).first;
    CellStates& states = it->second;
    for (std::size_t c = 0; c < agg.size(); ++c) {
      const MeasureColumn& col = facts.measure(agg[c].measure);
      if (const auto* ints = std::get_if<IntegerColumn>(&col)) {
        if (!accumulate_integer(states[c], agg[c].fn, (*ints)[row])) {
          return Status(ErrorCode::kOverflow, "64-bit overflow in " + agg[c].label + " at " + format(key));
        }
      } else {
        accumulate_real(states[c], agg[c].fn, std::get<RealColumn>(col)[row]);
      }
    }
  }
  return Status::OK();
}

}  // namespace

Result<AggregateResult> parallel_group_aggregate(const FactTable& facts, const LevelAssignment& levels,
                                                 const std::vector<MemberFilter>& filters, const AggSpec& agg,
                                                 const ParallelConfig& cfg) {
  OLAP_RETURN_IF_ERROR(cfg.Validate());
  if (!facts.validated()) return Status(ErrorCode::kPrecondition, "facts must be validated before aggregation");
  const CubeSchema& schema = facts.schema();
  if (levels.size() != schema.dimensions().size()) {
    return Status(ErrorCode::kContract, "level assignment does not cover every dimension");
  }
  if (agg.empty()) return Status(ErrorCode::kSchema, "no aggregation columns");

  RowPlan plan;
  for (std::size_t d = 0; d < levels.size(); ++d) {
    if (!levels[d]) continue;
    if (*levels[d] >= schema.dimension(d).level_count()) {
      return Status(ErrorCode::kContract, "level index out of range");
    }
    plan.dims.push_back(d);
    plan.ancestors.push_back(&schema.dimension(d).base_ancestors(*levels[d]));
  }
  for (const auto& f : filters) {
    const DimensionSpec& dim = schema.dimension(f.dimension);
    auto slot = std::find_if(plan.masks.begin(), plan.masks.end(), [&](const auto& m) { return m.first == f.dimension; });
    if (slot == plan.masks.end()) {
      plan.masks.emplace_back(f.dimension, std::vector<char>(dim.cardinality(0), 1));
      slot = plan.masks.end() - 1;
    }
    std::vector<char> allowed(dim.cardinality(f.level), 0);
    for (MemberId m : f.members) allowed[m] = 1;
    const auto& anc = dim.base_ancestors(f.level);
    for (std::size_t b = 0; b < anc.size(); ++b) {
      if (!allowed[anc[b]]) slot->second[b] = 0;
    }
  }

  const CoordinateFormatter format = [&](const Coordinate& c) { return format_coordinate(schema, levels, c); };
  const std::size_t rows = facts.row_count();
  const std::size_t chunk = cfg.chunk_size;
  const std::size_t partitions = rows == 0 ? 0 : (rows + chunk - 1) / chunk;

  std::vector<PartialAggregate> partials(partitions);
  std::vector<Status> statuses(partitions);
  auto run_partition = [&](std::size_t p) {
    partials[p].partition = p;
    const std::size_t begin = p * chunk;
    const std::size_t end = std::min(rows, begin + chunk);
    statuses[p] = aggregate_partition(facts, plan, agg, begin, end, partials[p].cells, format);
  };

  AggregateResult result;
  result.info.partitions = partitions;
  const std::size_t workers = std::min(cfg.worker_count, std::max<std::size_t>(partitions, 1));
  if (workers <= 1) {
    for (std::size_t p = 0; p < partitions; ++p) run_partition(p);
  } else {
    detail::ForkJoinPool pool(workers);
    {
      detail::ForkJoinPool::TaskGroup group(pool);
      for (std::size_t p = 0; p < partitions; ++p) group.run([&run_partition, p] { run_partition(p); });
      group.wait();
    }
    result.info.tasks_spawned = pool.tasks_spawned();
    result.info.workers = pool.workers();
  }
  // Lowest failing partition wins so the reported error is deterministic too.
  for (const auto& st : statuses) OLAP_RETURN_IF_ERROR(st);

  OLAP_ASSIGN_OR_RETURN(result.cells, merge_partials(partials, agg, format));
  return result;
}

}  // namespace olap
