#include "olapcube/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numeric>
#include <random>

#include "olapcube/cube.hpp"
#include "json_util.hpp"

namespace olap::bench {

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kSeq: return "seq";
    case Mode::kPar: return "par";
    case Mode::kBoth: return "both";
  }
  return "both";
}

Result<Mode> parse_mode(std::string_view name) {
  if (name == "seq") return Mode::kSeq;
  if (name == "par") return Mode::kPar;
  if (name == "both") return Mode::kBoth;
  return Status(ErrorCode::kConfig, "mode must be seq, par or both");
}

Result<ReportFormat> parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  return Status(ErrorCode::kConfig, "format must be json or csv");
}

ExperimentConfig ExperimentConfig::DeskScale() { return {}; }

ExperimentConfig ExperimentConfig::FullScale() {
  ExperimentConfig cfg;
  cfg.iterations = 1000;
  cfg.array_size = 500000;
  return cfg;
}

Status ExperimentConfig::Validate() const {
  if (iterations < 1) return Status(ErrorCode::kConfig, "iterations must be >= 1");
  if (array_size < 1) return Status(ErrorCode::kConfig, "array size must be >= 1");
  if (max_value <= min_value) return Status(ErrorCode::kConfig, "value range [min, max) is empty");
  return parallel.Validate();
}

void summarize(RunStats& stats) {
  const auto& d = stats.durations_ms;
  if (d.empty()) return;
  const double n = static_cast<double>(d.size());
  stats.mean_ms = std::accumulate(d.begin(), d.end(), 0.0) / n;
  std::vector<double> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  stats.median_ms = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  stats.min_ms = sorted.front();
  stats.max_ms = sorted.back();
  double sq = 0.0;
  for (double x : d) sq += (x - stats.mean_ms) * (x - stats.mean_ms);
  stats.stddev_ms = std::sqrt(sq / n);
}

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t range) {
  // Rejects the low (2^64 mod range) draws so every residue is equally likely.
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % range;
}

std::vector<std::int64_t> draw(std::mt19937_64& rng, std::size_t size, std::int64_t min_value,
                               std::int64_t max_value) {
  const auto range = static_cast<std::uint64_t>(max_value) - static_cast<std::uint64_t>(min_value);
  std::vector<std::int64_t> out(size);
  for (auto& v : out) {
    v = static_cast<std::int64_t>(static_cast<std::uint64_t>(min_value) + uniform_below(rng, range));
  }
  return out;
}

std::uint64_t checksum(std::span<const std::int64_t> values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : values) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return h;
}

EnvironmentRecord environment() {
  EnvironmentRecord env;
  env.hardware_threads = ParallelConfig::hardware_workers();
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  env.timestamp = buf;
  return env;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

RunStats make_stats(std::string experiment, std::string mode, const ExperimentConfig& cfg, std::size_t workers,
                    const EnvironmentRecord& env) {
  RunStats s;
  s.experiment = std::move(experiment);
  s.mode = std::move(mode);
  s.iterations = cfg.iterations;
  s.array_size = cfg.array_size;
  s.min_value = cfg.min_value;
  s.max_value = cfg.max_value;
  s.seed = cfg.seed;
  s.workers = workers;
  s.sequential_cutoff = cfg.parallel.sequential_cutoff;
  s.chunk_size = cfg.parallel.chunk_size;
  s.environment = env;
  return s;
}

}  // namespace

std::vector<std::int64_t> generate_values(std::uint64_t seed, std::size_t size, std::int64_t min_value,
                                          std::int64_t max_value) {
  std::mt19937_64 rng(seed);
  return draw(rng, size, min_value, max_value);
}

Result<std::vector<RunStats>> run_sort_experiment(const ExperimentConfig& cfg) {
  OLAP_RETURN_IF_ERROR(cfg.Validate());
  const EnvironmentRecord env = environment();
  const bool run_seq = cfg.mode != Mode::kPar;
  const bool run_par = cfg.mode != Mode::kSeq;
  RunStats seq = make_stats("sort", "seq", cfg, 1, env);
  RunStats par = make_stats("sort", "par", cfg, cfg.parallel.worker_count, env);

  std::mt19937_64 rng(cfg.seed);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    std::vector<std::int64_t> data = draw(rng, cfg.array_size, cfg.min_value, cfg.max_value);
    std::vector<std::int64_t> copy;
    if (run_seq && run_par) {
      copy = data;
      if (checksum(copy) != checksum(data)) {
        return Status(ErrorCode::kDeterminism, "cloned input differs from the original");
      }
    }
    if (run_seq) {
      const auto start = std::chrono::steady_clock::now();
      sort_in_place_seq(data);
      seq.durations_ms.push_back(elapsed_ms(start));
      if (!std::is_sorted(data.begin(), data.end())) {
        return Status(ErrorCode::kDeterminism, "sequential sort produced unsorted output");
      }
    }
    if (run_par) {
      std::vector<std::int64_t>& target = run_seq ? copy : data;
      const auto start = std::chrono::steady_clock::now();
      sort_in_place_par(target, cfg.parallel);
      par.durations_ms.push_back(elapsed_ms(start));
      if (!std::is_sorted(target.begin(), target.end())) {
        return Status(ErrorCode::kDeterminism, "parallel sort produced unsorted output");
      }
      if (run_seq && target != data) {
        return Status(ErrorCode::kDeterminism, "parallel and sequential sorts disagree");
      }
    }
  }

  std::vector<RunStats> out;
  if (run_seq) {
    summarize(seq);
    out.push_back(std::move(seq));
  }
  if (run_par) {
    summarize(par);
    out.push_back(std::move(par));
  }
  return out;
}

Result<std::vector<std::size_t>> parse_dims(std::string_view spec) {
  std::vector<std::size_t> out;
  std::size_t value = 0;
  bool have_digit = false;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    const char c = i < spec.size() ? spec[i] : ',';
    if (c >= '0' && c <= '9') {
      value = value * 10 + static_cast<std::size_t>(c - '0');
      have_digit = true;
      if (value > (1u << 24)) return Status(ErrorCode::kConfig, "dimension cardinality too large");
    } else if (c == 'x' || c == 'X' || c == ',') {
      if (!have_digit || value == 0) return Status(ErrorCode::kConfig, "bad dimension spec '" + std::string(spec) + "'");
      out.push_back(value);
      value = 0;
      have_digit = false;
    } else {
      return Status(ErrorCode::kConfig, "bad dimension spec '" + std::string(spec) + "'");
    }
  }
  return out;
}

namespace {

Result<FactsPtr> synthetic_facts(const SyntheticFactSpec& spec) {
  if (spec.rows == 0) return Status(ErrorCode::kConfig, "synthetic table needs at least one row");
  if (spec.cardinalities.empty()) return Status(ErrorCode::kConfig, "synthetic table needs a dimension");
  std::vector<DimensionSpec> dims;
  for (std::size_t d = 0; d < spec.cardinalities.size(); ++d) {
    LevelSpec level{"member", {}};
    for (std::size_t m = 0; m < spec.cardinalities[d]; ++m) level.members.push_back("m" + std::to_string(m));
    OLAP_ASSIGN_OR_RETURN(DimensionSpec dim, DimensionSpec::Make("d" + std::to_string(d), {std::move(level)}, {}));
    dims.push_back(std::move(dim));
  }
  OLAP_ASSIGN_OR_RETURN(CubeSchema schema,
                        CubeSchema::Make(std::move(dims), {MeasureSpec{"sales", MeasureKind::kInteger}}));
  auto schema_ptr = std::make_shared<const CubeSchema>(std::move(schema));

  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<MemberId>> members(spec.cardinalities.size(), std::vector<MemberId>(spec.rows));
  IntegerColumn sales(spec.rows);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t d = 0; d < spec.cardinalities.size(); ++d) {
      members[d][r] = static_cast<MemberId>(uniform_below(rng, spec.cardinalities[d]));
    }
    sales[r] = static_cast<std::int64_t>(uniform_below(rng, 1000));
  }
  std::vector<MeasureColumn> measures;
  measures.emplace_back(std::move(sales));
  OLAP_ASSIGN_OR_RETURN(FactTable facts, FactTable::FromMembers(schema_ptr, std::move(members), std::move(measures)));
  return std::make_shared<const FactTable>(std::move(facts));
}

}  // namespace

Result<std::vector<RunStats>> run_aggregate_experiment(const AggExperimentConfig& cfg) {
  if (cfg.iterations < 1) return Status(ErrorCode::kConfig, "iterations must be >= 1");
  OLAP_RETURN_IF_ERROR(cfg.parallel.Validate());
  OLAP_ASSIGN_OR_RETURN(FactsPtr facts, synthetic_facts(cfg.facts));
  const AggSpec agg = default_agg(facts->schema());

  ParallelConfig seq_cfg = cfg.parallel;
  seq_cfg.worker_count = 1;

  ExperimentConfig echo;
  echo.iterations = cfg.iterations;
  echo.array_size = cfg.facts.rows;
  echo.min_value = 0;
  echo.max_value = 1000;
  echo.seed = cfg.facts.seed;
  echo.parallel = cfg.parallel;
  const EnvironmentRecord env = environment();
  RunStats seq = make_stats("agg", "seq", echo, 1, env);
  RunStats par = make_stats("agg", "par", echo, cfg.parallel.worker_count, env);

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    auto start = std::chrono::steady_clock::now();
    OLAP_ASSIGN_OR_RETURN(Cube a, build_cube(facts, agg, seq_cfg));
    seq.durations_ms.push_back(elapsed_ms(start));
    start = std::chrono::steady_clock::now();
    OLAP_ASSIGN_OR_RETURN(Cube b, build_cube(facts, agg, cfg.parallel));
    par.durations_ms.push_back(elapsed_ms(start));
    if (a.cells() != b.cells()) {
      return Status(ErrorCode::kDeterminism, "sequential and parallel aggregation disagree");
    }
  }
  summarize(seq);
  summarize(par);
  return std::vector<RunStats>{std::move(seq), std::move(par)};
}

namespace {

using json_util::json;

json to_json(const RunStats& s) {
  return {{"experiment", s.experiment},
          {"mode", s.mode},
          {"durations_ms", s.durations_ms},
          {"mean_ms", s.mean_ms},
          {"median_ms", s.median_ms},
          {"min_ms", s.min_ms},
          {"max_ms", s.max_ms},
          {"stddev_ms", s.stddev_ms},
          {"config",
           {{"iterations", s.iterations},
            {"array_size", s.array_size},
            {"min_value", s.min_value},
            {"max_value", s.max_value},
            {"seed", s.seed},
            {"workers", s.workers},
            {"sequential_cutoff", s.sequential_cutoff},
            {"chunk_size", s.chunk_size},
            {"generator", s.generator}}},
          {"environment", {{"hardware_threads", s.environment.hardware_threads}, {"timestamp", s.environment.timestamp}}}};
}

template <typename T>
bool read(const json& obj, const char* key, T& out) {
  const json* v = json_util::find(obj, key);
  if (v == nullptr) return false;
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v->is_string()) return false;
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v->is_number()) return false;
  } else {
    if (!v->is_number_integer()) return false;
  }
  out = v->get<T>();
  return true;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

Result<std::string> emit_report(const std::vector<RunStats>& stats, ReportFormat format) {
  if (stats.empty()) return Status(ErrorCode::kReport, "no run statistics to report");
  if (format == ReportFormat::kJson) {
    json runs = json::array();
    for (const auto& s : stats) runs.push_back(to_json(s));
    json doc = {{"runs", std::move(runs)}};
    return doc.dump(2) + "\n";
  }
  std::string out = "experiment,mode,iterations,array_size,workers,mean_ms,median_ms,min_ms,max_ms,stddev_ms\n";
  for (const auto& s : stats) {
    out += s.experiment + "," + s.mode + "," + std::to_string(s.iterations) + "," + std::to_string(s.array_size) +
           "," + std::to_string(s.workers) + "," + fixed(s.mean_ms) + "," + fixed(s.median_ms) + "," +
           fixed(s.min_ms) + "," + fixed(s.max_ms) + "," + fixed(s.stddev_ms) + "\n";
  }
  return out;
}

Result<std::vector<RunStats>> parse_json_report(std::string_view text) {
  OLAP_ASSIGN_OR_RETURN(json doc, json_util::parse(text, "report"));
  const json* runs = json_util::find(doc, "runs");
  if (runs == nullptr || !runs->is_array()) return Status(ErrorCode::kReport, "report has no 'runs' array");
  std::vector<RunStats> out;
  for (const auto& r : *runs) {
    RunStats s;
    const json* durations = json_util::find(r, "durations_ms");
    const json* config = json_util::find(r, "config");
    const json* env = json_util::find(r, "environment");
    if (durations == nullptr || !durations->is_array() || config == nullptr || env == nullptr) {
      return Status(ErrorCode::kReport, "malformed run entry");
    }
    for (const auto& d : *durations) {
      if (!d.is_number()) return Status(ErrorCode::kReport, "non-numeric duration");
      s.durations_ms.push_back(d.get<double>());
    }
    const bool ok = read(r, "experiment", s.experiment) && read(r, "mode", s.mode) && read(r, "mean_ms", s.mean_ms) &&
                    read(r, "median_ms", s.median_ms) && read(r, "min_ms", s.min_ms) &&
                    read(r, "max_ms", s.max_ms) && read(r, "stddev_ms", s.stddev_ms) &&
                    read(*config, "iterations", s.iterations) && read(*config, "array_size", s.array_size) &&
                    read(*config, "min_value", s.min_value) && read(*config, "max_value", s.max_value) &&
                    read(*config, "seed", s.seed) && read(*config, "workers", s.workers) &&
                    read(*config, "sequential_cutoff", s.sequential_cutoff) &&
                    read(*config, "chunk_size", s.chunk_size) && read(*config, "generator", s.generator) &&
                    read(*env, "hardware_threads", s.environment.hardware_threads) &&
                    read(*env, "timestamp", s.environment.timestamp);
    if (!ok) return Status(ErrorCode::kReport, "malformed run entry");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace olap::bench
