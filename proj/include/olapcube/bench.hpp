#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "olapcube/parallel.hpp"
#include "olapcube/status.hpp"

namespace olap::bench {

// Name of the pinned generator recorded in every report.
inline constexpr std::string_view kGeneratorName = "mt19937_64+rejection";

enum class Mode { kSeq, kPar, kBoth };

std::string_view mode_name(Mode mode);
Result<Mode> parse_mode(std::string_view name);

struct ExperimentConfig {
  std::size_t iterations = 50;
  std::size_t array_size = 100000;
  std::int64_t min_value = 0;       // inclusive
  std::int64_t max_value = 100000;  // exclusive
  std::uint64_t seed = 42;
  Mode mode = Mode::kBoth;
  ParallelConfig parallel = ParallelConfig::Default();

  static ExperimentConfig DeskScale();
  static ExperimentConfig FullScale();

  Status Validate() const;
};

struct EnvironmentRecord {
  std::size_t hardware_threads = 1;
  std::string timestamp;  // UTC, ISO 8601

  friend bool operator==(const EnvironmentRecord&, const EnvironmentRecord&) = default;
};

struct RunStats {
  std::string experiment;  // "sort" or "agg"
  std::string mode;        // "seq" or "par"
  std::vector<double> durations_ms;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double stddev_ms = 0.0;  // population standard deviation
  // Configuration echo.
  std::size_t iterations = 0;
  std::size_t array_size = 0;
  std::int64_t min_value = 0;
  std::int64_t max_value = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t sequential_cutoff = 0;
  std::size_t chunk_size = 0;
  std::string generator = std::string(kGeneratorName);
  EnvironmentRecord environment;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

// Fills mean/median/min/max/stddev from durations_ms.
void summarize(RunStats& stats);

// Deterministic generator: size values uniform in [min_value, max_value).
std::vector<std::int64_t> generate_values(std::uint64_t seed, std::size_t size, std::int64_t min_value,
                                          std::int64_t max_value);

// Per iteration, generate a fresh array; for kBoth clone it and time both
// sorts on identical copies. Only the sort call is timed. Outputs are checked
// for sortedness (and equality in kBoth); a mismatch is a kDeterminism error.
Result<std::vector<RunStats>> run_sort_experiment(const ExperimentConfig& cfg);

struct SyntheticFactSpec {
  std::size_t rows = 1000000;
  std::vector<std::size_t> cardinalities = {100, 10, 4};
  std::uint64_t seed = 42;
};

Result<std::vector<std::size_t>> parse_dims(std::string_view spec);  // "100x10x4" or "100,10,4"

struct AggExperimentConfig {
  SyntheticFactSpec facts;
  std::size_t iterations = 5;
  ParallelConfig parallel = ParallelConfig::Default();
};

// Builds one synthetic table, then times build_cube (sum of an integer
// measure) sequentially and in parallel each iteration. The two cell maps
// must be equal before any timing is reported.
Result<std::vector<RunStats>> run_aggregate_experiment(const AggExperimentConfig& cfg);

enum class ReportFormat { kJson, kCsv };
Result<ReportFormat> parse_format(std::string_view name);

Result<std::string> emit_report(const std::vector<RunStats>& stats, ReportFormat format);
Result<std::vector<RunStats>> parse_json_report(std::string_view text);

}  // namespace olap::bench
