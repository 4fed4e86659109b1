// bench: sequential vs. parallel timing experiments.
//
//   bench sort --iterations N --size N --min V --max V --seed S
//              --mode seq|par|both --workers K --cutoff C --out FILE --format json|csv
//   bench agg  --rows N --dims 100x10x4 --seed S --workers K --out FILE

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "olapcube/bench.hpp"

namespace {

int write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "bench: cannot write " << path << "\n";
    return 1;
  }
  return 0;
}

int report(const olap::Result<std::vector<olap::bench::RunStats>>& stats, const std::string& format,
           const std::string& out) {
  if (!stats.ok()) {
    std::cerr << "bench: " << stats.status().ToString() << "\n";
    return 1;
  }
  auto fmt = olap::bench::parse_format(format);
  if (!fmt.ok()) {
    std::cerr << "bench: " << fmt.status().ToString() << "\n";
    return 2;
  }
  auto text = olap::bench::emit_report(*stats, *fmt);
  if (!text.ok()) {
    std::cerr << "bench: " << text.status().ToString() << "\n";
    return 1;
  }
  for (const auto& s : *stats) {
    std::fprintf(stderr, "%s/%s: mean %.3f ms, median %.3f ms over %zu iterations (%zu workers)\n",
                 s.experiment.c_str(), s.mode.c_str(), s.mean_ms, s.median_ms, s.durations_ms.size(), s.workers);
  }
  return write_output(out, *text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential vs. parallel sort and aggregation benchmarks"};
  app.require_subcommand(1);

  auto cfg = olap::bench::ExperimentConfig::DeskScale();
  std::string mode = "both";
  std::string format = "json";
  std::string out;
  bool full_scale = false;
  auto* sort = app.add_subcommand("sort", "Quicksort experiment on seeded random arrays");
  sort->add_option("--iterations", cfg.iterations, "Iterations")->check(CLI::PositiveNumber);
  sort->add_option("--size", cfg.array_size, "Array size")->check(CLI::PositiveNumber);
  sort->add_option("--min", cfg.min_value, "Smallest value (inclusive)");
  sort->add_option("--max", cfg.max_value, "Largest value (exclusive)");
  sort->add_option("--seed", cfg.seed, "PRNG seed");
  sort->add_option("--mode", mode, "seq, par or both")->check(CLI::IsMember({"seq", "par", "both"}));
  sort->add_option("--workers", cfg.parallel.worker_count, "Worker threads")->check(CLI::PositiveNumber);
  sort->add_option("--cutoff", cfg.parallel.sequential_cutoff, "Sequential cutoff")->check(CLI::PositiveNumber);
  sort->add_option("--out", out, "Report file (default stdout)");
  sort->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sort->add_flag("--full-scale", full_scale, "1000 iterations of 500,000 elements");

  olap::bench::AggExperimentConfig agg;
  std::string dims = "100x10x4";
  std::string agg_format = "json";
  std::string agg_out;
  auto* agg_cmd = app.add_subcommand("agg", "Cube build timing on a synthetic fact table");
  agg_cmd->add_option("--rows", agg.facts.rows, "Fact rows")->check(CLI::PositiveNumber);
  agg_cmd->add_option("--dims", dims, "Dimension cardinalities, e.g. 100x10x4");
  agg_cmd->add_option("--seed", agg.facts.seed, "PRNG seed");
  agg_cmd->add_option("--workers", agg.parallel.worker_count, "Worker threads")->check(CLI::PositiveNumber);
  agg_cmd->add_option("--chunk", agg.parallel.chunk_size, "Rows per partition")->check(CLI::PositiveNumber);
  agg_cmd->add_option("--iterations", agg.iterations, "Iterations")->check(CLI::PositiveNumber);
  agg_cmd->add_option("--out", agg_out, "Report file (default stdout)");
  agg_cmd->add_option("--format", agg_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  if (sort->parsed()) {
    if (full_scale) {
      const auto full = olap::bench::ExperimentConfig::FullScale();
      if (sort->count("--iterations") == 0) cfg.iterations = full.iterations;
      if (sort->count("--size") == 0) cfg.array_size = full.array_size;
    }
    cfg.mode = *olap::bench::parse_mode(mode);
    return report(olap::bench::run_sort_experiment(cfg), format, out);
  }

  auto parsed = olap::bench::parse_dims(dims);
  if (!parsed.ok()) {
    std::cerr << "bench: " << parsed.status().ToString() << "\n";
    return 2;
  }
  agg.facts.cardinalities = *parsed;
  return report(olap::bench::run_aggregate_experiment(agg), agg_format, agg_out);
}
