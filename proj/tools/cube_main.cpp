// cube: run a query document against a schema + fact file.
//
//   cube query    --schema FILE --facts FILE --query FILE [--out FILE]
//   cube validate --schema FILE --facts FILE [--out FILE]
//
// Writes the result (or error) document; exits nonzero on any error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "olapcube/query.hpp"

namespace {

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int emit(const std::string& path, const std::string& doc, bool ok) {
  if (path.empty() || path == "-") {
    std::cout << doc;
  } else {
    std::ofstream out(path, std::ios::binary);
    out << doc;
    if (!out) {
      std::cerr << "cube: cannot write " << path << "\n";
      return 1;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"In-memory OLAP cube queries"};
  app.require_subcommand(1);

  std::string schema_path;
  std::string facts_path;
  std::string query_path;
  std::string out_path;
  std::size_t workers = olap::ParallelConfig::hardware_workers();

  auto* query = app.add_subcommand("query", "Apply a query document and print the result grid");
  query->add_option("--schema", schema_path, "Schema JSON")->required();
  query->add_option("--facts", facts_path, "Fact CSV")->required();
  query->add_option("--query", query_path, "Query document JSON")->required();
  query->add_option("--out", out_path, "Output file (default stdout)");
  query->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("validate", "Load and validate facts, print the validation report");
  check->add_option("--schema", schema_path, "Schema JSON")->required();
  check->add_option("--facts", facts_path, "Fact CSV")->required();
  check->add_option("--out", out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  std::string schema_json;
  std::string facts_csv;
  std::string query_json;
  auto io_error = [&](const std::string& path) {
    return emit(out_path, olap::error_document(olap::Status(olap::ErrorCode::kIo, "cannot read " + path)), false);
  };
  if (!slurp(schema_path, schema_json)) return io_error(schema_path);
  if (!slurp(facts_path, facts_csv)) return io_error(facts_path);

  if (check->parsed()) {
    auto schema = olap::parse_schema(schema_json);
    if (!schema.ok()) return emit(out_path, olap::error_document(schema.status()), false);
    auto facts = olap::load_facts(facts_csv, *schema);
    if (!facts.ok()) return emit(out_path, olap::error_document(facts.status()), false);
    const auto report = olap::validate(*facts);
    return emit(out_path, report.to_json(), report.ok);
  }

  if (!slurp(query_path, query_json)) return io_error(query_path);
  olap::ParallelConfig cfg = olap::ParallelConfig::Default();
  cfg.worker_count = workers;
  const auto result = olap::run_query(schema_json, facts_csv, query_json, cfg);
  return emit(out_path, result.document, result.ok);
}
