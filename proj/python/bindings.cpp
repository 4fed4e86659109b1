#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olapcube/bench.hpp"
#include "olapcube/bridge.hpp"
#include "olapcube/cube.hpp"
#include "olapcube/ops.hpp"
#include "olapcube/query.hpp"
#include "olapcube/view.hpp"

namespace py = pybind11;
using namespace olap;

namespace {

struct OlapException {
  std::string code;
  std::string message;
};

[[noreturn]] void raise(const Status& s) {
  throw OlapException{std::string(error_code_name(s.code())), s.message()};
}

template <typename T>
T unwrap(Result<T> r) {
  if (!r.ok()) raise(r.status());
  return std::move(r).value();
}

ParallelConfig make_config(std::optional<std::size_t> workers, std::optional<std::size_t> chunk_size,
                           std::optional<std::size_t> cutoff) {
  ParallelConfig cfg = ParallelConfig::Default();
  if (workers) cfg.worker_count = *workers;
  if (chunk_size) cfg.chunk_size = *chunk_size;
  if (cutoff) cfg.sequential_cutoff = *cutoff;
  if (auto s = cfg.Validate(); !s.ok()) raise(s);
  return cfg;
}

using AggArg = std::optional<std::map<std::string, std::vector<std::string>>>;

std::vector<AggRequest> requests(const CubeSchema& schema, const AggArg& aggregate) {
  std::vector<AggRequest> out;
  if (!aggregate) {
    for (const auto& m : schema.measures()) out.push_back({m.name, AggFn::kSum});
    return out;
  }
  for (const auto& [measure, fns] : *aggregate) {
    for (const auto& fn : fns) {
      auto parsed = parse_agg_fn(fn);
      if (!parsed) raise(Status(ErrorCode::kQuery, "unknown aggregation function '" + fn + "'"));
      out.push_back({measure, *parsed});
    }
  }
  return out;
}

// Python-facing handle; operations return new handles sharing base facts.
class PyCube {
 public:
  explicit PyCube(CubePtr cube) : cube_(std::move(cube)) {}

  static PyCube build(const std::string& schema_json, const std::string& facts_csv, const AggArg& aggregate,
                      std::optional<std::size_t> workers, std::optional<std::size_t> chunk_size) {
    auto facts = unwrap(open_facts(schema_json, facts_csv));
    auto cfg = make_config(workers, chunk_size, std::nullopt);
    auto cube = unwrap(build_cube(facts, requests(facts->schema(), aggregate), cfg));
    return PyCube(std::make_shared<const Cube>(std::move(cube)));
  }

  PyCube roll_up(const std::string& dim, const std::string& level) const { return wrap(olap::roll_up(*cube_, dim, level)); }
  PyCube drill_down(const std::string& dim, const std::string& level) const {
    return wrap(olap::drill_down(*cube_, dim, level));
  }
  PyCube slice(const std::string& dim, const std::string& member) const { return wrap(olap::slice(*cube_, dim, member)); }
  PyCube dice(const DiceFilter& filter) const { return wrap(olap::dice(*cube_, filter)); }

  std::optional<std::vector<Value>> cell(const std::vector<std::string>& coordinate) const {
    return unwrap(olap::cell(*cube_, coordinate));
  }

  // {(member, ...): [value, ...]}
  py::dict cells() const {
    py::dict out;
    const auto dims = cube_->present_dimensions();
    for (const auto& [coord, states] : cube_->cells()) {
      py::tuple key(dims.size());
      for (std::size_t k = 0; k < dims.size(); ++k) {
        key[k] = cube_->schema().dimension(dims[k]).member_name(*cube_->levels()[dims[k]], coord[k]);
      }
      out[key] = py::cast(cube_->finalized(states));
    }
    return out;
  }

  // {dimension: level or None}
  py::dict levels() const {
    py::dict out;
    for (std::size_t d = 0; d < cube_->levels().size(); ++d) {
      const auto& dim = cube_->schema().dimension(d);
      const auto& l = cube_->levels()[d];
      out[py::str(dim.name())] = l ? py::object(py::str(dim.level(*l).name)) : py::object(py::none());
    }
    return out;
  }

  std::vector<std::string> measures() const {
    std::vector<std::string> out;
    for (const auto& c : cube_->agg()) out.push_back(c.label);
    return out;
  }

  std::size_t cell_count() const { return cube_->cell_count(); }

  // Result document (JSON text) for a view of this cube.
  std::string view(const std::vector<std::string>& rows, const std::vector<std::string>& cols) const {
    return result_document(unwrap(to_view(cube_, rows, cols)));
  }

  bool equals(const PyCube& other) const { return *cube_ == *other.cube_; }

 private:
  static PyCube wrap(Result<Cube> r) { return PyCube(std::make_shared<const Cube>(unwrap(std::move(r)))); }

  CubePtr cube_;
};

class PySession {
 public:
  PySession(const std::string& schema_json, const std::string& facts_csv, std::optional<std::size_t> workers)
      : registry_(make_config(workers, std::nullopt, std::nullopt)) {
    auto r = registry_.create(schema_json, facts_csv);
    auto doc = nlohmann::json::parse(r.payload);
    if (!r.ok) throw OlapException{doc["error"]["code"].get<std::string>(), doc["error"]["message"].get<std::string>()};
    id_ = doc["session"].get<SessionRegistry::SessionId>();
  }

  // Returns (ok, document).
  std::pair<bool, std::string> query(const std::string& query_json) {
    auto r = registry_.query(id_, query_json);
    return {r.ok, r.payload};
  }
  void reset() { registry_.reset(id_); }
  std::vector<std::string> history() const { return registry_.history(id_).value_or(std::vector<std::string>{}); }

 private:
  SessionRegistry registry_;
  SessionRegistry::SessionId id_ = 0;
};

std::string sort_report(std::size_t iterations, std::size_t size, std::int64_t min_value, std::int64_t max_value,
                        std::uint64_t seed, const std::string& mode, std::optional<std::size_t> workers,
                        std::optional<std::size_t> cutoff, const std::string& format) {
  bench::ExperimentConfig cfg;
  cfg.iterations = iterations;
  cfg.array_size = size;
  cfg.min_value = min_value;
  cfg.max_value = max_value;
  cfg.seed = seed;
  cfg.mode = unwrap(bench::parse_mode(mode));
  cfg.parallel = make_config(workers, std::nullopt, cutoff);
  auto stats = unwrap(bench::run_sort_experiment(cfg));
  return unwrap(bench::emit_report(stats, unwrap(bench::parse_format(format))));
}

}  // namespace

PYBIND11_MODULE(_olapcube, m) {
  m.doc() = "In-memory OLAP cube engine";

  static py::exception<OlapException> error(m, "OlapError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const OlapException& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(e.code, e.message).ptr());
    }
  });

  py::class_<PyCube>(m, "Cube")
      .def_static("build", &PyCube::build, py::arg("schema_json"), py::arg("facts_csv"),
                  py::arg("aggregate") = py::none(), py::arg("workers") = py::none(),
                  py::arg("chunk_size") = py::none())
      .def("roll_up", &PyCube::roll_up, py::arg("dimension"), py::arg("level"))
      .def("drill_down", &PyCube::drill_down, py::arg("dimension"), py::arg("level"))
      .def("slice", &PyCube::slice, py::arg("dimension"), py::arg("member"))
      .def("dice", &PyCube::dice, py::arg("filter"))
      .def("cell", &PyCube::cell, py::arg("coordinate"))
      .def("cells", &PyCube::cells)
      .def("view", &PyCube::view, py::arg("rows"), py::arg("cols"))
      .def_property_readonly("levels", &PyCube::levels)
      .def_property_readonly("measures", &PyCube::measures)
      .def("__len__", &PyCube::cell_count)
      .def("__eq__", &PyCube::equals);

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&, const std::string&, std::optional<std::size_t>>(), py::arg("schema_json"),
           py::arg("facts_csv"), py::arg("workers") = py::none())
      .def("query", &PySession::query, py::arg("query_json"))
      .def("reset", &PySession::reset)
      .def_property_readonly("history", &PySession::history);

  m.def("validate", [](const std::string& schema_json, const std::string& facts_csv) {
    auto schema = unwrap(parse_schema(schema_json));
    auto facts = unwrap(load_facts(facts_csv, schema));
    return validate(facts).to_json();
  }, py::arg("schema_json"), py::arg("facts_csv"), "Validation report as JSON text.");

  m.def("run_query", [](const std::string& schema_json, const std::string& facts_csv, const std::string& query_json,
                        std::optional<std::size_t> workers) {
    auto out = olap::run_query(schema_json, facts_csv, query_json, make_config(workers, std::nullopt, std::nullopt));
    return std::make_pair(out.ok, out.document);
  }, py::arg("schema_json"), py::arg("facts_csv"), py::arg("query_json"), py::arg("workers") = py::none());

  m.def("quicksort_seq", [](const std::vector<std::int64_t>& values) { return quicksort_seq(values); },
        py::arg("values"));
  m.def("quicksort_par", [](const std::vector<std::int64_t>& values, std::optional<std::size_t> workers,
                            std::optional<std::size_t> cutoff) {
    return quicksort_par(values, make_config(workers, std::nullopt, cutoff)).values;
  }, py::arg("values"), py::arg("workers") = py::none(), py::arg("cutoff") = py::none());

  m.def("sort_experiment", &sort_report, py::arg("iterations") = 50, py::arg("size") = 100000,
        py::arg("min_value") = 0, py::arg("max_value") = 100000, py::arg("seed") = 42, py::arg("mode") = "both",
        py::arg("workers") = py::none(), py::arg("cutoff") = py::none(), py::arg("format") = "json");
}
