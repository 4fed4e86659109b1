// Headless module host: evaluates a query document through the flat C ABI
// (alloc / session_create / session_query / session_free / dealloc) with the
// same arguments and output as `cube query`.
//
//   bridge_host --schema FILE --facts FILE --query FILE [--out FILE]

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "olapcube/bridge_abi.h"

namespace {

struct Reply {
  bool ok = false;
  std::string payload;
};

// Copies host bytes into module-owned memory.
struct ModuleBuffer {
  explicit ModuleBuffer(const std::string& bytes)
      : len(static_cast<uint32_t>(bytes.size())), ptr(olap_alloc(len)) {
    if (len > 0) std::memcpy(ptr, bytes.data(), len);
  }
  ~ModuleBuffer() { olap_dealloc(ptr, len); }
  ModuleBuffer(const ModuleBuffer&) = delete;
  ModuleBuffer& operator=(const ModuleBuffer&) = delete;

  uint32_t len;
  uint8_t* ptr;
};

Reply take_reply(uint8_t* buf) {
  auto u32 = [buf](int offset) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[offset + i]) << (8 * i);
    return v;
  };
  Reply r;
  r.ok = u32(0) == 0;
  const uint32_t len = u32(4);
  r.payload.assign(reinterpret_cast<const char*>(buf + 8), len);
  olap_dealloc(buf, 8 + len);
  return r;
}

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int emit(const std::string& path, const Reply& reply) {
  if (path.empty() || path == "-") {
    std::cout << reply.payload;
  } else {
    std::ofstream out(path, std::ios::binary);
    out << reply.payload;
    if (!out) return 1;
  }
  return reply.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Headless host for the cube module boundary"};
  std::string schema_path;
  std::string facts_path;
  std::string query_path;
  std::string out_path;
  app.add_option("--schema", schema_path, "Schema JSON")->required();
  app.add_option("--facts", facts_path, "Fact CSV")->required();
  app.add_option("--query", query_path, "Query document JSON")->required();
  app.add_option("--out", out_path, "Output file (default stdout)");
  CLI11_PARSE(app, argc, argv);

  std::string schema;
  std::string facts;
  std::string query;
  if (!slurp(schema_path, schema) || !slurp(facts_path, facts) || !slurp(query_path, query)) {
    std::cerr << "bridge_host: cannot read inputs\n";
    return 2;
  }

  Reply created;
  {
    ModuleBuffer s(schema);
    ModuleBuffer f(facts);
    created = take_reply(olap_session_create(s.ptr, s.len, f.ptr, f.len));
  }
  if (!created.ok) return emit(out_path, created);
  const auto handle = nlohmann::json::parse(created.payload).at("session").get<uint32_t>();

  Reply result;
  {
    ModuleBuffer q(query);
    result = take_reply(olap_session_query(handle, q.ptr, q.len));
  }
  take_reply(olap_session_free(handle));
  return emit(out_path, result);
}
