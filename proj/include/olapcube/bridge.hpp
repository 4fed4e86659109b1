#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olapcube/query.hpp"

#if !defined(__wasi__) && !defined(__EMSCRIPTEN__)
#include <mutex>
#endif

namespace olap {

#if !defined(__wasi__) && !defined(__EMSCRIPTEN__)
using RegistryMutex = std::mutex;
#else
// Single-threaded module host.
struct RegistryMutex {
  void lock() {}
  void unlock() {}
};
#endif

// Sessions behind the flat module boundary. Every reply carries a JSON
// payload: a result document on success, an error document otherwise.
// Queries are cumulative: each applies to the session's current cube, and a
// query carrying "aggregate" restarts from the base facts with that
// aggregation first.
class SessionRegistry {
 public:
  using SessionId = std::uint32_t;

  struct Reply {
    bool ok = false;
    std::string payload;
  };

  explicit SessionRegistry(ParallelConfig cfg = ParallelConfig::Default()) : cfg_(cfg) {}

  // payload: {"session": id}
  Reply create(std::string_view schema_json, std::string_view facts_csv);
  Reply query(SessionId id, std::string_view query_json);
  Reply reset(SessionId id);
  Reply free(SessionId id);

  std::size_t live_sessions() const;
  std::optional<std::vector<std::string>> history(SessionId id) const;
  // Rebuilds the session's cube by replaying its history from the base facts.
  Result<CubePtr> replay(SessionId id) const;
  Result<CubePtr> current_cube(SessionId id) const;

  static SessionRegistry& global();

 private:
  struct Session {
    FactsPtr facts;
    QueryState base;
    QueryState current;
    std::vector<std::string> history;
  };

  Result<QueryState> evaluate(const Session& session, const QueryState& from, const QueryDocument& query) const;

  ParallelConfig cfg_;
  mutable RegistryMutex mu_;
  std::map<SessionId, std::shared_ptr<Session>> sessions_;
  SessionId next_id_ = 1;
};

}  // namespace olap
