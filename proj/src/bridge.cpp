#include "olapcube/bridge.hpp"

#include <cstdlib>
#include <cstring>

#include "olapcube/bridge_abi.h"
#include "json_util.hpp"

namespace olap {

namespace {

template <typename M>
class Guard {
 public:
  explicit Guard(M& m) : m_(m) { m_.lock(); }
  ~Guard() { m_.unlock(); }
  Guard(const Guard&) = delete;
  Guard& operator=(const Guard&) = delete;

 private:
  M& m_;
};

SessionRegistry::Reply error_reply(const Status& st) { return {false, error_document(st)}; }

Status unknown_handle(SessionRegistry::SessionId id) {
  return Status(ErrorCode::kHandle, "no live session with handle " + std::to_string(id));
}

}  // namespace

SessionRegistry& SessionRegistry::global() {
  static SessionRegistry registry;
  return registry;
}

Result<QueryState> SessionRegistry::evaluate(const Session& session, const QueryState& from,
                                             const QueryDocument& query) const {
  if (!query.aggregate) return apply_operations(from, query.operations);
  OLAP_ASSIGN_OR_RETURN(AggSpec agg, resolve_agg(session.facts->schema(), *query.aggregate));
  OLAP_ASSIGN_OR_RETURN(Cube base, build_cube(session.facts, agg, cfg_));
  QueryState restart{std::make_shared<const Cube>(std::move(base)), std::nullopt, std::nullopt};
  return apply_operations(restart, query.operations);
}

SessionRegistry::Reply SessionRegistry::create(std::string_view schema_json, std::string_view facts_csv) {
  auto facts = open_facts(schema_json, facts_csv);
  if (!facts.ok()) return error_reply(facts.status());
  auto cube = build_cube(*facts, default_agg((*facts)->schema()), cfg_);
  if (!cube.ok()) return error_reply(cube.status());

  auto session = std::make_shared<Session>();
  session->facts = *facts;
  session->base = {std::make_shared<const Cube>(std::move(cube).value()), std::nullopt, std::nullopt};
  session->current = session->base;

  SessionId id = 0;
  {
    Guard lock(mu_);
    id = next_id_++;
    sessions_.emplace(id, std::move(session));
  }
  json_util::json doc = {{"session", id}};
  return {true, json_util::dump(doc)};
}

SessionRegistry::Reply SessionRegistry::query(SessionId id, std::string_view query_json) {
  std::shared_ptr<Session> session;
  {
    Guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return error_reply(unknown_handle(id));
    session = it->second;
  }
  auto query = parse_query(query_json);
  if (!query.ok()) return error_reply(query.status());
  auto next = evaluate(*session, session->current, *query);
  if (!next.ok()) return error_reply(next.status());
  auto view = current_view(*next);
  if (!view.ok()) return error_reply(view.status());

  session->current = std::move(next).value();
  session->history.emplace_back(query_json);
  return {true, result_document(*view)};
}

SessionRegistry::Reply SessionRegistry::reset(SessionId id) {
  Guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return error_reply(unknown_handle(id));
  it->second->current = it->second->base;
  it->second->history.clear();
  json_util::json doc = {{"session", id}, {"reset", true}};
  return {true, json_util::dump(doc)};
}

SessionRegistry::Reply SessionRegistry::free(SessionId id) {
  Guard lock(mu_);
  if (sessions_.erase(id) == 0) return error_reply(unknown_handle(id));
  json_util::json doc = {{"session", id}, {"freed", true}};
  return {true, json_util::dump(doc)};
}

std::size_t SessionRegistry::live_sessions() const {
  Guard lock(mu_);
  return sessions_.size();
}

std::optional<std::vector<std::string>> SessionRegistry::history(SessionId id) const {
  Guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second->history;
}

Result<CubePtr> SessionRegistry::current_cube(SessionId id) const {
  Guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return unknown_handle(id);
  return it->second->current.cube;
}

Result<CubePtr> SessionRegistry::replay(SessionId id) const {
  std::shared_ptr<Session> session;
  {
    Guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return unknown_handle(id);
    session = it->second;
  }
  OLAP_ASSIGN_OR_RETURN(Cube base, build_cube(session->facts, default_agg(session->facts->schema()), cfg_));
  QueryState state{std::make_shared<const Cube>(std::move(base)), std::nullopt, std::nullopt};
  for (const auto& doc : session->history) {
    OLAP_ASSIGN_OR_RETURN(QueryDocument query, parse_query(doc));
    OLAP_ASSIGN_OR_RETURN(state, evaluate(*session, state, query));
  }
  return state.cube;
}

}  // namespace olap

// ---- Flat ABI ------------------------------------------------------------

#if defined(__wasm__)
#define OLAP_EXPORT(name) __attribute__((export_name(#name)))
#else
#define OLAP_EXPORT(name)
#endif

namespace {

uint8_t* make_reply(const olap::SessionRegistry::Reply& reply) {
  const auto len = static_cast<uint32_t>(reply.payload.size());
  auto* buf = static_cast<uint8_t*>(std::malloc(8 + static_cast<std::size_t>(len)));
  if (buf == nullptr) return nullptr;
  const uint32_t status = reply.ok ? 0 : 1;
  for (int i = 0; i < 4; ++i) {
    buf[i] = static_cast<uint8_t>(status >> (8 * i));
    buf[4 + i] = static_cast<uint8_t>(len >> (8 * i));
  }
  if (len > 0) std::memcpy(buf + 8, reply.payload.data(), len);
  return buf;
}

std::string_view as_view(const uint8_t* ptr, uint32_t len) {
  if (ptr == nullptr || len == 0) return {};
  return {reinterpret_cast<const char*>(ptr), len};
}

}  // namespace

extern "C" {

OLAP_EXPORT(alloc) uint8_t* olap_alloc(uint32_t len) {
  return static_cast<uint8_t*>(std::malloc(len == 0 ? 1 : len));
}

OLAP_EXPORT(dealloc) void olap_dealloc(uint8_t* ptr, uint32_t /*len*/) { std::free(ptr); }

OLAP_EXPORT(session_create)
uint8_t* olap_session_create(const uint8_t* schema_json, uint32_t schema_len, const uint8_t* facts_csv,
                             uint32_t facts_len) {
  return make_reply(olap::SessionRegistry::global().create(as_view(schema_json, schema_len),
                                                           as_view(facts_csv, facts_len)));
}

OLAP_EXPORT(session_query)
uint8_t* olap_session_query(uint32_t session, const uint8_t* query_json, uint32_t query_len) {
  return make_reply(olap::SessionRegistry::global().query(session, as_view(query_json, query_len)));
}

OLAP_EXPORT(session_reset) uint8_t* olap_session_reset(uint32_t session) {
  return make_reply(olap::SessionRegistry::global().reset(session));
}

OLAP_EXPORT(session_free) uint8_t* olap_session_free(uint32_t session) {
  return make_reply(olap::SessionRegistry::global().free(session));
}

}  // extern "C"
