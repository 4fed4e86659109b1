#pragma once

// Non-throwing accessors over nlohmann::json. The core is also compiled
// without exception support, so every lookup checks types before reading.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "olapcube/status.hpp"

namespace olap::json_util {

using nlohmann::json;

inline Result<json> parse(std::string_view text, std::string_view what) {
  json doc = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return Status(ErrorCode::kParse, std::string(what) + " is not valid JSON");
  }
  return doc;
}

inline const json* find(const json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

inline Result<std::string> get_string(const json& obj, std::string_view key, ErrorCode code,
                                      std::string_view context) {
  const json* v = find(obj, key);
  if (v == nullptr || !v->is_string()) {
    return Status(code, std::string(context) + ": expected string field '" + std::string(key) + "'");
  }
  return v->get<std::string>();
}

// Serialization never throws on odd bytes in member names.
inline std::string dump(const json& doc) {
  return doc.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace olap::json_util
