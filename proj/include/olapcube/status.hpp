#pragma once

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

namespace olap {

// Error categories surfaced to callers. The string form (see error_code_name)
// is part of the error document wire format.
enum class ErrorCode {
  kOk = 0,
  kSchemaMismatch,
  kParse,
  kEmptyTable,
  kSchema,
  kPrecondition,
  kValidation,
  kCoordinate,
  kLevelOrder,
  kUnsupportedDrill,
  kFilter,
  kAxis,
  kOverflow,
  kContract,
  kHandle,
  kReport,
  kQuery,
  kConfig,
  kDeterminism,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

class Status {
 public:
  Status() = default;
  Status(ErrorCode code, std::string message, std::string details_json = {})
      : code_(code), message_(std::move(message)), details_(std::move(details_json)) {}

  static Status OK() { return {}; }

  bool ok() const { return code_ == ErrorCode::kOk; }
  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }
  // Optional structured payload (a JSON document), e.g. a validation report.
  const std::string& details() const { return details_; }

  std::string ToString() const;

 private:
  ErrorCode code_ = ErrorCode::kOk;
  std::string message_;
  std::string details_;
};

template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : storage_(std::move(value)) {}  // NOLINT(runtime/explicit)
  Result(Status status) : storage_(std::move(status)) {}  // NOLINT(runtime/explicit)

  bool ok() const { return std::holds_alternative<T>(storage_); }

  const Status& status() const {
    static const Status kOkStatus;
    return ok() ? kOkStatus : std::get<Status>(storage_);
  }

  T& value() & { return std::get<T>(storage_); }
  const T& value() const& { return std::get<T>(storage_); }
  T&& value() && { return std::get<T>(std::move(storage_)); }

  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, Status> storage_;
};

namespace internal {
inline Status AsStatus(Status s) { return s; }
template <typename T>
Status AsStatus(const Result<T>& r) {
  return r.status();
}
}  // namespace internal

}  // namespace olap

#define OLAP_CONCAT_IMPL(a, b) a##b
#define OLAP_CONCAT(a, b) OLAP_CONCAT_IMPL(a, b)

#define OLAP_RETURN_IF_ERROR(expr)                                 \
  do {                                                             \
    ::olap::Status _olap_st = ::olap::internal::AsStatus((expr));  \
    if (!_olap_st.ok()) return _olap_st;                           \
  } while (0)

#define OLAP_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                               \
  if (!tmp.ok()) return tmp.status();              \
  lhs = std::move(tmp).value()

#define OLAP_ASSIGN_OR_RETURN(lhs, expr) \
  OLAP_ASSIGN_OR_RETURN_IMPL(OLAP_CONCAT(_olap_result_, __LINE__), lhs, expr)
