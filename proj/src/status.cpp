#include "olapcube/status.hpp"

namespace olap {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kSchemaMismatch: return "schema_mismatch";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kEmptyTable: return "empty_table";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kCoordinate: return "coordinate";
    case ErrorCode::kLevelOrder: return "level_order";
    case ErrorCode::kUnsupportedDrill: return "unsupported_drill";
    case ErrorCode::kFilter: return "filter";
    case ErrorCode::kAxis: return "axis";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kHandle: return "handle";
    case ErrorCode::kReport: return "report";
    case ErrorCode::kQuery: return "query";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kDeterminism: return "determinism";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string Status::ToString() const {
  if (ok()) return "ok";
  std::string out(error_code_name(code_));
  out += ": ";
  out += message_;
  return out;
}

}  // namespace olap
