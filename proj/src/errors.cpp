#include "beurling/errors.hpp"

namespace beurling {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::mass: return "mass";
    case ErrorCode::not_invertible: return "not_invertible";
    case ErrorCode::size: return "size";
    case ErrorCode::branch: return "branch";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::moment: return "moment";
    case ErrorCode::config: return "config";
    case ErrorCode::unknown_scenario: return "unknown_scenario";
    case ErrorCode::parameter: return "parameter";
  }
  return "unknown";
}

}  // namespace beurling
