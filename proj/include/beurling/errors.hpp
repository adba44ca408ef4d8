#pragma once

#include <stdexcept>
#include <string>

namespace beurling {

enum class ErrorCode {
  domain,         // argument outside the mathematical domain (x < 1, Re s <= 1, ...)
  out_of_range,   // argument beyond a computational cutoff
  grid_mismatch,
  mass,           // non-finite or unusable total mass
  not_invertible,
  size,           // enumeration would exceed the memory budget
  branch,         // evaluation on a branch cut
  divergence,
  moment,         // remainder grows faster than the kernel moments allow
  config,
  unknown_scenario,
  parameter,      // scenario parameter violates an invariant
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace beurling
