#pragma once

// Run configuration and command dispatch behind the `beurling` tool.
//
// Config text is `key = value` lines, `#` comments and optional [section]
// headers.  Inside a section only that section's keys are accepted; before
// the first header any known key is.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beurling/errors.hpp"
#include "beurling/scenarios.hpp"

namespace beurling {

struct ConfigIssue {
  std::string where;  // "line 3", "--set 1", or "" when global
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

struct RunConfig {
  std::string scenario;  // a catalog name, or "all" (verify only)
  std::string command;   // enumerate | count | mertens | mobius | kernels | zeta | probe | verify | report
  std::string format;    // csv | json; empty = the command's default
  std::string out;       // empty = stdout
  Params params;         // scenario parameters
  std::map<std::string, std::string> options;  // command options (validated)
  std::optional<Scenario> built;               // the validated scenario
};

inline constexpr int kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitContradiction = 4;

const std::vector<std::string>& command_names();

// `overrides` are extra key=value lines (from --set) applied after the text
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                       bool build_scenario = true);

// writes the command's artifact; returns the exit status (0 or 4)
int run(const RunConfig& cfg, std::ostream& out);

// default output format of a command
std::string default_format(const std::string& command);

}  // namespace beurling
