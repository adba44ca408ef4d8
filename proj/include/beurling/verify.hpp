#pragma once

// Executable acceptance checks.
//
// Two layers: every scenario's expected-behaviour flags are compared against
// finite-window diagnostics, and the numbered acceptance criteria run at their
// pinned configurations.  A flag whose mechanism lives beyond the computed
// window is reported as not observable rather than judged.

#include <string>
#include <vector>

#include "beurling/scenarios.hpp"

namespace beurling {

enum class Observed { holds, fails, inconclusive, not_observable };
const char* observed_name(Observed o);

struct Evidence {
  std::string name;
  double value = 0.0;
};

struct FlagResult {
  std::string flag;
  Expect declared = Expect::unknown;
  Observed observed = Observed::inconclusive;
  bool contradiction = false;
  std::string note;
  std::vector<Evidence> evidence;
};

struct Check {
  std::string name;
  bool pass = false;
  bool informational = false;  // reported, does not count
  std::string detail;
  std::string timing;  // wall-clock note; kept out of reports (not reproducible)
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<Check> checks;
  bool pass() const;
};

struct ScenarioVerify {
  std::string name;
  Params parameters;
  std::vector<FlagResult> flags;
  std::vector<Check> checks;  // per-scenario identities
  bool contradiction() const;
};

struct VerifyReport {
  std::vector<ScenarioVerify> scenarios;
  std::vector<CriterionResult> criteria;
  bool contradiction() const;
};

// flag thresholds: a sup/spread at or below *_hold reads as holds, at or above
// *_fail as fails, in between inconclusive
inline constexpr double kPntHold = 0.05, kPntFail = 0.2;
inline constexpr double kSharpHold = 0.03, kSharpFail = 0.1;
inline constexpr double kMobiusHold = 0.05, kMobiusFail = 0.2;

std::vector<FlagResult> check_flags(const Scenario& sc);
std::vector<Check> scenario_checks(const Scenario& sc);
ScenarioVerify verify_scenario(const Scenario& sc);

inline constexpr int kCriteria = 10;  // 11 (determinism) compares whole reports
CriterionResult run_criterion(int number);
std::vector<int> criteria_for(const std::string& scenario);

// "all" runs the whole catalog at defaults plus every criterion; otherwise the
// named scenario with `params` plus the criteria it owns
VerifyReport verify(const std::string& scenario, const Params& params = {});

}  // namespace beurling
