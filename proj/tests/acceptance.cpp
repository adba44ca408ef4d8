// Acceptance run: one PASS/FAIL line per numbered criterion, the checks behind
// it indented underneath.  Criteria 1-10 come from the first full verify run;
// criterion 11 repeats the run and compares the two JSON reports byte for byte.
//
// Exit status counts failing criteria and contradicted scenario flags (0 = all pass).

#include <chrono>
#include <cstdio>
#include <string>

#include "beurling/report.hpp"
#include "beurling/verify.hpp"

using namespace beurling;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void print_criterion(const CriterionResult& c) {
  std::printf("criterion %2d  %s  %s\n", c.number, c.pass() ? "PASS" : "FAIL", c.title.c_str());
  for (const auto& k : c.checks) {
    const char* tag = k.informational ? "info" : (k.pass ? "ok  " : "FAIL");
    std::printf("    [%s] %s: %s", tag, k.name.c_str(), k.detail.c_str());
    if (!k.timing.empty()) std::printf(" (%s)", k.timing.c_str());
    std::printf("\n");
  }
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  VerifyReport first = verify("all");
  double t_first = seconds_since(t0);

  int failed = 0;
  for (const auto& c : first.criteria) {
    print_criterion(c);
    if (!c.pass()) ++failed;
  }

  auto t1 = Clock::now();
  VerifyReport second = verify("all");
  double t_second = seconds_since(t1);
  std::string a = dump(to_json(first)), b = dump(to_json(second));
  bool same = a == b;
  std::size_t at = 0;
  while (at < a.size() && at < b.size() && a[at] == b[at]) ++at;
  std::printf("criterion 11  %s  two full verify runs give byte-identical reports\n", same ? "PASS" : "FAIL");
  std::printf("    [%s] report sizes %zu / %zu bytes", same ? "ok  " : "FAIL", a.size(), b.size());
  if (!same) std::printf(", first difference at byte %zu", at);
  std::printf(" (runs took %.1f s and %.1f s)\n", t_first, t_second);
  if (!same) ++failed;

  // per-scenario layer: declared flags against observed behaviour, plus identities
  int bad = 0;
  for (const auto& s : first.scenarios) {
    for (const auto& f : s.flags)
      if (f.contradiction) {
        ++bad;
        std::printf("    %s/%s declared %s observed %s\n", s.name.c_str(), f.flag.c_str(), expect_name(f.declared),
                    observed_name(f.observed));
      }
    for (const auto& k : s.checks)
      if (!k.informational && !k.pass) {
        ++bad;
        std::printf("    %s: %s failed: %s\n", s.name.c_str(), k.name.c_str(), k.detail.c_str());
      }
  }
  std::printf("scenario flags and checks (%zu scenarios): %s\n", first.scenarios.size(),
              bad ? "CONTRADICTION" : "no contradiction");

  std::printf("%d of %d criteria failed\n", failed, kCriteria + 1);
  return failed + bad;
}
