#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>

#include "beurling/cli.hpp"
#include "beurling/special.hpp"

using namespace beurling;

namespace {

std::vector<ConfigIssue> issues_of(const std::string& text, const std::vector<std::string>& sets = {}) {
  try {
    parse_config(text, sets);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<ConfigIssue>& v, const std::string& needle) {
  for (const auto& i : v)
    if (i.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_config: valid, threshold error, empty") {
  auto cfg = parse_config("scenario = rational\ncommand = mertens\nx_max = 1000000\n");
  CHECK(cfg.scenario == "rational");
  CHECK(cfg.command == "mertens");
  CHECK(cfg.params.at("x_max") == "1000000");
  REQUIRE(cfg.built.has_value());

  auto bad = issues_of("scenario = ex52\nA = 1.5\n");
  CHECK(mentions(bad, "positivity threshold"));

  auto empty = issues_of("");
  CHECK(mentions(empty, "missing scenario"));
}

TEST_CASE("parse_config: line numbers, duplicates, overrides, sections") {
  auto dup = issues_of("scenario = rational\ncommand = count\nx_max = 10\nx_max = 20\n");
  REQUIRE_FALSE(dup.empty());
  CHECK(dup[0].where == "line 4");

  auto junk = issues_of("scenario = rational\ncommand = count\nthis is not a pair\n");
  REQUIRE_FALSE(junk.empty());
  CHECK(junk[0].where == "line 3");

  auto unknown = issues_of("scenario = rational\ncommand = count\nfrobnicate = 1\n");
  CHECK(mentions(unknown, "frobnicate"));

  auto cfg = parse_config("scenario = rational\ncommand = count\nx_max = 1000\n", {"x_max = 5000"});
  CHECK(cfg.params.at("x_max") == "5000");

  auto badset = issues_of("scenario = rational\ncommand = count\n", {"x_max = 1e900"});
  REQUIRE_FALSE(badset.empty());
  CHECK(badset[0].where == "--set 1");
}

TEST_CASE("run: mertens JSON on the integers") {
  auto cfg = parse_config("scenario = rational\ncommand = mertens\nx_max = 1000000\n");
  std::ostringstream out;
  CHECK(run(cfg, out) == kExitOk);
  auto j = nlohmann::json::parse(out.str());
  CHECK(std::abs(j["mertens"]["c_harmonic"].get<double>() + special::euler_gamma) < 1e-5);
}

TEST_CASE("run: probe of the cosine example") {
  auto cfg = parse_config("scenario = ex53\ncommand = probe\nfunction = ex53_zeta\n");
  std::ostringstream out;
  CHECK(run(cfg, out) == kExitOk);
  auto j = nlohmann::json::parse(out.str());
  bool seen = false;
  for (const auto& p : j["probe"]["points"])
    if (p["t0"].get<double>() == 1.0) {
      seen = true;
      CHECK(std::abs(p["exponent"].get<double>() + 0.5) < 0.05);
    }
  CHECK(seen);
}

TEST_CASE("run: verify on the integers exits 0") {
  auto cfg = parse_config("scenario = rational\ncommand = verify\nx_max = 1000000\n");
  std::ostringstream out;
  CHECK(run(cfg, out) == kExitOk);
}

TEST_CASE("run: count CSV is stable") {
  auto cfg = parse_config("scenario = rational\ncommand = count\nx_max = 100\nx_hi = 100\nper_decade = 4\n");
  std::ostringstream a, b;
  run(cfg, a);
  run(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("x,", 0) == 0);
}

}  // TEST_SUITE
