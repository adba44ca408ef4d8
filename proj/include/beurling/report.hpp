#pragma once

// Serialization of results: JSON with stable key order and CSV tables, every
// number printed with 12 significant digits so that reruns diff cleanly.

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "beurling/counting.hpp"
#include "beurling/kernels.hpp"
#include "beurling/scenarios.hpp"
#include "beurling/verify.hpp"
#include "beurling/zeta.hpp"

namespace beurling {

using Json = nlohmann::ordered_json;

std::string fmt12(double v);  // "%.12g"; inf, -inf, nan spelled out
Json num(double v);           // rounded to 12 digits; non-finite values as strings
Json num(cd z);               // [re, im]

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
void write_csv(std::ostream& out, const Table& t);
Json to_json(const Table& t);

Json to_json(const ScenarioSpec& s);
Json to_json(const MertensReport& m);
Json to_json(const ProbeReport& p);
Json to_json(const DensityEstimate& d);
Json to_json(const DecayReport& d);
Json to_json(const L1Report& l);
Json to_json(const Check& c);
Json to_json(const CriterionResult& c);
Json to_json(const FlagResult& f);
Json to_json(const ScenarioVerify& v);
Json to_json(const VerifyReport& r);

// dump with two-space indent and a trailing newline
std::string dump(const Json& j);

}  // namespace beurling
