#pragma once

#include "fredop/chains.hpp"
#include "fredop/family.hpp"
#include "fredop/regmem.hpp"

#include "json.hpp"

namespace fredop {

// Insertion-ordered JSON keeps serialized output byte-stable across runs.
using Json = nlohmann::ordered_json;

// Rationals travel as strings ("p/q" or "p"); integer JSON numbers are also
// accepted on input, floating point is rejected.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j, const std::string& ctx);

Json mat_to_json(const Mat& m);                            // array of row arrays
Mat mat_from_json(const Json& j, const std::string& ctx);  // rows of equal length

Json operator_to_json(const Operator& t);
Operator operator_from_json(const Json& j, const std::string& ctx = "operator");

Json space_to_json(const ParamSpace& p);
ParamSpace space_from_json(const Json& j, const std::string& ctx = "space");

Json family_to_json(const OpFamily& f);
OpFamily family_from_json(const Json& j, const std::string& ctx = "family");

Json homotopy_to_json(const Homotopy& h);
Homotopy homotopy_from_json(const Json& j, const std::string& ctx = "homotopy");

Json ratspec_to_json(const RatSpectrumMatrix& t);
// Validates the eigenvalue certificate against the characteristic polynomial.
RatSpectrumMatrix ratspec_from_json(const Json& j, const std::string& ctx = "spectrum matrix");

// Scalar result values: numbers when finite; "inf" / "-inf" / "infinite" /
// "exceeds(N)" / "yes" / "no" / "unknown(N)" otherwise.
Json extnat_to_json(const ExtNat& v);
Json extint_to_json(const ExtInt& v);
Json verdict_to_json(const Verdict& v);
Json chain_to_json(const ChainResult& c);

Json index_map_to_json(const IndexMap& m); // {"components": n, "index": {...}}
Json report_to_json(const SuiteReport& r);
Json smt_to_json(const SmtReport& r);
Json homotopy_report_to_json(const HomotopyReport& r);
Json probe_report_to_json(const ProbeReport& r);

// Family files carry "space"/"ops"; operator files carry "type".
bool looks_like_family(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace fredop
