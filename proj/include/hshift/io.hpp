#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "hshift/calculus.hpp"
#include "hshift/classify.hpp"
#include "hshift/intertwine.hpp"
#include "hshift/selftest.hpp"

namespace hs {

using json = nlohmann::ordered_json;

// Doubles are rounded to 12 significant digits so output is stable across builds.
double round12(double x);

json to_json(const Window& w);
json to_json(const WindowedOperator& t);  // dense rows of [re, im] pairs, lane-major
json to_json(const HomogeneityReport& r);
json to_json(const IntertwinerReport& r, bool with_basis = false);
json to_json(const CaseOutcome& o);
json to_json(const Fingerprint& f);
json to_json(const EquivalenceVerdict& v);
json to_json(const CriterionResult& r);

// Wraps a payload with {"schema": 1, "command": ..., "config": ..., "result": ...}.
json envelope(const std::string& command, const json& config, const json& result);

// n,lane_row,lane_col,re,im for every band entry S e_n -> e_{n+1}
void write_band_csv(std::ostream& os, const WindowedOperator& s);
// rank,n,gamma
void write_fingerprint_csv(std::ostream& os, const Fingerprint& f);

}  // namespace hs
