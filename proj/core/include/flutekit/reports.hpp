#pragma once

#include <string>

#include "flutekit/criteria.hpp"
#include "flutekit/develop.hpp"
#include "flutekit/end_tree.hpp"
#include "flutekit/synthesis.hpp"

namespace flutekit {

// JSON object text (stable key order) and a human-readable rendering for
// each report type.  Callers that wrap reports in a larger document parse
// the fragment back into their own tree.

std::string verdict_json(const Verdict& v);
std::string verdict_text(const Verdict& v);

std::string end_report_json(const EndReport& r);
std::string end_report_text(const EndReport& r);

std::string synthesis_plan_json(const SynthesisPlan& plan);
std::string synthesis_plan_text(const SynthesisPlan& plan);

// Delimited gap trace: one "n<TAB>gap<TAB>log_gap" line per geodesic.
std::string gap_trace_tsv(const GeodesicChain& chain);

}  // namespace flutekit
