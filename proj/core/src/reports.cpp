#include "flutekit/reports.hpp"

#include <json.hpp>
#include <sstream>

namespace flutekit {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* call_name(SeriesCall c) {
  switch (c) {
    case SeriesCall::Divergent: return "Divergent";
    case SeriesCall::Convergent: return "Convergent";
    case SeriesCall::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ordered_json fit_json(const LinearFit& f) {
  return ordered_json{{"reliable", f.reliable},
                      {"slope", f.slope},
                      {"intercept", f.intercept},
                      {"rms_residual", f.resid}};
}

ordered_json diagnostics_json(const SeriesDiagnostics& d) {
  ordered_json partial = ordered_json::array();
  for (const auto& [k, v] : d.log_partial_sums) {
    partial.push_back(ordered_json{{"terms", k}, {"log_partial_sum", v}});
  }
  return ordered_json{{"call", call_name(d.call)},
                      {"rule", d.rule},
                      {"terms", d.terms_used},
                      {"tail_window", d.window_used},
                      {"power_fit", fit_json(d.power_fit)},
                      {"geometric_fit", fit_json(d.geometric_fit)},
                      {"tail_min_log", d.tail_min_log},
                      {"block_max_persistent", d.block_max_persistent},
                      {"partial_sums", partial}};
}

ordered_json policy_json(const DivergencePolicy& p) {
  return ordered_json{
      {"window", p.window}, {"delta", p.delta}, {"margin", p.margin}, {"resid", p.resid}};
}

ordered_json verdict_to_ordered_json(const Verdict& v) {
  ordered_json assumptions = ordered_json::array();
  for (const auto& a : v.assumptions) assumptions.push_back(a);
  return ordered_json{{"verdict", verdict_name(v.kind)},
                      {"row", row_name(v.row)},
                      {"basis", v.iff_basis ? "iff-row" : "sufficient-row"},
                      {"series", v.series_name},
                      {"policy", policy_json(v.policy)},
                      {"diagnostics", diagnostics_json(v.diagnostics)},
                      {"assumptions", assumptions}};
}

ordered_json end_report_to_ordered_json(const EndReport& r) {
  ordered_json children = ordered_json::array();
  for (const auto& c : r.children) children.push_back(end_report_to_ordered_json(c));
  ordered_json out{{"node_kind", r.node_kind},
                   {"verdict", verdict_to_ordered_json(r.verdict)},
                   {"beta_bound_checked", r.beta_bound_checked},
                   {"aggregate", verdict_name(r.aggregate)},
                   {"children", children}};
  if (!r.name.empty()) out["name"] = r.name;
  if (r.attach_at > 0) out["attach_at"] = r.attach_at;
  return out;
}

void end_report_text_impl(const EndReport& r, int depth, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << "- " << (r.name.empty() ? r.node_kind : r.name + " (" + r.node_kind + ")");
  if (r.attach_at > 0) out << " @beta_" << r.attach_at;
  out << ": " << verdict_name(r.verdict.kind) << " [" << row_name(r.verdict.row) << "]";
  if (!r.children.empty()) out << "  => aggregate " << verdict_name(r.aggregate);
  out << "\n";
  for (const auto& c : r.children) end_report_text_impl(c, depth + 1, out);
}

}  // namespace

std::string verdict_json(const Verdict& v) { return verdict_to_ordered_json(v).dump(2); }

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << "verdict: " << verdict_name(v.kind) << "\n"
      << "row:     " << row_name(v.row) << " (" << (v.iff_basis ? "iff" : "sufficient only")
      << ")\n"
      << "series:  " << v.series_name << "\n"
      << "call:    " << call_name(v.diagnostics.call) << " via " << v.diagnostics.rule << "\n";
  out << "tail window: " << v.diagnostics.window_used << " of " << v.diagnostics.terms_used
      << " terms\n";
  if (v.diagnostics.power_fit.reliable) {
    out << "power fit:   slope " << v.diagnostics.power_fit.slope << ", rms residual "
        << v.diagnostics.power_fit.resid << "\n";
  }
  if (v.diagnostics.geometric_fit.reliable) {
    out << "geometric:   log-ratio " << v.diagnostics.geometric_fit.slope << ", rms residual "
        << v.diagnostics.geometric_fit.resid << "\n";
  }
  out << "partial sums (log):";
  for (const auto& [k, s] : v.diagnostics.log_partial_sums) {
    out << "  S_" << k << "=" << s;
  }
  out << "\n";
  for (const auto& a : v.assumptions) out << "note: " << a << "\n";
  return out.str();
}

std::string end_report_json(const EndReport& r) { return end_report_to_ordered_json(r).dump(2); }

std::string end_report_text(const EndReport& r) {
  std::ostringstream out;
  out << "aggregate verdict: " << verdict_name(r.aggregate) << "\n";
  end_report_text_impl(r, 0, out);
  return out.str();
}

std::string synthesis_plan_json(const SynthesisPlan& plan) {
  ordered_json mods = ordered_json::array();
  for (std::size_t i = 0; i < plan.modified_indices.size(); ++i) {
    mods.push_back(ordered_json{{"index", plan.modified_indices[i]},
                                {"before", plan.before_after[i].first.str()},
                                {"after", plan.before_after[i].second.str()}});
  }
  ordered_json out{{"mode", plan.mode == SynthesisPlan::Mode::Raise ? "raise" : "lower"},
                   {"pairs_used", plan.pairs_used},
                   {"modified", mods}};
  if (plan.trailing_unpaired.has_value()) {
    out["trailing_unpaired_index"] = *plan.trailing_unpaired;
  } else {
    out["trailing_unpaired_index"] = nullptr;
  }
  return out.dump(2);
}

std::string synthesis_plan_text(const SynthesisPlan& plan) {
  std::ostringstream out;
  out << "mode: " << (plan.mode == SynthesisPlan::Mode::Raise ? "raise" : "lower") << ", pairs: "
      << plan.pairs_used;
  if (plan.trailing_unpaired.has_value()) {
    out << ", trailing unpaired half-twist at " << *plan.trailing_unpaired << " left unmodified";
  }
  out << "\n";
  for (std::size_t i = 0; i < plan.modified_indices.size(); ++i) {
    out << "  l_" << plan.modified_indices[i] << ": " << plan.before_after[i].first.str(10)
        << " -> " << plan.before_after[i].second.str(10) << "\n";
  }
  if (plan.modified_indices.empty()) out << "  (no entries changed)\n";
  return out.str();
}

std::string gap_trace_tsv(const GeodesicChain& chain) {
  std::ostringstream out;
  out << "n\tgap\tlog_gap\n";
  for (std::size_t i = 0; i < chain.gaps.size(); ++i) {
    out << (i + 1) << '\t' << chain.gaps[i].str(12) << '\t' << log(chain.gaps[i]).str(12) << '\n';
  }
  return out.str();
}

}  // namespace flutekit
