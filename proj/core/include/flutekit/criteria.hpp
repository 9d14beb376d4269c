#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flutekit/real.hpp"
#include "flutekit/shears.hpp"
#include "flutekit/surface.hpp"

namespace flutekit {

// Alternating sums sigma_k = l_{n_k} - l_{n_{k-1}} + ... +- l_{n_1} over a
// half-twist pattern, computed by the recurrence sigma_k = l_{n_k} -
// sigma_{k-1} (which cancels exactly on paired lengths).
struct AlternatingSums {
  std::vector<Real> sigma;  // sigma_1..sigma_K
  TwistPattern pattern;
};

AlternatingSums alternating_sums(std::span<const Real> lengths, const TwistPattern& pattern);

// log l(h_n) = -(s_1+...+s_n) for odd n, +(s_1+...+s_n) for even n; the
// lengths themselves are never materialized.
struct HorocyclicLengths {
  std::vector<Real> log_values;
};

HorocyclicLengths horocyclic_lengths(const ShearSequence& s);

// log(sum of exp(log_terms[0..count))) without overflow.
Real log_sum_exp(std::span<const Real> log_terms, std::size_t count);

// Heuristic layer for an undecidable question: whether a nonnegative series
// diverges, judged from finitely many terms.  Every knob is explicit and
// reported back in the diagnostics.
struct DivergencePolicy {
  std::uint64_t window = 512;  // tail window the tests look at
  double delta = 1e-9;         // "bounded below" threshold
  double margin = 0.05;        // dead band around the critical exponent / ratio
  double resid = 0.1;          // max RMS residual for a fit to count as reliable
};

enum class SeriesCall { Divergent, Convergent, Inconclusive };

struct LinearFit {
  bool reliable = false;
  double slope = 0.0;
  double intercept = 0.0;
  double resid = 0.0;
};

struct SeriesDiagnostics {
  SeriesCall call = SeriesCall::Inconclusive;
  std::string rule;        // which test decided
  LinearFit power_fit;     // log term_k vs log k over the tail window
  LinearFit geometric_fit; // log term_k vs k over the tail window
  double tail_min_log = 0.0;
  bool block_max_persistent = false;
  std::uint64_t terms_used = 0;
  std::uint64_t window_used = 0;
  // (k, ln of the k-th partial sum) at checkpoints 10^2, 10^3, 10^4 and the
  // final index.
  std::vector<std::pair<std::uint64_t, double>> log_partial_sums;
};

// Precondition: at least policy.window terms (callers with shorter series
// shrink the window themselves and say so).
SeriesDiagnostics divergence_classify(std::span<const Real> log_terms,
                                      const DivergencePolicy& policy);

struct ConcavityResult {
  bool concave = false;
  std::optional<std::uint64_t> first_violation;  // 1-based triple index
};

// Second differences <= tolerance (relative, default 1e-12): exact
// concavity is required by the concave iff row but inputs are floating.
ConcavityResult concavity_check(std::span<const Real> lengths, double rel_tol = 1e-12);

enum class VerdictKind { Parabolic, NotParabolic, Inconclusive };
enum class CriterionRow {
  ZeroTwistIff,     // t_n = 0:            sum e^{-l_n/2}
  AllHalfSigmaIff,  // t_n = 1/2:          sum e^{-sigma_n/2}
  ConcaveHalfIff,   // t_n = 1/2, concave: sum e^{-l_n/4}
  MixedSufficient,  // t_n in {0,1/2}:     sum e^{-sigma_k/2}, sufficient only
};

const char* row_name(CriterionRow row);
const char* verdict_name(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  CriterionRow row = CriterionRow::ZeroTwistIff;
  bool iff_basis = false;      // NotParabolic is only possible when true
  std::string series_name;
  SeriesDiagnostics diagnostics;
  std::vector<std::string> assumptions;
  DivergencePolicy policy;
};

// Table-style dispatch over the twist pattern.  The effective tail window
// is min(policy.window, number of series terms); the diagnostics record it.
Verdict classify_flute(const FluteDescriptor& d, const DivergencePolicy& policy = {});

}  // namespace flutekit
