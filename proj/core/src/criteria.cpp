#include "flutekit/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "flutekit/errors.hpp"

namespace flutekit {

AlternatingSums alternating_sums(std::span<const Real> lengths, const TwistPattern& pattern) {
  if (pattern.empty()) {
    throw DomainError("alternating_sums needs a nonempty half-twist pattern");
  }
  AlternatingSums out;
  out.pattern = pattern;
  out.sigma.reserve(pattern.half_indices.size());
  Real prev(0.0);
  for (std::uint64_t n : pattern.half_indices) {
    if (n < 1 || n > lengths.size()) {
      throw InputError("half-twist index " + std::to_string(n) + " outside the length window");
    }
    Real cur = lengths[n - 1] - prev;
    out.sigma.push_back(cur);
    prev = out.sigma.back();
  }
  return out;
}

HorocyclicLengths horocyclic_lengths(const ShearSequence& s) {
  if (s.shears.empty() || !s.shears.front().is_zero()) {
    throw DomainError("horocyclic_lengths expects the s_1 = 0 normalization");
  }
  HorocyclicLengths out;
  out.log_values.reserve(s.shears.size());
  Real prefix(0.0);
  for (std::size_t i = 0; i < s.shears.size(); ++i) {
    prefix += s.shears[i];
    const bool odd = (i % 2 == 0);  // 1-based index i+1
    out.log_values.push_back(odd ? -prefix : prefix);
  }
  return out;
}

Real log_sum_exp(std::span<const Real> log_terms, std::size_t count) {
  count = std::min(count, log_terms.size());
  if (count == 0) throw DomainError("log_sum_exp of an empty range");
  Guarded g;
  Real m = log_terms[0];
  for (std::size_t i = 1; i < count; ++i) m = max(m, log_terms[i]);
  Real acc(0.0);
  for (std::size_t i = 0; i < count; ++i) acc += exp(log_terms[i] - m);
  return g.finish(m + log(acc));
}

namespace {

double to_clamped_double(const Real& x) {
  double v = x.to_double();
  if (std::isinf(v)) v = std::copysign(1e300, v);
  return v;
}

// Least squares of y against x in extended precision; the residual is the
// RMS of the fit residuals.
LinearFit fit_line(const std::vector<Real>& xs, const std::vector<Real>& ys) {
  LinearFit f;
  const std::size_t n = xs.size();
  if (n < 8) return f;
  Guarded g;
  Real mx(0.0), my(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  Real nn(static_cast<unsigned long>(n));
  mx /= nn;
  my /= nn;
  Real sxx(0.0), sxy(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Real dx = xs[i] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[i] - my);
  }
  if (sxx.is_zero()) return f;
  Real slope = sxy / sxx;
  Real intercept = my - slope * mx;
  Real ss(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Real r = ys[i] - (slope * xs[i] + intercept);
    ss += r * r;
  }
  f.reliable = true;
  f.slope = to_clamped_double(slope);
  f.intercept = to_clamped_double(intercept);
  f.resid = to_clamped_double(sqrt(ss / nn));
  return f;
}

}  // namespace

SeriesDiagnostics divergence_classify(std::span<const Real> log_terms,
                                      const DivergencePolicy& policy) {
  if (log_terms.size() < policy.window) {
    throw DomainError("divergence_classify: " + std::to_string(log_terms.size()) +
                      " terms but the policy window is " + std::to_string(policy.window));
  }
  SeriesDiagnostics d;
  d.terms_used = log_terms.size();
  d.window_used = std::min<std::uint64_t>(policy.window, log_terms.size());
  const std::size_t n = log_terms.size();
  const std::size_t w = static_cast<std::size_t>(d.window_used);
  const std::size_t start = n - w;

  for (std::uint64_t cp : {std::uint64_t{100}, std::uint64_t{1000}, std::uint64_t{10000}}) {
    if (cp < n) {
      d.log_partial_sums.emplace_back(cp, to_clamped_double(log_sum_exp(log_terms, cp)));
    }
  }
  d.log_partial_sums.emplace_back(n, to_clamped_double(log_sum_exp(log_terms, n)));

  std::vector<Real> logk, k_lin, y;
  logk.reserve(w);
  k_lin.reserve(w);
  y.reserve(w);
  Real tail_min = log_terms[start];
  for (std::size_t i = start; i < n; ++i) {
    k_lin.push_back(Real(static_cast<unsigned long>(i + 1)));
    logk.push_back(log(Real(static_cast<unsigned long>(i + 1))));
    y.push_back(log_terms[i]);
    tail_min = min(tail_min, log_terms[i]);
  }
  d.tail_min_log = to_clamped_double(tail_min);
  d.power_fit = fit_line(logk, y);
  d.geometric_fit = fit_line(k_lin, y);

  const Real log_delta = log(Real(policy.delta));

  // Block persistence: the tail is split into four blocks; terms above delta
  // must appear in every block and the block maxima must not trend down.
  bool persistent = w >= 4;
  if (persistent) {
    std::vector<Real> block_max;
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t lo = start + (w * b) / 4;
      std::size_t hi = start + (w * (b + 1)) / 4;
      Real m = log_terms[lo];
      for (std::size_t i = lo + 1; i < hi; ++i) m = max(m, log_terms[i]);
      block_max.push_back(m);
      if (!(m >= log_delta)) persistent = false;
    }
    if (persistent) {
      Real tol = Real(policy.margin) * max(Real(1.0), abs(block_max.front()));
      if (block_max.back() < block_max.front() - tol) persistent = false;
    }
  }
  d.block_max_persistent = persistent;

  if (d.power_fit.reliable && d.power_fit.resid < policy.resid) {
    if (d.power_fit.slope > -1.0 - policy.margin) {
      d.call = SeriesCall::Divergent;
      d.rule = "power fit: slope above the critical exponent -1 (boundary resolves divergent)";
    } else {
      d.call = SeriesCall::Convergent;
      d.rule = "power fit: slope below -1 - margin";
    }
    return d;
  }
  if (d.geometric_fit.reliable && d.geometric_fit.resid < policy.resid) {
    double ratio = std::exp(d.geometric_fit.slope);
    if (ratio < 1.0 - policy.margin) {
      d.call = SeriesCall::Convergent;
      d.rule = "geometric tail: ratio below 1 - margin";
      return d;
    }
  }
  if (d.block_max_persistent) {
    d.call = SeriesCall::Divergent;
    d.rule = "bounded below: terms above delta persist across the tail window";
    return d;
  }
  d.call = SeriesCall::Inconclusive;
  d.rule = "no reliable structure detected in the tail window";
  return d;
}

ConcavityResult concavity_check(std::span<const Real> lengths, double rel_tol) {
  if (lengths.size() < 3) throw DomainError("concavity_check needs at least 3 terms");
  for (std::size_t i = 1; i + 1 < lengths.size(); ++i) {
    Real second = lengths[i + 1] - ldexp2(lengths[i], 1) + lengths[i - 1];
    Real tol = Real(rel_tol) * max(Real(1.0), abs(lengths[i + 1]));
    if (second > tol) {
      return {false, i};  // 1-based index of the first triple
    }
  }
  return {true, std::nullopt};
}

const char* row_name(CriterionRow row) {
  switch (row) {
    case CriterionRow::ZeroTwistIff: return "zero-twist";
    case CriterionRow::AllHalfSigmaIff: return "all-half sigma";
    case CriterionRow::ConcaveHalfIff: return "all-half concave";
    case CriterionRow::MixedSufficient: return "mixed twists";
  }
  return "?";
}

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Parabolic: return "Parabolic";
    case VerdictKind::NotParabolic: return "NotParabolic";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

DivergencePolicy clamped_policy(const DivergencePolicy& policy, std::size_t terms) {
  DivergencePolicy p = policy;
  p.window = std::min<std::uint64_t>(p.window, terms);
  if (p.window == 0) p.window = 1;
  return p;
}

Verdict from_series(std::vector<Real> log_terms, CriterionRow row, bool iff,
                    std::string series_name, const DivergencePolicy& policy) {
  Verdict v;
  v.row = row;
  v.iff_basis = iff;
  v.series_name = std::move(series_name);
  v.policy = clamped_policy(policy, log_terms.size());
  v.diagnostics = divergence_classify(log_terms, v.policy);
  switch (v.diagnostics.call) {
    case SeriesCall::Divergent:
      v.kind = VerdictKind::Parabolic;
      break;
    case SeriesCall::Convergent:
      v.kind = iff ? VerdictKind::NotParabolic : VerdictKind::Inconclusive;
      break;
    case SeriesCall::Inconclusive:
      v.kind = VerdictKind::Inconclusive;
      break;
  }
  return v;
}

}  // namespace

Verdict classify_flute(const FluteDescriptor& d, const DivergencePolicy& policy) {
  require_valid(d);
  const auto& lengths = d.lengths;

  if (d.twists.empty()) {
    std::vector<Real> terms;
    terms.reserve(lengths.size());
    for (const auto& l : lengths) terms.push_back(ldexp2(-l, -1));
    return from_series(std::move(terms), CriterionRow::ZeroTwistIff, true,
                       "sum exp(-l_n/2), n = 1.." + std::to_string(lengths.size()), policy);
  }

  if (!d.twists.declared_infinite) {
    throw RefusalError(
        "the half-twist criteria require an infinite half-twist set; this descriptor declares "
        "a finite one (set declared_infinite or use a rule-based pattern)");
  }

  if (d.twists.is_all(d.truncation)) {
    auto conc = concavity_check(lengths);
    if (conc.concave) {
      std::vector<Real> terms;
      terms.reserve(lengths.size());
      for (const auto& l : lengths) terms.push_back(ldexp2(-l, -2));
      Verdict v = from_series(std::move(terms), CriterionRow::ConcaveHalfIff, true,
                              "sum exp(-l_n/4), n = 1.." + std::to_string(lengths.size()), policy);
      v.assumptions.push_back("verdict conditional on the declared-infinite half-twist pattern");
      if (v.kind != VerdictKind::Inconclusive) return v;
      // Inconclusive on the concave row: the sigma row is also an iff here.
    }
    AlternatingSums sums = alternating_sums(lengths, d.twists);
    std::vector<Real> terms;
    terms.reserve(sums.sigma.size());
    for (const auto& s : sums.sigma) terms.push_back(ldexp2(-s, -1));
    Verdict v = from_series(std::move(terms), CriterionRow::AllHalfSigmaIff, true,
                            "sum exp(-sigma_n/2), n = 1.." + std::to_string(sums.sigma.size()),
                            policy);
    v.assumptions.push_back(
        "the all-half row's sigma_n is taken to be the alternating sum with n_k = k");
    v.assumptions.push_back("verdict conditional on the declared-infinite half-twist pattern");
    return v;
  }

  AlternatingSums sums = alternating_sums(lengths, d.twists);
  std::vector<Real> terms;
  terms.reserve(sums.sigma.size());
  for (const auto& s : sums.sigma) terms.push_back(ldexp2(-s, -1));
  Verdict v = from_series(std::move(terms), CriterionRow::MixedSufficient, false,
                          "sum exp(-sigma_k/2), k = 1.." + std::to_string(sums.sigma.size()),
                          policy);
  v.assumptions.push_back(
      "mixed-twist criterion is sufficient only: divergence certifies parabolicity, "
      "convergence decides nothing");
  v.assumptions.push_back("verdict conditional on the declared-infinite half-twist pattern");
  return v;
}

}  // namespace flutekit
