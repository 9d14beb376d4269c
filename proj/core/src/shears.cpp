#include "flutekit/shears.hpp"

#include "flutekit/errors.hpp"

namespace flutekit {

Real eta_length(const Real& la, const Real& lb) {
  if (!(la > Real(0.0)) || !(lb > Real(0.0))) {
    throw DomainError("eta_length requires positive cuff lengths");
  }
  Real r = log_coth(ldexp2(la, -2)) + log_coth(ldexp2(lb, -2));
  if (r.is_zero()) {
    throw PrecisionError(
        "orthogeodesic length underflows the exponent range for cuff lengths " + la.str(6) +
        ", " + lb.str(6) + "; such lengths can still be classified and synthesized, but not "
        "developed");
  }
  return r;
}

Real even_shear(const Real& eta) {
  if (!(eta > Real(0.0))) throw DomainError("even_shear requires eta > 0");
  return ldexp2(log_sinh(ldexp2(eta, -1)), 1);
}

Real odd_shear(const Real& eta_prev, const Real& eta_next, const Real& offset) {
  if (!(eta_prev > Real(0.0)) || !(eta_next > Real(0.0))) {
    throw DomainError("odd_shear requires positive orthogeodesic lengths");
  }
  return log_coth(ldexp2(eta_prev, -1)) + log_coth(ldexp2(eta_next, -1)) + offset;
}

std::vector<Real> twist_offsets(std::span<const Real> lengths, const TwistPattern& pattern) {
  std::vector<Real> offsets(lengths.size(), Real(0.0));
  for (std::size_t k = 0; k < pattern.half_indices.size(); ++k) {
    std::uint64_t n = pattern.half_indices[k];
    if (n < 1 || n > lengths.size()) {
      throw InputError("half-twist index " + std::to_string(n) + " outside the length window");
    }
    Real half = ldexp2(lengths[n - 1], -1);
    // k is 0-based here, so even k is the 1-based odd position (+l/2).
    offsets[n - 1] = (k % 2 == 0) ? half : -half;
  }
  return offsets;
}

ShearSequence shear_sequence(const FluteDescriptor& d) {
  require_valid(d);
  const std::uint64_t n_cuffs = d.truncation;

  ShearSequence out;
  out.offsets = twist_offsets(d.lengths, d.twists);
  out.extended_by_repeat =
      !d.generator.has_value() || d.generator->kind == LengthGenerator::Kind::ExplicitList;

  // eta_1..eta_{N-1} plus the off-window eta_N for the last odd shear.
  // log_coth(eta_n / 2) feeds two consecutive odd shears, so it is cached.
  out.etas.values.reserve(n_cuffs - 1);
  std::vector<Real> lc_half;
  lc_half.reserve(n_cuffs);
  Real eta_last(0.0);
  {
    Real lc_prev = log_coth(ldexp2(d.lengths[0], -2));
    for (std::uint64_t n = 1; n <= n_cuffs; ++n) {
      Real next_len = (n < n_cuffs) ? d.lengths[n] : d.length_beyond(n_cuffs + 1);
      Real lc_next = log_coth(ldexp2(next_len, -2));
      Real eta = lc_prev + lc_next;
      if (eta.is_zero()) {
        throw PrecisionError("orthogeodesic length underflows the exponent range at cuff " +
                             std::to_string(n) +
                             "; such lengths can still be classified and synthesized, but not "
                             "developed");
      }
      lc_half.push_back(log_coth(ldexp2(eta, -1)));
      if (n < n_cuffs) {
        out.etas.values.push_back(std::move(eta));
      } else {
        eta_last = std::move(eta);
      }
      lc_prev = std::move(lc_next);
    }
  }

  out.shears.reserve(2 * n_cuffs - 1);
  out.provenance.reserve(2 * n_cuffs - 1);
  out.shears.emplace_back(0.0);
  out.provenance.push_back(ShearRule::Normalized);

  auto eta_at = [&](std::uint64_t n) -> const Real& {
    return n <= out.etas.size() ? out.etas.at(n) : eta_last;
  };

  for (std::uint64_t idx = 2; idx <= 2 * n_cuffs - 1; ++idx) {
    if (idx % 2 == 0) {
      std::uint64_t n = idx / 2;
      out.shears.push_back(even_shear(eta_at(n)));
      out.provenance.push_back(ShearRule::Even);
    } else {
      std::uint64_t n = (idx + 1) / 2;
      const Real& a_n = out.offsets[n - 1];
      out.shears.push_back(lc_half[n - 2] + lc_half[n - 1] + a_n);
      if (a_n.is_zero()) {
        out.provenance.push_back(ShearRule::OddZeroTwist);
      } else if (a_n > Real(0.0)) {
        out.provenance.push_back(ShearRule::OddHalfOddK);
      } else {
        out.provenance.push_back(ShearRule::OddHalfEvenK);
      }
    }
  }
  return out;
}

}  // namespace flutekit
