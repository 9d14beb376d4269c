#include "flutekit/develop.hpp"

#include <algorithm>
#include <climits>

#include "flutekit/errors.hpp"

namespace flutekit {

BoundaryPoint develop_next_vertex(const BoundaryPoint& a, const BoundaryPoint& c,
                                  const BoundaryPoint& d, const Real& s) {
  if (!s.is_finite()) throw DomainError("develop_next_vertex needs a finite shear");
  int infinities = (a.is_infinity() ? 1 : 0) + (c.is_infinity() ? 1 : 0) + (d.is_infinity() ? 1 : 0);
  if (infinities > 1) throw DomainError("at most one of a, c, d may be infinity");
  if (a == c || a == d || c == d) throw DomainError("develop_next_vertex needs distinct a, c, d");

  Guarded g;
  Real e = exp(s);
  if (d.is_infinity()) {
    // cr(a, b, c, inf) = (b - a)/(c - b)
    Real den = Real(1.0) + e;
    return BoundaryPoint(g.finish((a.value() + e * c.value()) / den));
  }
  if (a.is_infinity()) {
    // cr(inf, b, c, d) = (d - c)/(c - b)
    return BoundaryPoint(g.finish(c.value() - (d.value() - c.value()) / e));
  }
  if (c.is_infinity()) {
    // cr(a, b, inf, d) = -(b - a)/(d - a)
    return BoundaryPoint(g.finish(a.value() - e * (d.value() - a.value())));
  }
  Real dc = d.value() - c.value();
  Real da = d.value() - a.value();
  Real den = dc + e * da;
  if (den.is_zero()) {
    throw DomainError("develop_next_vertex: degenerate configuration (vanishing denominator)");
  }
  return BoundaryPoint(g.finish((a.value() * dc + e * c.value() * da) / den));
}

namespace {

// Frame map from local coordinates to the plane: a real 2x2 matrix with
// nonzero determinant (the sign alternates along the zig-zag, so this is
// deliberately not a MobiusMap).  Entries are kept near unit scale by exact
// power-of-two rescaling; the determinant is tracked multiplicatively and
// never recomputed from the entries.
struct Frame {
  Real a, b, c, d;
  Real det;

  BoundaryPoint apply(const Real& x) const {
    Real den = c * x + d;
    if (den.is_zero()) return BoundaryPoint::infinity();
    return BoundaryPoint((a * x + b) / den);
  }

  BoundaryPoint apply_inf() const {
    if (c.is_zero()) return BoundaryPoint::infinity();
    return BoundaryPoint(a / c);
  }

  void rescale() {
    long e = static_cast<long>(
        std::max(std::max(a.is_zero() ? LONG_MIN : a.exponent(), b.is_zero() ? LONG_MIN : b.exponent()),
                 std::max(c.is_zero() ? LONG_MIN : c.exponent(), d.is_zero() ? LONG_MIN : d.exponent())));
    if (e == LONG_MIN || e == 0) return;
    a = ldexp2(a, -e);
    b = ldexp2(b, -e);
    c = ldexp2(c, -e);
    d = ldexp2(d, -e);
    det = ldexp2(det, -2 * e);
  }

  // Chordal distance in the disk between the images of local points x and y,
  // via |phi(x) - phi(y)| = |x - y| |det| / (|cx+d| |cy+d|), which never
  // subtracts nearby quantities.
  Real chordal_image_gap(const Real& x, const Real& y) const {
    Real nx = hypot(a * x + b, c * x + d);
    Real ny = hypot(a * y + b, c * y + d);
    return ldexp2(abs(x - y) * abs(det) / (nx * ny), 1);
  }
};

}  // namespace

GeodesicChain develop_chain(const ShearSequence& shears, const DevelopOptions& options) {
  if (shears.size() < 2) throw InputError("develop_chain needs at least two shear entries");
  if (!shears.shears.front().is_zero()) {
    throw InputError("develop_chain expects the s_1 = 0 normalization");
  }

  // Canonical base: g_1 = (0, inf), g_2 = (inf, 1); the frame sends the
  // local triple (inf, -1, 1) to (A, B, C) = (0, inf, 1).
  Frame frame{Real(0.0), Real(2.0), Real(1.0), Real(1.0), Real(-2.0)};
  BoundaryPoint p0(Real(0.0));
  BoundaryPoint p_inf = BoundaryPoint::infinity();
  BoundaryPoint p1(Real(1.0));
  if (options.base.has_value()) {
    const MobiusMap& t = *options.base;
    Frame composed{t.a() * frame.a + t.b() * frame.c, t.a() * frame.b + t.b() * frame.d,
                   t.c() * frame.a + t.d() * frame.c, t.c() * frame.b + t.d() * frame.d,
                   t.determinant() * frame.det};
    frame = std::move(composed);
    frame.rescale();
    p0 = t(p0);
    p_inf = t(p_inf);
    p1 = t(p1);
  }

  GeodesicChain chain;
  chain.geodesics.push_back(Geodesic{p0, p_inf});
  chain.geodesics.push_back(Geodesic{p_inf, p1});
  chain.gaps.push_back(chordal_gap(p0, p_inf));
  chain.gaps.push_back(chordal_gap(p_inf, p1));

  std::uint64_t steps = shears.size() - 1;
  if (options.max_steps > 0) steps = std::min(steps, options.max_steps);

  const Real one(1.0);
  for (std::uint64_t k = 0; k < steps; ++k) {
    const std::uint64_t n = k + 2;  // shear index consumed by this step
    const Real& s_n = shears.shears[n - 1];
    const int orientation = (n % 2 == 0) ? +1 : -1;

    // New vertex in the local frame; the zig-zag flips the diagonal's
    // orientation every step, hence the alternating sign.
    Real d_loc = tanh(ldexp2(orientation > 0 ? s_n : -s_n, -1));
    Real om = one - d_loc;  // exact near the endpoints (Sterbenz)
    Real op = one + d_loc;
    if (!(om > Real(0.0)) || !(op > Real(0.0))) {
      throw PrecisionError(
          "develop_chain: the new vertex of step " + std::to_string(n) +
          " is indistinguishable from a shared endpoint at " +
          std::to_string(working_precision()) +
          "-bit precision; raise --precision-bits to continue this chain");
    }

    // Round trip through the public shear, in the frame where it is exact.
    Real recomputed = orientation > 0
                          ? shear_of_edge(BoundaryPoint(Real(-1.0)), BoundaryPoint(d_loc),
                                          BoundaryPoint(one), BoundaryPoint::infinity())
                          : shear_of_edge(BoundaryPoint(one), BoundaryPoint(d_loc),
                                          BoundaryPoint(Real(-1.0)), BoundaryPoint::infinity());
    Real err = abs(recomputed - s_n);
    chain.roundtrip_errors.push_back(err);
    chain.max_roundtrip_error = max(chain.max_roundtrip_error, err);

    // frame <- frame * psi(D), psi = [-(1-D), 1+3D; (1-D), 3+D] sending the
    // next local triple (inf, -1, 1) onto (-1, 1, D).
    Real pa = -om, pb = one + ldexp2(d_loc, 1) + d_loc, pc = om, pd = Real(3.0) + d_loc;
    Frame next{frame.a * pa + frame.b * pc, frame.a * pb + frame.b * pd,
               frame.c * pa + frame.d * pc, frame.c * pb + frame.d * pd,
               frame.det * ldexp2(-(om * op), 2)};
    next.rescale();
    if (next.det.is_zero()) {
      throw PrecisionError("develop_chain: frame determinant underflowed at step " +
                           std::to_string(n) + "; raise --precision-bits");
    }
    frame = std::move(next);

    BoundaryPoint vertex = frame.apply(one);
    chain.new_vertex_per_step.push_back(vertex);
    chain.geodesics.push_back(Geodesic{chain.geodesics.back().terminal, vertex});

    Real gap = frame.chordal_image_gap(Real(-1.0), one);
    if (!(gap > Real(0.0))) {
      throw PrecisionError("develop_chain: endpoint gap underflowed at step " + std::to_string(n));
    }
    if (gap > chain.gaps.back()) {
      // Nested intervals force nonincreasing gaps; allow rounding slack of a
      // few ulps before declaring the configuration impossible.
      Real slack = ulp_of(chain.gaps.back(), working_precision());
      if (gap > chain.gaps.back() + ldexp2(slack, 3)) {
        throw DomainError("develop_chain: nestedness violated at step " + std::to_string(n));
      }
      gap = chain.gaps.back();
    }
    chain.gaps.push_back(std::move(gap));
  }
  return chain;
}

GapSequence accumulation_gap(const GeodesicChain& chain) {
  if (chain.geodesics.empty()) return {};
  GapSequence out;
  if (chain.gaps.size() == chain.geodesics.size()) {
    out.gaps = chain.gaps;
  } else {
    out.gaps.reserve(chain.geodesics.size());
    for (const auto& g : chain.geodesics) {
      out.gaps.push_back(chordal_gap(g.initial, g.terminal));
    }
  }
  for (std::size_t i = 0; i < out.gaps.size(); ++i) {
    if (!(out.gaps[i] > Real(0.0))) {
      throw DomainError("accumulation gap must stay positive (index " + std::to_string(i + 1) +
                        ")");
    }
    if (i > 0 && out.gaps[i] > out.gaps[i - 1]) {
      throw DomainError("accumulation gap must be nonincreasing (index " + std::to_string(i + 1) +
                        ")");
    }
  }
  return out;
}

}  // namespace flutekit
