#include "flutekit/halfplane.hpp"

#include "flutekit/errors.hpp"

namespace flutekit {

const Real& BoundaryPoint::value() const {
  if (infinite_) throw DomainError("the point at infinity has no finite coordinate");
  return finite_;
}

namespace {

void require_distinct(const BoundaryPoint& x, const BoundaryPoint& y, const char* nx,
                      const char* ny) {
  if (x == y) {
    throw DomainError(std::string("coincident ideal points: ") + nx + " = " + ny + " = " +
                      x.str());
  }
}

int count_infinite(std::initializer_list<const BoundaryPoint*> pts) {
  int n = 0;
  for (const auto* p : pts) n += p->is_infinity() ? 1 : 0;
  return n;
}

}  // namespace

MobiusMap::MobiusMap(Real a, Real b, Real c, Real d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (!(determinant() > Real(0.0))) {
    throw DomainError("MobiusMap requires a strictly positive determinant");
  }
}

MobiusMap MobiusMap::normalized() const {
  Real s = sqrt(determinant());
  return MobiusMap(a_ / s, b_ / s, c_ / s, d_ / s);
}

BoundaryPoint MobiusMap::operator()(const BoundaryPoint& p) const {
  if (p.is_infinity()) {
    if (c_.is_zero()) return BoundaryPoint::infinity();
    return BoundaryPoint(a_ / c_);
  }
  Real den = c_ * p.value() + d_;
  if (den.is_zero()) return BoundaryPoint::infinity();
  return BoundaryPoint((a_ * p.value() + b_) / den);
}

MobiusMap operator*(const MobiusMap& f, const MobiusMap& g) {
  return MobiusMap(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
                   f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_);
}

namespace {

// Matrix of the map sending (p1, p2, p3) to (0, 1, inf).
struct RawMap {
  Real a, b, c, d;
};

RawMap to_standard_triple(const std::array<BoundaryPoint, 3>& p) {
  if (count_infinite({&p[0], &p[1], &p[2]}) > 1) {
    throw DomainError("a triple may contain the point at infinity at most once");
  }
  require_distinct(p[0], p[1], "p1", "p2");
  require_distinct(p[1], p[2], "p2", "p3");
  require_distinct(p[0], p[2], "p1", "p3");
  if (p[0].is_infinity()) {
    Real k = p[1].value() - p[2].value();
    return {Real(0.0), k, Real(1.0), -p[2].value()};
  }
  if (p[1].is_infinity()) {
    return {Real(1.0), -p[0].value(), Real(1.0), -p[2].value()};
  }
  if (p[2].is_infinity()) {
    return {Real(1.0), -p[0].value(), Real(0.0), p[1].value() - p[0].value()};
  }
  Real u = p[1].value() - p[2].value();
  Real v = p[1].value() - p[0].value();
  return {u, -p[0].value() * u, v, -p[2].value() * v};
}

}  // namespace

MobiusMap MobiusMap::three_point_map(const std::array<BoundaryPoint, 3>& from,
                                     const std::array<BoundaryPoint, 3>& to) {
  Guarded g;
  RawMap s = to_standard_triple(from);
  RawMap t = to_standard_triple(to);
  // inverse(t) * s, with the scalar factor of the un-normalized adjugate
  // absorbed into the overall projective class.
  Real a = t.d * s.a - t.b * s.c;
  Real b = t.d * s.b - t.b * s.d;
  Real c = -t.c * s.a + t.a * s.c;
  Real d = -t.c * s.b + t.a * s.d;
  if (!(a * d - b * c > Real(0.0))) {
    throw DomainError("three_point_map: triples have opposite cyclic orientation");
  }
  return MobiusMap(g.finish(a), g.finish(b), g.finish(c), g.finish(d));
}

Real cross_ratio(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                 const BoundaryPoint& d) {
  if (count_infinite({&a, &b, &c, &d}) > 1) {
    throw DomainError("cross_ratio admits at most one point at infinity");
  }
  require_distinct(a, b, "a", "b");
  require_distinct(a, c, "a", "c");
  require_distinct(a, d, "a", "d");
  require_distinct(b, c, "b", "c");
  require_distinct(b, d, "b", "d");
  require_distinct(c, d, "c", "d");

  Guarded g;
  Real r;
  if (a.is_infinity()) {
    r = (d.value() - c.value()) / (c.value() - b.value());
  } else if (b.is_infinity()) {
    r = -(d.value() - c.value()) / (d.value() - a.value());
  } else if (c.is_infinity()) {
    r = -(b.value() - a.value()) / (d.value() - a.value());
  } else if (d.is_infinity()) {
    r = (b.value() - a.value()) / (c.value() - b.value());
  } else {
    r = ((b.value() - a.value()) * (d.value() - c.value())) /
        ((c.value() - b.value()) * (d.value() - a.value()));
  }
  if (!r.is_finite() || r.is_zero()) {
    throw DomainError("cross_ratio degenerated to " + r.str(6) +
                      "; points are numerically indistinguishable at this precision");
  }
  return g.finish(r);
}

namespace {

struct GeodesicShape {
  bool is_line;   // contains the point at infinity
  Real position;  // line: x-coordinate; circle: center
  Real radius;    // circle only
};

GeodesicShape shape_of(const Geodesic& g) {
  if (g.initial == g.terminal) {
    throw DomainError("degenerate geodesic: endpoints coincide at " + g.initial.str());
  }
  if (g.initial.is_infinity()) return {true, g.terminal.value(), Real(0.0)};
  if (g.terminal.is_infinity()) return {true, g.initial.value(), Real(0.0)};
  Real center = ldexp2(g.initial.value() + g.terminal.value(), -1);
  Real radius = ldexp2(abs(g.terminal.value() - g.initial.value()), -1);
  return {false, center, radius};
}

}  // namespace

Real disjoint_geodesic_distance(const Geodesic& g1, const Geodesic& g2) {
  for (const auto* p : {&g1.initial, &g1.terminal}) {
    for (const auto* q : {&g2.initial, &g2.terminal}) {
      if (*p == *q) {
        throw DomainError("geodesics share the endpoint " + p->str() +
                          " (asymptotic, distance undefined)");
      }
    }
  }
  Guarded g;
  GeodesicShape s1 = shape_of(g1);
  GeodesicShape s2 = shape_of(g2);
  Real ch;
  if (s1.is_line && s2.is_line) {
    throw DomainError("two vertical geodesics are asymptotic at infinity");
  } else if (s1.is_line || s2.is_line) {
    const GeodesicShape& line = s1.is_line ? s1 : s2;
    const GeodesicShape& circ = s1.is_line ? s2 : s1;
    ch = abs(line.position - circ.position) / circ.radius;
  } else {
    Real dd = s1.position - s2.position;
    Real u = dd * dd - s1.radius * s1.radius - s2.radius * s2.radius;
    ch = abs(u) / (ldexp2(s1.radius * s2.radius, 1));
  }
  if (!(ch > Real(1.0))) {
    throw DomainError("geodesics intersect or touch (cosh distance = " + ch.str(8) + " <= 1)");
  }
  return g.finish(acosh(ch));
}

Real shear_of_edge(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                   const BoundaryPoint& d) {
  Guarded g;
  Real cr = cross_ratio(a, b, c, d);
  if (!(cr > Real(0.0))) {
    throw DomainError(
        "shear_of_edge: cross-ratio " + cr.str(8) +
        " is not positive; the quadruple is not an embedded quadrilateral in this convention");
  }
  return g.finish(log(cr));
}

Real chordal_gap(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p == q) return Real(0.0);
  Guarded g;
  if (p.is_infinity() || q.is_infinity()) {
    const Real& v = p.is_infinity() ? q.value() : p.value();
    return g.finish(Real(2.0) / sqrt(Real(1.0) + v * v));
  }
  Real num = ldexp2(abs(p.value() - q.value()), 1);
  Real den = sqrt((Real(1.0) + p.value() * p.value()) * (Real(1.0) + q.value() * q.value()));
  return g.finish(num / den);
}

}  // namespace flutekit
