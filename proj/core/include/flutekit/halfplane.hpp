#pragma once

#include <array>
#include <optional>
#include <string>

#include "flutekit/real.hpp"

namespace flutekit {

// Point of the boundary circle of the upper half-plane: a finite real or
// the single point at infinity.  Immutable value type.
class BoundaryPoint {
 public:
  BoundaryPoint() : finite_(0.0), infinite_(true) {}
  explicit BoundaryPoint(Real v) : finite_(std::move(v)), infinite_(false) {}
  BoundaryPoint(double v) : BoundaryPoint(Real(v)) {}  // NOLINT

  static BoundaryPoint infinity() { return BoundaryPoint(); }

  bool is_infinity() const { return infinite_; }
  const Real& value() const;  // throws DomainError when infinite

  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.finite_ == b.finite_;
  }
  friend bool operator!=(const BoundaryPoint& a, const BoundaryPoint& b) { return !(a == b); }

  std::string str() const { return infinite_ ? "inf" : finite_.str(12); }

 private:
  Real finite_;
  bool infinite_;
};

// Orientation-preserving Möbius transformation of the boundary circle,
// stored as a 2x2 real matrix with strictly positive determinant.
class MobiusMap {
 public:
  MobiusMap(Real a, Real b, Real c, Real d);

  static MobiusMap identity() { return MobiusMap(1.0, 0.0, 0.0, 1.0); }

  // The map sending the positively-oriented triple (p1, p2, p3) to
  // (q1, q2, q3); at most one point of each triple may be infinity.
  static MobiusMap three_point_map(const std::array<BoundaryPoint, 3>& from,
                                   const std::array<BoundaryPoint, 3>& to);

  const Real& a() const { return a_; }
  const Real& b() const { return b_; }
  const Real& c() const { return c_; }
  const Real& d() const { return d_; }
  Real determinant() const { return a_ * d_ - b_ * c_; }

  // Rescaled to determinant one.
  MobiusMap normalized() const;
  MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

  BoundaryPoint operator()(const BoundaryPoint& p) const;
  friend MobiusMap operator*(const MobiusMap& f, const MobiusMap& g);

 private:
  Real a_, b_, c_, d_;
};

// Oriented geodesic of the upper half-plane, named by its two ideal
// endpoints.  The endpoints are distinct mathematically; deep into a
// collapsing chain their materialized values can round together, so the
// operations validate distinctness rather than the aggregate itself.
struct Geodesic {
  BoundaryPoint initial;
  BoundaryPoint terminal;
};

// Cross-ratio with the convention ((b-a)(d-c)) / ((c-b)(d-a)): positive
// when b separates a from c and d lies outside the arc (a, b, c).  At most
// one argument may be infinity; that case is evaluated by algebraic
// cancellation, never by substituting a large number.
Real cross_ratio(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                 const BoundaryPoint& d);

// Hyperbolic distance between two disjoint, non-asymptotic geodesics,
// computed from the centers and radii of the corresponding half-circles
// (acosh form), not from a cross-ratio.
Real disjoint_geodesic_distance(const Geodesic& g1, const Geodesic& g2);

// Shear of the geodesic (a, c) with respect to the ideal triangles
// (a, c, d) and (a, b, c): log of the cross-ratio above.  The cross-ratio
// must be positive.
Real shear_of_edge(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                   const BoundaryPoint& d);

// Chordal distance of two boundary points after the Cayley transform
// z -> (z - i)/(z + i) onto the unit circle; ranges over (0, 2].
Real chordal_gap(const BoundaryPoint& p, const BoundaryPoint& q);

}  // namespace flutekit
