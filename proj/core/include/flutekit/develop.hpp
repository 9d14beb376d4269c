#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flutekit/halfplane.hpp"
#include "flutekit/real.hpp"
#include "flutekit/shears.hpp"

namespace flutekit {

// Nested chain of geodesics developed from a shear sequence.  Consecutive
// geodesics share exactly one endpoint (terminal of one = initial of the
// next) and every endpoint interval strictly contains the next.
struct GeodesicChain {
  std::vector<Geodesic> geodesics;
  std::vector<BoundaryPoint> new_vertex_per_step;  // one per development step
  // Chordal gap (disk model) between the endpoints of each geodesic,
  // computed through the frame maps so it stays fully accurate long after
  // the materialized endpoints stop being distinguishable.
  std::vector<Real> gaps;
  std::vector<Real> roundtrip_errors;  // |recomputed shear - input shear| per step
  Real max_roundtrip_error{0.0};
};

struct DevelopOptions {
  // Applied to the canonical base g_1 = (0, inf), g_2 = (inf, 1); any two
  // developments differ by such a map.
  std::optional<MobiusMap> base;
  std::uint64_t max_steps = 0;  // 0: consume the whole shear sequence
};

// Solves cr(a, b, c, d) = e^s for the missing vertex b of the ideal
// quadrilateral with diagonal (a, c).
BoundaryPoint develop_next_vertex(const BoundaryPoint& a, const BoundaryPoint& c,
                                  const BoundaryPoint& d, const Real& s);

// Develops the nested chain from s_2 onward (s_1 is the normalization).
// Throws PrecisionError when a step's new vertex is no longer
// distinguishable from the shared endpoints at the working precision.
GeodesicChain develop_chain(const ShearSequence& shears, const DevelopOptions& options = {});

struct GapSequence {
  std::vector<Real> gaps;
};

// Gap trace of a chain; validates positivity and monotonicity.  For chains
// assembled from raw geodesics (no frame data) the gaps are recomputed from
// the materialized endpoints.
GapSequence accumulation_gap(const GeodesicChain& chain);

struct RenderOptions {
  int canvas_px = 600;
  double stroke_width = 1.0;
  bool vertex_markers = true;
  bool annotate_gap = true;
  std::uint64_t max_geodesics = 0;  // 0: draw everything
};

// Draws the chain in the disk model as an SVG document: geodesics become
// circular arcs orthogonal to the unit circle.
std::string render_disk(const GeodesicChain& chain, const RenderOptions& options = {});

}  // namespace flutekit
