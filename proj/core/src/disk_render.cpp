#include <cmath>
#include <sstream>

#include "flutekit/develop.hpp"

namespace flutekit {

namespace {

struct DiskPoint {
  double x;
  double y;
};

// Cayley transform z -> (z - i)/(z + i) restricted to the boundary:
// p real maps to ((p^2 - 1)/(p^2 + 1), -2p/(p^2 + 1)); infinity maps to (1, 0).
DiskPoint to_disk(const BoundaryPoint& p) {
  if (p.is_infinity()) return {1.0, 0.0};
  // Computed in extended precision: p itself can be far beyond double range.
  const Real& v = p.value();
  Real den = Real(1.0) + v * v;
  return {((v * v - Real(1.0)) / den).to_double(), (ldexp2(-v, 1) / den).to_double()};
}

void emit_arc(std::ostringstream& out, DiskPoint u, DiskPoint v, double cx, double cy,
              double scale, double stroke) {
  auto px = [&](DiskPoint p) { return cx + scale * p.x; };
  auto py = [&](DiskPoint p) { return cy - scale * p.y; };

  double cross = u.x * v.y - u.y * v.x;
  if (std::abs(cross) < 1e-12) {
    // Antipodal (or numerically collapsed) endpoints: a diameter / point.
    out << "<line x1='" << px(u) << "' y1='" << py(u) << "' x2='" << px(v) << "' y2='" << py(v)
        << "' stroke='#1f4e79' stroke-width='" << stroke << "' fill='none'/>\n";
    return;
  }
  // Center m of the circle through u, v orthogonal to the unit circle:
  // <m, u> = 1 and <m, v> = 1.
  double mx = (v.y - u.y) / cross;
  double my = (u.x - v.x) / cross;
  double r = std::sqrt(mx * mx + my * my - 1.0);
  double ta = std::atan2(u.y - my, u.x - mx);
  double tb = std::atan2(v.y - my, v.x - mx);
  double dt = tb - ta;
  while (dt > M_PI) dt -= 2.0 * M_PI;
  while (dt < -M_PI) dt += 2.0 * M_PI;
  int segs = std::max(8, static_cast<int>(std::ceil(std::abs(dt) * r * 48.0)));
  out << "<path d='M " << px(u) << ' ' << py(u);
  for (int i = 1; i <= segs; ++i) {
    double t = ta + dt * i / segs;
    DiskPoint q{mx + r * std::cos(t), my + r * std::sin(t)};
    out << " L " << px(q) << ' ' << py(q);
  }
  out << "' stroke='#1f4e79' stroke-width='" << stroke << "' fill='none'/>\n";
}

}  // namespace

std::string render_disk(const GeodesicChain& chain, const RenderOptions& options) {
  const double size = options.canvas_px;
  const double cx = size / 2.0, cy = size / 2.0;
  const double scale = size / 2.0 - 8.0;

  std::ostringstream out;
  out.precision(6);
  out << "<?xml version='1.0' encoding='UTF-8'?>\n"
      << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size << "' height='" << size
      << "' viewBox='0 0 " << size << ' ' << size << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<circle cx='" << cx << "' cy='" << cy << "' r='" << scale
      << "' stroke='black' stroke-width='1' fill='none'/>\n";

  std::size_t count = chain.geodesics.size();
  if (options.max_geodesics > 0) count = std::min<std::size_t>(count, options.max_geodesics);

  for (std::size_t i = 0; i < count; ++i) {
    DiskPoint u = to_disk(chain.geodesics[i].initial);
    DiskPoint v = to_disk(chain.geodesics[i].terminal);
    emit_arc(out, u, v, cx, cy, scale, options.stroke_width);
  }
  if (options.vertex_markers) {
    for (std::size_t i = 0; i < count; ++i) {
      for (const BoundaryPoint* p : {&chain.geodesics[i].initial, &chain.geodesics[i].terminal}) {
        DiskPoint q = to_disk(*p);
        out << "<circle cx='" << cx + scale * q.x << "' cy='" << cy - scale * q.y
            << "' r='2.2' fill='#c23b22'/>\n";
      }
    }
  }
  if (options.annotate_gap && !chain.gaps.empty()) {
    out << "<text x='12' y='" << size - 14 << "' font-family='monospace' font-size='13'>"
        << "final gap = " << chain.gaps.back().str(6) << " (" << chain.gaps.size()
        << " geodesics)</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace flutekit
