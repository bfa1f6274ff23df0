#include "heismin/charts.hpp"

#include <algorithm>
#include <cmath>

namespace heismin {

std::array<Vec3, 2> SurfaceChart::tangents(double u, double v) const {
  if (partials) return partials(u, v);
  const double hu = 1e-6 * std::max(1.0, std::abs(u));
  const double hv = 1e-6 * std::max(1.0, std::abs(v));
  return {(X(u + hu, v) - X(u - hu, v)) * (0.5 / hu), (X(u, v + hv) - X(u, v - hv)) * (0.5 / hv)};
}

SurfaceChart SurfaceChart::from_graph(const GraphSurface& g) {
  SurfaceChart c;
  c.X = [g](double x, double y) { return Vec3{x, y, g.u(x, y)}; };
  c.partials = [g](double x, double y) {
    return std::array<Vec3, 2>{Vec3{1.0, 0.0, g.ux(x, y)}, Vec3{0.0, 1.0, g.uy(x, y)}};
  };
  c.du = g.wx;
  c.dv = g.wy;
  c.graph = g;
  return c;
}

}  // namespace heismin
