#pragma once

// Surface containers shared by the constructor and the verifier.

#include <array>
#include <functional>
#include <optional>

#include "heismin/functions.hpp"
#include "heismin/heis_core.hpp"

namespace heismin {

/// Graph z = u(x, y) with first and second partials.
struct GraphSurface {
  using Fn = std::function<double(double, double)>;
  Fn u, ux, uy, uxx, uxy, uyy;
  Interval wx{-5.0, 5.0};
  Interval wy{-5.0, 5.0};
};

/// Parametrized surface (u, v) -> X(u, v) in H1.
struct SurfaceChart {
  using Map = std::function<Vec3(double, double)>;
  using Partials = std::function<std::array<Vec3, 2>(double, double)>;

  Map X;
  /// (X_u, X_v). Central differences (step 1e-6 x scale) when empty.
  Partials partials;
  Interval du{};
  Interval dv{};
  std::optional<GraphSurface> graph;
  /// Parameter direction e1 should point along; when unset e1 is taken
  /// along Theta(X_v) X_u - Theta(X_u) X_v.
  std::optional<std::array<double, 2>> e1_hint;

  Vec3 point(double u, double v) const { return X(u, v); }
  std::array<Vec3, 2> tangents(double u, double v) const;

  static SurfaceChart from_graph(const GraphSurface& g);
};

}  // namespace heismin
