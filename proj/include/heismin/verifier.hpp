#pragma once

// First-principles numerical checks: graph PDE residual, alpha / H / (a, b)
// read off arbitrary charts, characteristic tracing, singular sets and the
// sign flip of the characteristic direction across singular curves.

#include <array>
#include <string>
#include <vector>

#include "heismin/charts.hpp"
#include "heismin/constructor.hpp"
#include "heismin/heis_core.hpp"
#include "heismin/lienard.hpp"
#include "heismin/surface_models.hpp"

namespace heismin::verify {

/// (u_y + x)^2 u_xx - 2 (u_y + x)(u_x - y) u_xy + (u_x - y)^2 u_yy
double pmge_residual(const GraphSurface& g, double x, double y);

/// e1 = ((u_y + x) e1' - (u_x - y) e2') / D.
FrameVector characteristic_direction(const GraphSurface& g, double x, double y,
                                     double eps = 1e-10);

/// Unit horizontal tangent e1 at X(u, v) and its parameter velocity.
struct CharFrame {
  HPoint p;
  FrameVector e1;
  /// (du, dv) with du X_u + dv X_v = e1.
  std::array<double, 2> velocity{};
};
CharFrame characteristic_frame(const SurfaceChart& chart, double u, double v,
                               double eps = 1e-10);

double numeric_alpha_on_chart(const SurfaceChart& chart, double u, double v);
double numeric_H_on_chart(const SurfaceChart& chart, double u, double v, double step = 1e-5);
/// Coefficients (c_u, c_v) with (alpha e2 + T) / sqrt(1 + alpha^2) = c_u X_u + c_v X_v.
std::array<double, 2> numeric_metric_on_chart(const SurfaceChart& chart, double u, double v);

/// Parameter points along the characteristic through (u, v), unit speed in
/// the adapted metric, from arclength -length to +length.
std::vector<std::array<double, 2>> trace_characteristic(const SurfaceChart& chart, double u,
                                                        double v, double length, int steps);

struct PointClass {
  lienard::AlphaSolution solution;
  models::SurfaceType type = models::SurfaceType::Vertical;
  double alpha = 0.0;
  double dalpha = 0.0;
};
/// Fit the Lienard family to alpha along the characteristic through (u, v)
/// and classify a small window around the point.
PointClass classify_point(const SurfaceChart& chart, double u, double v, double step = 1e-3);

/// alpha model and (k, h) gauge read off a chart whose parameters are
/// compatible coordinates (e1 = d/dx). x is the u parameter when x_is_u,
/// otherwise v. The family is fixed by a fit at the middle of y_range; the
/// coefficients are then re-fitted at (x0, y) on demand.
struct ChartModel {
  models::AlphaModel model;
  YFunction k;
  YFunction h;
};
ChartModel model_from_chart(const SurfaceChart& chart, bool x_is_u, double x0, Interval y_range);

enum class SingularKind { IsolatedPoint, Curve };

struct SingularComponent {
  SingularKind kind = SingularKind::IsolatedPoint;
  std::vector<std::array<double, 2>> points;
  /// Largest |F| over the component's points.
  double residual = 0.0;
};

struct SingularReport {
  std::vector<SingularComponent> components;
  int newton_failures = 0;
  double newton_tol = 1e-12;
  int max_iterations = 50;
};

struct SingularOptions {
  int grid = 41;
  double newton_tol = 1e-12;
  int max_iterations = 50;
  /// Spacing of traced curve samples.
  double trace_step = 0.05;
};

/// Zeros of F = (u_x - y, u_y + x) on the graph window.
SingularReport singular_set(const GraphSurface& g, const SingularOptions& opts = {});

struct GoThroughResult {
  double cos_plus = 0.0;
  double cos_minus = 0.0;
  double expected_abs = 0.0;
  double cos_eta_plus = 0.0;
  double cos_eta_minus = 0.0;
  double expected_eta_abs = 0.0;
  bool flip_detected = false;
};

/// Limits of the angle cosines between e1 and X_x (and X_y) approaching a
/// point of a singular curve from both sides along `direction` (defaults to
/// the normal of the curve).
GoThroughResult go_through_check(const GraphSurface& g, std::array<double, 2> p,
                                 std::optional<std::array<double, 2>> direction = {});

struct LegendrianCheck {
  double max_contact = 0.0;
  double max_second_difference = 0.0;
};
LegendrianCheck legendrian_line_check(const SurfaceChart& chart, int nr = 9, int ntheta = 17);

}  // namespace heismin::verify
