#pragma once

// Explicit p-minimal surfaces: the ruled construction from a generating
// curve, its invariants, the inverse problem zeta -> curve and the example
// charts (Bernstein graphs, helicoids, the conicoid).

#include <functional>
#include <utility>
#include <vector>

#include "heismin/charts.hpp"
#include "heismin/functions.hpp"
#include "heismin/heis_core.hpp"

namespace heismin::construct {

/// theta -> C(theta) with first and second derivatives.
struct GeneratingCurve {
  using Fn = std::function<Vec3(double)>;
  Fn pos;
  Fn d1;
  Fn d2;
  Interval domain{0.0, 6.283185307179586};

  static GeneratingCurve from_components(const YFunction& x, const YFunction& y,
                                         const YFunction& z, Interval domain);
};

/// Y(r, theta) = (x + r cos, y + r sin, z + r y cos - r x sin).
struct RuledChart {
  GeneratingCurve curve;
  Interval r_range{-2.0, 2.0};

  Vec3 point(double r, double theta) const;
  /// (Y_r, Y_theta)
  std::array<Vec3, 2> partials(double r, double theta) const;
  /// Chart with (u, v) = (r, theta) and e1 along Y_r.
  SurfaceChart chart() const;
};

RuledChart ruled_surface(const GeneratingCurve& c, Interval r_range = {-2.0, 2.0});

/// D = y' cos - x' sin, Q = x' cos + y' sin and Theta(C').
struct CurveData {
  double D = 0.0;
  double Q = 0.0;
  double theta_c = 0.0;
};
CurveData curve_data(const GeneratingCurve& c, double theta);

struct Invariants {
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// alpha, a, b of the ruled surface in the compatible coordinates (r, theta).
Invariants curve_invariants(const GeneratingCurve& c, double r, double theta,
                            double tol = 1e-12);

/// zeta1 = D - int Q, zeta2 = Theta(C') - D^2, with the integral taken
/// from the left end of the curve's domain.
std::pair<YFunction, YFunction> zeta_from_curve(const GeneratingCurve& c,
                                                double panels_per_unit = 512.0);

struct ImmersionReport {
  double theta = 0.0;
  bool immersed_everywhere = true;
  /// Only meaningful when !immersed_everywhere.
  double bad_radius = 0.0;
};
std::vector<ImmersionReport> immersion_locus(const GeneratingCurve& c,
                                             const std::vector<double>& thetas,
                                             double tol = 1e-12);

/// Particular curve with Q = 0: x' = -zeta1 sin, y' = zeta1 cos,
/// z' = zeta2 + zeta1^2 + y x' - x y', starting at the origin.
GeneratingCurve curve_from_zeta(const YFunction& zeta1, const YFunction& zeta2, Interval theta,
                                double panels_per_unit = 512.0);

/// Largest deviation of f - g from its best constant offset on n samples.
double offset_fit_error(const std::function<double(double)>& f,
                        const std::function<double(double)>& g, Interval dom, int n = 257);

struct PlaneGraph {
  GraphSurface graph;
  std::array<double, 2> singular_point{};
  /// Maps the graph onto u = 0.
  RigidMotion to_normal;
};
PlaneGraph bernstein_plane(double A, double B, double C);

struct SaddleGraph {
  GraphSurface graph;
  /// Rotation mapping the graph onto u = XY + g(Y).
  RigidMotion to_normal;
};
/// u = -AB x^2 + (A^2 - B^2) xy + AB y^2 + g(-Bx + Ay), A^2 + B^2 = 1.
SaddleGraph bernstein_saddle(double A, double B, const YFunction& g);

/// X(s, t) = (s cos theta(t), s sin theta(t), t); e1 along X_s.
SurfaceChart helicoid_chart(const YFunction& theta, Interval s_range = {-3.0, 3.0},
                            Interval t_range = {-3.0, 3.0});
/// alpha = s theta' / (s^2 theta' + 1), a = 0, b = 1 / ((s^2 theta' + 1) sqrt(1 + alpha^2)).
Invariants helicoid_invariants(const YFunction& theta, double s, double t);

/// X(s, t) = (cos s + t sin s, sin s - t cos s, t); e1 along X_t.
SurfaceChart conicoid_chart(Interval s_range = {-3.0, 3.0}, Interval t_range = {-3.0, 3.0});
/// alpha = t / (1 + t^2), a = b = 1 / sqrt(t^4 + 3t^2 + 1) in the
/// compatible coordinates (t, s).
Invariants conicoid_invariants(double s, double t);

}  // namespace heismin::construct
