#pragma once

// Metric representation (a, b) from (alpha, H, k, h) by quadrature along
// the x-lines, and numerical checks of the integrability system.

#include <array>
#include <functional>

#include "heismin/functions.hpp"
#include "heismin/surface_models.hpp"

namespace heismin::fundamental {

struct Rect {
  Interval x{};
  Interval y{};
};

/// Real function of (x, y) on a rectangle.
struct Field2D {
  std::function<double(double, double)> f;
  Rect domain{};

  double operator()(double x, double y) const { return f(x, y); }
  double dx(double x, double y, double step = 1e-5) const;
  double dy(double x, double y, double step = 1e-5) const;
  double dxx(double x, double y, double step = 1e-3) const;

  static Field2D constant(double c, Rect domain = {});
};

/// Uniform nx x ny grid including the rectangle's edges.
struct Grid {
  Rect rect{};
  int nx = 50;
  int ny = 20;

  double x(int i) const;
  double y(int j) const;
};

struct ResidualStats {
  std::array<double, 3> max{};
  std::array<double, 3> mean{};
};

struct Integrals {
  /// int_{x_base}^{x} 2 alpha
  double I1 = 0.0;
  /// int_{x_base}^{x} H alpha e^{I1}
  double I2 = 0.0;
};

/// The two cumulative x-integrals on the line y = const.
Integrals cumulative_integrals(const Field2D& alpha, const Field2D& H, double x_base, double y,
                               double x, double panels_per_unit = 512.0);

/// b = e^{k} e^{-I1} / sqrt(1 + alpha^2),
/// a = e^{-I1} / sqrt(1 + alpha^2) (h - I2).
/// The x-integrals are tabulated per y-line on alpha's x-interval and
/// cached inside the returned representation.
models::MetricRep metric_from_alpha_H(const Field2D& alpha, const Field2D& H, const YFunction& k,
                                      const YFunction& h, double x_base,
                                      double panels_per_unit = 512.0);

/// Max and mean absolute values of
///   r1 = -a_x + a b_x / b - H alpha / sqrt(1 + alpha^2)
///   r2 = -b_x / b - 2 alpha - alpha alpha_x / (1 + alpha^2)
///   r3 = a H_x + b H_y - (alpha_xx + 6 alpha alpha_x + 4 alpha^3 + alpha H^2) / sqrt(1 + alpha^2)
/// over the grid.
ResidualStats integrability_residual(const Field2D& alpha, const Field2D& H,
                                     const models::MetricRep& rep, const Grid& grid);

/// Residual of alpha_xx + 6 alpha alpha_x + 4 alpha^3 + c^2 alpha over the
/// grid (reported in slot 0).
ResidualStats codazzi_residual_2d(const Field2D& alpha, double c, const Grid& grid);

}  // namespace heismin::fundamental
