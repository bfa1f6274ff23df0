#include "heismin/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "heismin/errors.hpp"
#include "heismin/quadrature.hpp"

namespace heismin::construct {

GeneratingCurve GeneratingCurve::from_components(const YFunction& x, const YFunction& y,
                                                 const YFunction& z, Interval domain) {
  GeneratingCurve c;
  c.pos = [x, y, z](double t) { return Vec3{x(t), y(t), z(t)}; };
  c.d1 = [x, y, z](double t) { return Vec3{x.d1(t), y.d1(t), z.d1(t)}; };
  c.d2 = [x, y, z](double t) { return Vec3{x.d2(t), y.d2(t), z.d2(t)}; };
  c.domain = domain;
  return c;
}

Vec3 RuledChart::point(double r, double th) const {
  const Vec3 p = curve.pos(th);
  const double c = std::cos(th), s = std::sin(th);
  return {p.x + r * c, p.y + r * s, p.z + r * (p.y * c - p.x * s)};
}

std::array<Vec3, 2> RuledChart::partials(double r, double th) const {
  const Vec3 p = curve.pos(th), d = curve.d1(th);
  const double c = std::cos(th), s = std::sin(th);
  const Vec3 yr{c, s, p.y * c - p.x * s};
  const Vec3 yt{d.x - r * s, d.y + r * c, d.z + r * (d.y * c - p.y * s - d.x * s - p.x * c)};
  return {yr, yt};
}

SurfaceChart RuledChart::chart() const {
  const RuledChart self = *this;
  SurfaceChart out;
  out.X = [self](double r, double th) { return self.point(r, th); };
  out.partials = [self](double r, double th) { return self.partials(r, th); };
  out.du = r_range;
  out.dv = curve.domain;
  out.e1_hint = std::array<double, 2>{1.0, 0.0};
  return out;
}

RuledChart ruled_surface(const GeneratingCurve& c, Interval r_range) { return {c, r_range}; }

CurveData curve_data(const GeneratingCurve& c, double th) {
  const Vec3 p = c.pos(th), d = c.d1(th);
  const double cs = std::cos(th), sn = std::sin(th);
  return {d.y * cs - d.x * sn, d.x * cs + d.y * sn, d.z + p.x * d.y - p.y * d.x};
}

Invariants curve_invariants(const GeneratingCurve& c, double r, double th, double tol) {
  const CurveData cd = curve_data(c, th);
  const double w = r + cd.D;
  const double gap = cd.theta_c - cd.D * cd.D;
  if (std::abs(w) <= tol && std::abs(gap) <= tol) {
    throw NumericError(ErrorKind::DegenerateChart, "ruled chart is not immersed here");
  }
  const double den = w * w + gap;
  if (std::abs(den) <= tol) throw NumericError(ErrorKind::SingularPoint, "alpha has a pole here");
  const double al = w / den;
  const double root = std::sqrt(1.0 + al * al);
  return {al, -cd.Q / (den * root), 1.0 / (den * root)};
}

std::pair<YFunction, YFunction> zeta_from_curve(const GeneratingCurve& c,
                                                double panels_per_unit) {
  const GeneratingCurve cc = c;
  auto q = [cc](double th) { return curve_data(cc, th).Q; };
  auto dD = [cc](double th) {
    const Vec3 d = cc.d1(th), dd = cc.d2(th);
    const double cs = std::cos(th), sn = std::sin(th);
    return dd.y * cs - d.y * sn - dd.x * sn - d.x * cs;
  };
  auto Iq = std::make_shared<const CumulativeIntegral>(q, c.domain, c.domain.lo, panels_per_unit);
  YFunction z1([cc, Iq](double th) { return curve_data(cc, th).D - (*Iq)(th); },
               [dD, q](double th) { return dD(th) - q(th); }, {}, c.domain);
  YFunction z2(
      [cc](double th) {
        const CurveData d = curve_data(cc, th);
        return d.theta_c - d.D * d.D;
      },
      [cc, dD](double th) {
        const Vec3 p = cc.pos(th), dd = cc.d2(th);
        return dd.z + p.x * dd.y - p.y * dd.x - 2.0 * curve_data(cc, th).D * dD(th);
      },
      {}, c.domain);
  return {z1, z2};
}

std::vector<ImmersionReport> immersion_locus(const GeneratingCurve& c,
                                             const std::vector<double>& thetas, double tol) {
  std::vector<ImmersionReport> out;
  out.reserve(thetas.size());
  for (double th : thetas) {
    const CurveData d = curve_data(c, th);
    const bool ok = std::abs(d.theta_c - d.D * d.D) > tol;
    out.push_back({th, ok, ok ? 0.0 : -d.D});
  }
  return out;
}

GeneratingCurve curve_from_zeta(const YFunction& zeta1, const YFunction& zeta2, Interval theta,
                                double panels_per_unit) {
  const YFunction z1 = zeta1, z2 = zeta2;
  auto dx = [z1](double t) { return -z1(t) * std::sin(t); };
  auto dy = [z1](double t) { return z1(t) * std::cos(t); };
  auto X = std::make_shared<const CumulativeIntegral>(dx, theta, theta.lo, panels_per_unit);
  auto Y = std::make_shared<const CumulativeIntegral>(dy, theta, theta.lo, panels_per_unit);
  auto dz = [z1, z2, X, Y, dx, dy](double t) {
    const double p = z1(t);
    return z2(t) + p * p + (*Y)(t)*dx(t) - (*X)(t)*dy(t);
  };
  auto Z = std::make_shared<const CumulativeIntegral>(dz, theta, theta.lo, panels_per_unit);

  GeneratingCurve c;
  c.domain = theta;
  c.pos = [X, Y, Z](double t) { return Vec3{(*X)(t), (*Y)(t), (*Z)(t)}; };
  c.d1 = [dx, dy, dz](double t) { return Vec3{dx(t), dy(t), dz(t)}; };
  c.d2 = [z1, z2, X, Y, dx, dy](double t) {
    const double p = z1(t), dp = z1.d1(t);
    const double cs = std::cos(t), sn = std::sin(t);
    const double ddx = -dp * sn - p * cs;
    const double ddy = dp * cs - p * sn;
    const double ddz = z2.d1(t) + 2.0 * p * dp + (*Y)(t)*ddx - (*X)(t)*ddy;
    return Vec3{ddx, ddy, ddz};
  };
  return c;
}

double offset_fit_error(const std::function<double(double)>& f,
                        const std::function<double(double)>& g, Interval dom, int n) {
  std::vector<double> diff(static_cast<std::size_t>(n));
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = dom.lo + (dom.hi - dom.lo) * i / (n - 1);
    diff[static_cast<std::size_t>(i)] = f(t) - g(t);
    mean += diff[static_cast<std::size_t>(i)];
  }
  mean /= n;
  double err = 0.0;
  for (double d : diff) err = std::max(err, std::abs(d - mean));
  return err;
}

PlaneGraph bernstein_plane(double A, double B, double C) {
  PlaneGraph p;
  auto zero = [](double, double) { return 0.0; };
  p.graph.u = [=](double x, double y) { return A * x + B * y + C; };
  p.graph.ux = [A](double, double) { return A; };
  p.graph.uy = [B](double, double) { return B; };
  p.graph.uxx = zero;
  p.graph.uxy = zero;
  p.graph.uyy = zero;
  p.singular_point = {-B, A};
  p.to_normal = RigidMotion::translate({B, -A, -C});
  return p;
}

SaddleGraph bernstein_saddle(double A, double B, const YFunction& g) {
  if (std::abs(A * A + B * B - 1.0) > 1e-12) {
    throw NumericError(ErrorKind::BadRotation, "A^2 + B^2 must equal 1");
  }
  SaddleGraph s;
  const YFunction gg = g;
  const double k = A * A - B * B, m = A * B;
  s.graph.u = [=](double x, double y) { return -m * x * x + k * x * y + m * y * y + gg(-B * x + A * y); };
  s.graph.ux = [=](double x, double y) { return -2.0 * m * x + k * y - B * gg.d1(-B * x + A * y); };
  s.graph.uy = [=](double x, double y) { return k * x + 2.0 * m * y + A * gg.d1(-B * x + A * y); };
  s.graph.uxx = [=](double x, double y) { return -2.0 * m + B * B * gg.d2(-B * x + A * y); };
  s.graph.uxy = [=](double x, double y) { return k - A * B * gg.d2(-B * x + A * y); };
  s.graph.uyy = [=](double x, double y) { return 2.0 * m + A * A * gg.d2(-B * x + A * y); };
  s.to_normal = RigidMotion::rotate(std::atan2(-B, A));
  return s;
}

SurfaceChart helicoid_chart(const YFunction& theta, Interval s_range, Interval t_range) {
  const YFunction th = theta;
  SurfaceChart c;
  c.X = [th](double s, double t) {
    const double a = th(t);
    return Vec3{s * std::cos(a), s * std::sin(a), t};
  };
  c.partials = [th](double s, double t) {
    const double a = th(t), da = th.d1(t);
    return std::array<Vec3, 2>{Vec3{std::cos(a), std::sin(a), 0.0},
                               Vec3{-s * da * std::sin(a), s * da * std::cos(a), 1.0}};
  };
  c.du = s_range;
  c.dv = t_range;
  c.e1_hint = std::array<double, 2>{1.0, 0.0};
  return c;
}

Invariants helicoid_invariants(const YFunction& theta, double s, double t) {
  const double d = theta.d1(t);
  const double den = s * s * d + 1.0;
  if (den == 0.0) throw NumericError(ErrorKind::SingularPoint, "alpha has a pole here");
  const double al = s * d / den;
  return {al, 0.0, 1.0 / (den * std::sqrt(1.0 + al * al))};
}

SurfaceChart conicoid_chart(Interval s_range, Interval t_range) {
  SurfaceChart c;
  c.X = [](double s, double t) {
    const double cs = std::cos(s), sn = std::sin(s);
    return Vec3{cs + t * sn, sn - t * cs, t};
  };
  c.partials = [](double s, double t) {
    const double cs = std::cos(s), sn = std::sin(s);
    return std::array<Vec3, 2>{Vec3{-sn + t * cs, cs + t * sn, 0.0}, Vec3{sn, -cs, 1.0}};
  };
  c.du = s_range;
  c.dv = t_range;
  c.e1_hint = std::array<double, 2>{0.0, 1.0};
  return c;
}

Invariants conicoid_invariants(double, double t) {
  const double v = 1.0 / std::sqrt(t * t * t * t + 3.0 * t * t + 1.0);
  return {t / (1.0 + t * t), v, v};
}

}  // namespace heismin::construct
