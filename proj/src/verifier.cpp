#include "heismin/verifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "heismin/errors.hpp"

namespace heismin::verify {

double pmge_residual(const GraphSurface& g, double x, double y) {
  const double p = g.uy(x, y) + x;
  const double q = g.ux(x, y) - y;
  return p * p * g.uxx(x, y) - 2.0 * p * q * g.uxy(x, y) + q * q * g.uyy(x, y);
}

FrameVector characteristic_direction(const GraphSurface& g, double x, double y, double eps) {
  const double p = g.uy(x, y) + x;
  const double q = g.ux(x, y) - y;
  const double d = std::hypot(p, q);
  if (d <= eps) throw NumericError(ErrorKind::SingularPoint, "characteristic direction undefined");
  return {p / d, -q / d, 0.0, {x, y, g.u(x, y)}};
}

CharFrame characteristic_frame(const SurfaceChart& chart, double u, double v, double eps) {
  const auto [xu, xv] = chart.tangents(u, v);
  const HPoint p = HPoint::from(chart.point(u, v));
  const double tu = contact_value(p, xu);
  const double tv = contact_value(p, xv);
  const double scale = std::max(1.0, norm(xu) * norm(xv) * (1.0 + std::abs(p.x) + std::abs(p.y)));
  if (std::abs(tu) <= eps * scale && std::abs(tv) <= eps * scale) {
    throw NumericError(ErrorKind::SingularPoint, "tangent plane is the contact plane");
  }
  double P = tv, Q = -tu;
  const Vec3 V = P * xu + Q * xv;
  const double n = std::hypot(V.x, V.y);
  if (n <= eps * scale) throw NumericError(ErrorKind::DegenerateChart, "chart is not immersed");
  double sgn = 1.0;
  if (chart.e1_hint && P * (*chart.e1_hint)[0] + Q * (*chart.e1_hint)[1] < 0.0) sgn = -1.0;
  return {p, {sgn * V.x / n, sgn * V.y / n, 0.0, p}, {sgn * P / n, sgn * Q / n}};
}

namespace {

double alpha_from(const CharFrame& cf, const Vec3& xu, const Vec3& xv) {
  const Vec3 e2 = J_rotate(cf.e1).to_coords();
  const Vec3 n = cross(xu, xv);
  const double den = dot(n, e2);
  if (den == 0.0) throw NumericError(ErrorKind::SingularPoint, "e2 is tangent");
  return -n.z / den;
}

}  // namespace

double numeric_alpha_on_chart(const SurfaceChart& chart, double u, double v) {
  const CharFrame cf = characteristic_frame(chart, u, v);
  const auto [xu, xv] = chart.tangents(u, v);
  return alpha_from(cf, xu, xv);
}

double numeric_H_on_chart(const SurfaceChart& chart, double u, double v, double step) {
  const CharFrame c = characteristic_frame(chart, u, v);
  auto e1_at = [&](double s) {
    const CharFrame f =
        characteristic_frame(chart, u + s * c.velocity[0], v + s * c.velocity[1]);
    const double sg = (f.e1.c1 * c.e1.c1 + f.e1.c2 * c.e1.c2 < 0.0) ? -1.0 : 1.0;
    return std::array<double, 2>{sg * f.e1.c1, sg * f.e1.c2};
  };
  const auto m = e1_at(-step);
  const auto p = e1_at(step);
  const double turn = std::atan2(m[0] * p[1] - m[1] * p[0], m[0] * p[0] + m[1] * p[1]);
  return turn / (2.0 * step);
}

std::array<double, 2> numeric_metric_on_chart(const SurfaceChart& chart, double u, double v) {
  const CharFrame cf = characteristic_frame(chart, u, v);
  const auto [xu, xv] = chart.tangents(u, v);
  const double al = alpha_from(cf, xu, xv);
  const Vec3 e2 = J_rotate(cf.e1).to_coords();
  const Vec3 rhs = (al * e2 + Vec3{0.0, 0.0, 1.0}) * (1.0 / std::sqrt(1.0 + al * al));
  Eigen::Matrix<double, 3, 2> M;
  M << xu.x, xv.x, xu.y, xv.y, xu.z, xv.z;
  const Eigen::Vector3d r(rhs.x, rhs.y, rhs.z);
  const Eigen::Vector2d c = M.colPivHouseholderQr().solve(r);
  return {c(0), c(1)};
}

std::vector<std::array<double, 2>> trace_characteristic(const SurfaceChart& chart, double u,
                                                        double v, double length, int steps) {
  const double h = length / steps;
  std::array<double, 2> ref = characteristic_frame(chart, u, v).velocity;
  auto vel = [&](double a, double b, const std::array<double, 2>& prev) {
    auto w = characteristic_frame(chart, a, b).velocity;
    if (w[0] * prev[0] + w[1] * prev[1] < 0.0) w = {-w[0], -w[1]};
    return w;
  };
  auto run = [&](double dir) {
    std::vector<std::array<double, 2>> out;
    std::array<double, 2> q{u, v};
    std::array<double, 2> prev{dir * ref[0], dir * ref[1]};
    for (int i = 0; i < steps; ++i) {
      const auto k1 = vel(q[0], q[1], prev);
      const auto k2 = vel(q[0] + 0.5 * h * k1[0], q[1] + 0.5 * h * k1[1], k1);
      const auto k3 = vel(q[0] + 0.5 * h * k2[0], q[1] + 0.5 * h * k2[1], k2);
      const auto k4 = vel(q[0] + h * k3[0], q[1] + h * k3[1], k3);
      q[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
      q[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
      prev = k4;
      out.push_back(q);
    }
    return out;
  };
  const auto back = run(-1.0);
  const auto fwd = run(1.0);
  std::vector<std::array<double, 2>> out(back.rbegin(), back.rend());
  out.push_back({u, v});
  out.insert(out.end(), fwd.begin(), fwd.end());
  return out;
}

PointClass classify_point(const SurfaceChart& chart, double u, double v, double step) {
  const auto pts = trace_characteristic(chart, u, v, 2.0 * step, 2);
  std::array<double, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) a[i] = numeric_alpha_on_chart(chart, pts[i][0], pts[i][1]);
  PointClass out;
  out.alpha = a[2];
  out.dalpha = (a[0] - 8.0 * a[1] + 8.0 * a[3] - a[4]) / (12.0 * step);
  lienard::Tolerances tol;
  tol.fit = 1e-6;
  out.solution = lienard::fit_solution(out.alpha, out.dalpha, 0.0, tol);
  models::AlphaModel m;
  if (const auto* s1 = std::get_if<lienard::SpecialI>(&out.solution)) {
    m = models::AlphaModel::special_i(YFunction::constant(s1->c1));
  } else if (const auto* s2 = std::get_if<lienard::SpecialII>(&out.solution)) {
    m = models::AlphaModel::special_ii(YFunction::constant(s2->c1));
  } else if (const auto* g = std::get_if<lienard::General>(&out.solution)) {
    m = models::AlphaModel::general(YFunction::constant(g->c1), YFunction::constant(g->c2));
  }
  out.type = models::classify(m, {-step, step}, 2);
  return out;
}

ChartModel model_from_chart(const SurfaceChart& chart, bool x_is_u, double x0,
                            Interval y_range) {
  auto at = [chart, x_is_u](double x, double y) {
    return x_is_u ? std::array<double, 2>{x, y} : std::array<double, 2>{y, x};
  };
  auto alpha = [chart, at](double x, double y) {
    const auto p = at(x, y);
    return numeric_alpha_on_chart(chart, p[0], p[1]);
  };
  auto phase = [alpha, x0](double y) {
    const double h = 1e-3 * std::max(1.0, std::abs(x0));
    const double v = (alpha(x0 - 2 * h, y) - 8.0 * alpha(x0 - h, y) + 8.0 * alpha(x0 + h, y) -
                      alpha(x0 + 2 * h, y)) /
                     (12.0 * h);
    return lienard::PhaseState{alpha(x0, y), v};
  };
  lienard::Tolerances tol;
  tol.fit = 1e-6;
  const lienard::PhaseState mid = phase(y_range.mid());
  const auto family = lienard::fit_solution(mid.alpha, mid.v, x0, tol);

  auto numeric = [](std::function<double(double)> f) {
    return YFunction(f, [f](double y) {
      const double h = 1e-4 * std::max(1.0, std::abs(y));
      return (f(y - 2 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2 * h)) / (12.0 * h);
    });
  };

  ChartModel out;
  if (std::holds_alternative<lienard::Zero>(family)) {
    out.model = models::AlphaModel::vertical(y_range);
  } else if (std::holds_alternative<lienard::SpecialI>(family)) {
    out.model = models::AlphaModel::special_i(
        numeric([phase, x0](double y) { return 1.0 / phase(y).alpha - x0; }), y_range);
  } else if (std::holds_alternative<lienard::SpecialII>(family)) {
    out.model = models::AlphaModel::special_ii(
        numeric([phase, x0](double y) { return 1.0 / phase(y).alpha - 2.0 * x0; }), y_range);
  } else {
    auto wd = [phase](double y) {
      const auto s = phase(y);
      const double den = 1.0 / (s.v + 2.0 * s.alpha * s.alpha);
      return std::array<double, 2>{s.alpha * den, den};
    };
    out.model = models::AlphaModel::general(
        numeric([wd, x0](double y) { return wd(y)[0] - x0; }),
        numeric([wd](double y) {
          const auto q = wd(y);
          return q[1] - q[0] * q[0];
        }),
        y_range);
  }
  const auto unit = models::metric_rep(out.model, YFunction::constant(0.0), YFunction::constant(0.0));
  auto ab = [chart, at, x_is_u, x0](double y) {
    const auto p = at(x0, y);
    const auto c = numeric_metric_on_chart(chart, p[0], p[1]);
    return x_is_u ? c : std::array<double, 2>{c[1], c[0]};
  };
  out.k = numeric([ab, unit, x0](double y) { return std::log(ab(y)[1] / unit.b(x0, y)); });
  out.h = numeric([ab, unit, x0](double y) { return ab(y)[0] / unit.b(x0, y); });
  return out;
}

namespace {

using P2 = std::array<double, 2>;

struct Eval {
  Eigen::Vector2d F;
  Eigen::Matrix2d J;
};

Eval eval_F(const GraphSurface& g, double x, double y) {
  Eval e;
  e.F << g.ux(x, y) - y, g.uy(x, y) + x;
  const double uxy = g.uxy(x, y);
  e.J << g.uxx(x, y), uxy - 1.0, uxy + 1.0, g.uyy(x, y);
  return e;
}

bool newton(const GraphSurface& g, P2& q, double tol, int max_it) {
  for (int it = 0; it <= max_it; ++it) {
    const Eval e = eval_F(g, q[0], q[1]);
    if (!e.F.allFinite()) return false;
    if (e.F.norm() <= tol) return true;
    if (it == max_it) break;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(e.J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-10);
    const Eigen::Vector2d step = svd.solve(e.F);
    q[0] -= step(0);
    q[1] -= step(1);
  }
  return false;
}

bool rank_deficient(const Eigen::Matrix2d& J, Eigen::Vector2d* kernel = nullptr) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(J, Eigen::ComputeFullV);
  const auto s = svd.singularValues();
  if (kernel) *kernel = svd.matrixV().col(1);
  return s(1) <= 1e-8 * std::max(1.0, s(0));
}

bool inside(const GraphSurface& g, const P2& q) {
  return q[0] >= g.wx.lo - 1e-9 && q[0] <= g.wx.hi + 1e-9 && q[1] >= g.wy.lo - 1e-9 &&
         q[1] <= g.wy.hi + 1e-9;
}

double dist(const P2& a, const P2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

SingularReport singular_set(const GraphSurface& g, const SingularOptions& opts) {
  SingularReport rep;
  rep.newton_tol = opts.newton_tol;
  rep.max_iterations = opts.max_iterations;
  std::vector<P2> isolated, curve_zeros;
  const int n = std::max(2, opts.grid);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      P2 q{g.wx.lo + g.wx.width() * i / (n - 1), g.wy.lo + g.wy.width() * j / (n - 1)};
      if (!newton(g, q, opts.newton_tol, opts.max_iterations)) {
        ++rep.newton_failures;
        continue;
      }
      if (!inside(g, q)) continue;
      if (rank_deficient(eval_F(g, q[0], q[1]).J)) {
        curve_zeros.push_back(q);
      } else if (std::none_of(isolated.begin(), isolated.end(),
                              [&](const P2& o) { return dist(o, q) <= 1e-6; })) {
        isolated.push_back(q);
      }
    }
  }
  for (const P2& q : isolated) {
    rep.components.push_back({SingularKind::IsolatedPoint, {q}, eval_F(g, q[0], q[1]).F.norm()});
  }

  const double h = opts.trace_step;
  const double span = g.wx.width() + g.wy.width();
  const int max_steps = static_cast<int>(4.0 * span / h) + 10;
  std::vector<bool> covered(curve_zeros.size(), false);
  for (std::size_t s = 0; s < curve_zeros.size(); ++s) {
    if (covered[s]) continue;
    const P2 start = curve_zeros[s];
    auto march = [&](double dir) {
      std::vector<P2> out;
      P2 q = start;
      Eigen::Vector2d prev;
      rank_deficient(eval_F(g, q[0], q[1]).J, &prev);
      prev *= dir;
      for (int k = 0; k < max_steps; ++k) {
        Eigen::Vector2d t;
        if (!rank_deficient(eval_F(g, q[0], q[1]).J, &t)) break;
        if (t.dot(prev) < 0.0) t = -t;
        P2 next{q[0] + h * t(0), q[1] + h * t(1)};
        if (!newton(g, next, opts.newton_tol, opts.max_iterations)) {
          ++rep.newton_failures;
          break;
        }
        if (!inside(g, next) || dist(next, q) < 0.25 * h) break;
        prev = t;
        q = next;
        out.push_back(q);
        if (k > 2 && dist(q, start) < 0.5 * h) break;
      }
      return out;
    };
    const auto fwd = march(1.0);
    const auto back = march(-1.0);
    SingularComponent comp;
    comp.kind = SingularKind::Curve;
    comp.points.assign(back.rbegin(), back.rend());
    comp.points.push_back(start);
    comp.points.insert(comp.points.end(), fwd.begin(), fwd.end());
    for (const P2& q : comp.points) {
      comp.residual = std::max(comp.residual, eval_F(g, q[0], q[1]).F.norm());
    }
    for (std::size_t t = s; t < curve_zeros.size(); ++t) {
      if (covered[t]) continue;
      for (const P2& q : comp.points) {
        if (dist(q, curve_zeros[t]) <= 1.01 * h) {
          covered[t] = true;
          break;
        }
      }
    }
    rep.components.push_back(std::move(comp));
  }
  return rep;
}

GoThroughResult go_through_check(const GraphSurface& g, std::array<double, 2> p,
                                 std::optional<std::array<double, 2>> direction) {
  const Eval e = eval_F(g, p[0], p[1]);
  if (e.F.norm() > 1e-8) throw NumericError(ErrorKind::PreconditionFailed, "point is not singular");
  if (!rank_deficient(e.J)) {
    throw NumericError(ErrorKind::PreconditionFailed, "isolated singular point");
  }
  const double uxx = e.J(0, 0), w = e.J(1, 0);
  if (uxx == 0.0 && w == 0.0) {
    throw NumericError(ErrorKind::PreconditionFailed, "u_xx and u_xy + 1 both vanish");
  }
  Eigen::Vector2d n;
  if (direction) {
    n << (*direction)[0], (*direction)[1];
  } else {
    n = (e.J.row(0).norm() >= e.J.row(1).norm()) ? Eigen::Vector2d(e.J.row(0).transpose())
                                                 : Eigen::Vector2d(e.J.row(1).transpose());
  }
  n.normalize();

  auto cosines = [&](double d) {
    const double x = p[0] + d * n(0), y = p[1] + d * n(1);
    const double a = g.uy(x, y) + x;
    const double b = g.ux(x, y) - y;
    const double D = std::hypot(a, b);
    return std::array<double, 2>{a / (D * std::sqrt(1.0 + b * b)),
                                 -b / (D * std::sqrt(1.0 + a * a))};
  };
  auto limit = [&](double side) {
    std::array<double, 2> prev{}, cur{};
    for (int k = 1; k <= 20; ++k) {
      prev = cur;
      cur = cosines(side * 0.1 * std::ldexp(1.0, -k));
    }
    return std::array<double, 2>{2.0 * cur[0] - prev[0], 2.0 * cur[1] - prev[1]};
  };
  const auto plus = limit(1.0);
  const auto minus = limit(-1.0);
  GoThroughResult r;
  r.cos_plus = plus[0];
  r.cos_minus = minus[0];
  r.cos_eta_plus = plus[1];
  r.cos_eta_minus = minus[1];
  const double root = std::hypot(uxx, w);
  r.expected_abs = std::abs(w) / root;
  r.expected_eta_abs = std::abs(uxx) / root;
  const double tol = 1e-4;
  const bool zeta_flip = std::abs(r.cos_plus + r.cos_minus) <= tol && std::abs(r.cos_plus) > tol;
  const bool eta_flip =
      std::abs(r.cos_eta_plus + r.cos_eta_minus) <= tol && std::abs(r.cos_eta_plus) > tol;
  r.flip_detected = zeta_flip || eta_flip;
  return r;
}

LegendrianCheck legendrian_line_check(const SurfaceChart& chart, int nr, int ntheta) {
  LegendrianCheck out;
  const Interval U = chart.du.finite() ? chart.du : Interval{-2.0, 2.0};
  const Interval V = chart.dv.finite() ? chart.dv : Interval{0.0, 6.283185307179586};
  const double hu = U.width() / (nr - 1);
  for (int j = 0; j < ntheta; ++j) {
    const double v = V.lo + V.width() * j / (ntheta - 1);
    for (int i = 0; i < nr; ++i) {
      const double u = U.lo + hu * i;
      const HPoint p = HPoint::from(chart.point(u, v));
      out.max_contact = std::max(out.max_contact, std::abs(contact_value(p, chart.tangents(u, v)[0])));
      if (i > 0 && i + 1 < nr) {
        const Vec3 d2 = chart.point(u + hu, v) - 2.0 * chart.point(u, v) + chart.point(u - hu, v);
        out.max_second_difference = std::max(out.max_second_difference, norm(d2));
      }
    }
  }
  return out;
}

}  // namespace heismin::verify
