#include "heismin/lienard.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heismin/errors.hpp"

namespace heismin::lienard {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void singular(double x) {
  throw NumericError(ErrorKind::SingularPoint, "alpha has a pole at x=" + std::to_string(x));
}

}  // namespace

const char* family_name(const AlphaSolution& s) {
  return std::visit(overloaded{[](const Zero&) { return "Zero"; },
                               [](const SpecialI&) { return "SpecialI"; },
                               [](const SpecialII&) { return "SpecialII"; },
                               [](const General&) { return "General"; }},
                    s);
}

Jet eval_jet(const AlphaSolution& s, double x, const Tolerances& tol) {
  return std::visit(
      overloaded{
          [](const Zero&) { return Jet{}; },
          [&](const SpecialI& p) {
            const double w = x + p.c1;
            if (std::abs(w) <= tol.den) singular(x);
            const double a = 1.0 / w;
            return Jet{a, -a * a, 2.0 * a * a * a};
          },
          [&](const SpecialII& p) {
            const double w = 2.0 * x + p.c1;
            if (std::abs(w) <= tol.den) singular(x);
            const double a = 1.0 / w;
            return Jet{a, -2.0 * a * a, 8.0 * a * a * a};
          },
          [&](const General& p) {
            const double w = x + p.c1;
            const double d = w * w + p.c2;
            if (std::abs(d) <= tol.den) singular(x);
            return Jet{w / d, (p.c2 - w * w) / (d * d), 2.0 * w * (w * w - 3.0 * p.c2) / (d * d * d)};
          }},
      s);
}

PhaseState eval_alpha(const AlphaSolution& s, double x, const Tolerances& tol) {
  const Jet j = eval_jet(s, x, tol);
  return {j.f, j.df};
}

double lienard_residual(const Jet& j, double H_const) {
  return j.d2f + 6.0 * j.f * j.df + 4.0 * j.f * j.f * j.f + H_const * H_const * j.f;
}

double lienard_residual(const AlphaSolution& s, double x, double H_const, const Tolerances& tol) {
  return lienard_residual(eval_jet(s, x, tol), H_const);
}

double lienard_residual(const std::function<double(double)>& f, double x, double H_const,
                        double step) {
  const double h = step * std::max(1.0, std::abs(x));
  const double fm2 = f(x - 2.0 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h),
               fp2 = f(x + 2.0 * h);
  const double d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  const double d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  return lienard_residual(Jet{f0, d1, d2}, H_const);
}

PhaseState phase_velocity(const PhaseState& s, double H_const) {
  const double a = s.alpha;
  return {s.v, -(6.0 * a * s.v + 4.0 * a * a * a + H_const * H_const * a)};
}

Trajectory integrate_ivp(double alpha0, double v0, double x0, double x1, double step,
                         double H_const, const IvpOptions& opts) {
  if (!(step > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "step must be positive");
  Trajectory out;
  PhaseState y{alpha0, v0};
  double x = x0;
  out.push_back({x, y});
  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  const auto n_full = static_cast<long>(std::floor(span / step * (1.0 + 1e-12)));
  const double rest = span - static_cast<double>(n_full) * step;
  const long n = n_full + ((rest > 1e-12 * std::max(1.0, span)) ? 1 : 0);
  out.reserve(static_cast<std::size_t>(n) + 1);

  auto add = [](const PhaseState& a, const PhaseState& k, double h) {
    return PhaseState{a.alpha + h * k.alpha, a.v + h * k.v};
  };
  for (long i = 0; i < n; ++i) {
    const bool last = (i + 1 == n);
    const double h = dir * ((last && rest > 0.0 && i == n_full) ? rest : step);
    const PhaseState k1 = phase_velocity(y, H_const);
    const PhaseState k2 = phase_velocity(add(y, k1, 0.5 * h), H_const);
    const PhaseState k3 = phase_velocity(add(y, k2, 0.5 * h), H_const);
    const PhaseState k4 = phase_velocity(add(y, k3, h), H_const);
    y.alpha += h / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha);
    y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    x = last ? x1 : x0 + dir * static_cast<double>(i + 1) * step;
    if (!(std::abs(y.alpha) <= opts.overflow_guard) || !(std::abs(y.v) <= opts.overflow_guard)) {
      throw NumericError(ErrorKind::BlowUp, "trajectory left the overflow guard near x=" +
                                                std::to_string(x));
    }
    out.push_back({x, y});
  }
  return out;
}

DenseSolution::DenseSolution(const Trajectory& traj, double H_const) {
  Trajectory sorted = traj;
  std::sort(sorted.begin(), sorted.end(),
            [](const TrajectoryPoint& a, const TrajectoryPoint& b) { return a.x < b.x; });
  std::vector<double> xs, a, v, acc;
  for (const auto& p : sorted) {
    xs.push_back(p.x);
    a.push_back(p.state.alpha);
    v.push_back(p.state.v);
    acc.push_back(phase_velocity(p.state, H_const).v);
  }
  table_ = HermiteTable(std::move(xs), std::move(a), std::move(v), std::move(acc));
}

Jet DenseSolution::operator()(double x) const {
  const auto s = table_.eval(x);
  return {s.value, s.d1, s.d2};
}

AlphaSolution fit_solution(double alpha0, double v0, double x0, const Tolerances& tol) {
  if (alpha0 == 0.0 && v0 == 0.0) return Zero{};
  const double a2 = alpha0 * alpha0;
  const double s = v0 + 2.0 * a2;
  if (alpha0 != 0.0 && std::abs(s) <= tol.fit * std::max(1.0, a2)) {
    return SpecialII{1.0 / alpha0 - 2.0 * x0};
  }
  // On the general family v + 2 alpha^2 = 1 / ((x+c1)^2 + c2).
  const double den = 1.0 / s;
  const double w = alpha0 * den;
  const double c2 = den - w * w;
  if (alpha0 != 0.0 && std::abs(c2) <= tol.fit * std::max(1.0, w * w)) {
    return SpecialI{w - x0};
  }
  return General{w - x0, c2};
}

double conserved_quantity(const PhaseState& s, const Tolerances& tol) {
  if (s.v == 0.0 || s.alpha == 0.0) {
    throw NumericError(ErrorKind::DegenerateBranch, "omega undefined (alpha or v vanishes)");
  }
  const double w = 2.0 * s.alpha * s.alpha / (3.0 * s.v);
  for (double bad : {0.0, -1.0 / 3.0, -2.0 / 3.0}) {
    if (std::abs(w - bad) <= tol.fit) {
      throw NumericError(ErrorKind::DegenerateBranch,
                         "omega=" + std::to_string(w) + " lies on a special family");
    }
  }
  const double t = 3.0 * w + 1.0;
  return w * (3.0 * w + 2.0) / (t * t * s.alpha * s.alpha);
}

std::vector<PhaseSample> phase_field(double alpha_min, double alpha_max, double v_min,
                                     double v_max, int nx, int nv) {
  if (nx < 2 || nv < 2) throw NumericError(ErrorKind::InvalidArgument, "phase grid needs >= 2 points per axis");
  std::vector<PhaseSample> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nv));
  for (int i = 0; i < nx; ++i) {
    const double a = alpha_min + (alpha_max - alpha_min) * i / (nx - 1);
    for (int j = 0; j < nv; ++j) {
      const double v = v_min + (v_max - v_min) * j / (nv - 1);
      const PhaseState s{a, v};
      const PhaseState d = phase_velocity(s);
      out.push_back({s, d.alpha, d.v});
    }
  }
  return out;
}

std::vector<double> singular_points(const AlphaSolution& s) {
  return std::visit(overloaded{[](const Zero&) { return std::vector<double>{}; },
                               [](const SpecialI& p) { return std::vector<double>{-p.c1}; },
                               [](const SpecialII& p) { return std::vector<double>{-0.5 * p.c1}; },
                               [](const General& p) {
                                 if (p.c2 > 0.0) return std::vector<double>{};
                                 const double r = std::sqrt(-p.c2);
                                 return std::vector<double>{-p.c1 - r, -p.c1 + r};
                               }},
                    s);
}

}  // namespace heismin::lienard
