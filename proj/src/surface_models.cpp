#include "heismin/surface_models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "heismin/errors.hpp"
#include "heismin/quadrature.hpp"

namespace heismin::models {

const char* to_string(Family f) {
  switch (f) {
    case Family::Vertical: return "Vertical";
    case Family::SpecialI: return "SpecialI";
    case Family::SpecialII: return "SpecialII";
    case Family::General: return "General";
  }
  return "?";
}

const char* to_string(SurfaceType t) {
  switch (t) {
    case SurfaceType::Vertical: return "Vertical";
    case SurfaceType::SpecialI: return "SpecialI";
    case SurfaceType::SpecialII: return "SpecialII";
    case SurfaceType::TypeI: return "TypeI";
    case SurfaceType::TypeII: return "TypeII";
    case SurfaceType::TypeIII: return "TypeIII";
  }
  return "?";
}

AlphaModel AlphaModel::vertical(Interval y_domain) {
  return {Family::Vertical, {}, {}, y_domain};
}
AlphaModel AlphaModel::special_i(YFunction c1, Interval y_domain) {
  return {Family::SpecialI, std::move(c1), {}, y_domain};
}
AlphaModel AlphaModel::special_ii(YFunction c1, Interval y_domain) {
  return {Family::SpecialII, std::move(c1), {}, y_domain};
}
AlphaModel AlphaModel::general(YFunction c1, YFunction c2, Interval y_domain) {
  return {Family::General, std::move(c1), std::move(c2), y_domain};
}

lienard::AlphaSolution AlphaModel::at(double y) const {
  switch (family) {
    case Family::Vertical: return lienard::Zero{};
    case Family::SpecialI: return lienard::SpecialI{c1(y)};
    case Family::SpecialII: return lienard::SpecialII{c1(y)};
    case Family::General: return lienard::General{c1(y), c2(y)};
  }
  return lienard::Zero{};
}

lienard::Jet eval_model_jet(const AlphaModel& m, double x, double y,
                            const lienard::Tolerances& tol) {
  return lienard::eval_jet(m.at(y), x, tol);
}

double eval_model(const AlphaModel& m, double x, double y, const lienard::Tolerances& tol) {
  return eval_model_jet(m, x, y, tol).f;
}

Interval sampling_window(const Interval& d, double half_width) {
  Interval w = d;
  if (!std::isfinite(w.lo)) w.lo = std::isfinite(w.hi) ? std::min(-half_width, w.hi - 2.0 * half_width) : -half_width;
  if (!std::isfinite(w.hi)) w.hi = std::max(half_width, w.lo + 2.0 * half_width);
  return w;
}

namespace {

std::vector<double> sample_points(const Interval& w, int n) {
  std::vector<double> out;
  if (n < 2 || w.hi == w.lo) {
    out.push_back(w.mid());
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(w.lo + (w.hi - w.lo) * i / (n - 1));
  return out;
}

[[noreturn]] void mixed(const std::string& why) { throw NumericError(ErrorKind::MixedType, why); }

}  // namespace

SurfaceType classify(const AlphaModel& m, const Interval& x_window, int samples) {
  switch (m.family) {
    case Family::Vertical: return SurfaceType::Vertical;
    case Family::SpecialI: return SurfaceType::SpecialI;
    case Family::SpecialII: return SurfaceType::SpecialII;
    case Family::General: break;
  }
  std::optional<SurfaceType> seen;
  for (double y : sample_points(sampling_window(m.y_domain), samples)) {
    const double c2 = m.c2(y);
    SurfaceType t;
    if (c2 > 0.0) {
      t = SurfaceType::TypeI;
    } else if (c2 < 0.0) {
      const double r = std::sqrt(-c2);
      const double lo = -m.c1(y) - r;
      const double hi = -m.c1(y) + r;
      if (x_window.hi <= lo || x_window.lo >= hi) {
        t = SurfaceType::TypeII;
      } else if (x_window.lo >= lo && x_window.hi <= hi) {
        t = SurfaceType::TypeIII;
      } else {
        mixed("x window straddles the singular curves at y=" + std::to_string(y));
      }
    } else {
      mixed("c2 vanishes at y=" + std::to_string(y));
    }
    if (seen && *seen != t) mixed("type changes along the y domain");
    seen = t;
  }
  return *seen;
}

MetricRep metric_rep(const AlphaModel& m, const YFunction& k, const YFunction& h) {
  MetricRep rep;
  rep.gauge = MetricRep::Gauge{m, k, h};
  switch (m.family) {
    case Family::Vertical:
      rep.a = [h](double, double y) { return h(y); };
      rep.b = [k](double, double y) { return std::exp(k(y)); };
      return rep;
    case Family::SpecialI:
    case Family::SpecialII:
    case Family::General: break;
  }
  // Common factor s(x,y) with a = s h, b = s e^k.
  auto factor = [m](double x, double y) {
    const double al = eval_model(m, x, y);
    const double root = std::sqrt(1.0 + al * al);
    switch (m.family) {
      case Family::SpecialI: return al * al / root;
      case Family::SpecialII: return std::abs(al) / root;
      default: {
        const double w = x + m.c1(y);
        return 1.0 / (std::abs(w * w + m.c2(y)) * root);
      }
    }
  };
  rep.a = [factor, h](double x, double y) { return factor(x, y) * h(y); };
  rep.b = [factor, k](double x, double y) { return factor(x, y) * std::exp(k(y)); };
  return rep;
}

CoordChange CoordChange::identity() {
  return {YFunction::constant(0.0), YFunction::linear(1.0, 0.0), [](double t) { return t; }, false};
}

std::pair<double, double> CoordChange::apply(double x, double y) const {
  return {x + gamma(y), psi(y)};
}

std::pair<double, double> CoordChange::unapply(double xt, double yt) const {
  const double y = psi_inv(yt);
  return {xt - gamma(y), y};
}

CoordChange CoordChange::inverse() const {
  const CoordChange fwd = *this;
  CoordChange out;
  out.gamma = YFunction(
      [fwd](double yt) { return -fwd.gamma(fwd.psi_inv(yt)); },
      [fwd](double yt) {
        const double y = fwd.psi_inv(yt);
        return -fwd.gamma.d1(y) / fwd.psi.d1(y);
      });
  out.psi = YFunction([fwd](double yt) { return fwd.psi_inv(yt); },
                      [fwd](double yt) { return 1.0 / fwd.psi.d1(fwd.psi_inv(yt)); });
  out.psi_inv = [fwd](double y) { return fwd.psi(y); };
  out.flipped = flipped;
  return out;
}

MetricRep transform_metric(const MetricRep& rep, const CoordChange& cc) {
  MetricRep out;
  out.flipped = rep.flipped != cc.flipped;
  out.a = [rep, cc](double xt, double yt) {
    const auto [x, y] = cc.unapply(xt, yt);
    return rep.a(x, y) + rep.b(x, y) * cc.gamma.d1(y);
  };
  out.b = [rep, cc](double xt, double yt) {
    const auto [x, y] = cc.unapply(xt, yt);
    return rep.b(x, y) * cc.psi.d1(y);
  };
  return out;
}

AlphaModel NormalForm::model() const {
  switch (surface_type) {
    case SurfaceType::Vertical: return AlphaModel::vertical(y_domain);
    case SurfaceType::SpecialI: return AlphaModel::special_i(zeta1, y_domain);
    case SurfaceType::SpecialII: return AlphaModel::special_ii(zeta1, y_domain);
    default: return AlphaModel::general(zeta1, *zeta2, y_domain);
  }
}

namespace {

double pick_x_ref(const AlphaModel& m, const MetricRep& rep, const Interval& xw, double y) {
  std::vector<double> cand;
  if (xw.finite()) {
    for (double s : {0.5, 0.3, 0.7, 0.1, 0.9}) cand.push_back(xw.lo + s * xw.width());
  } else {
    for (double s : {0.0, 1.0, -1.0, 2.5, -2.5, 7.0}) cand.push_back(std::clamp(s, xw.lo, xw.hi));
  }
  for (double x : cand) {
    try {
      const double b = rep.b(x, y);
      const double al = eval_model(m, x, y);
      if (std::isfinite(b) && b != 0.0 && std::isfinite(al)) return x;
    } catch (const NumericError&) {
    }
  }
  throw NumericError(ErrorKind::SingularPoint, "no regular reference abscissa for normalization");
}

}  // namespace

std::pair<NormalForm, CoordChange> normalize(const AlphaModel& m, const MetricRep& rep,
                                             const NormalizeOptions& opts) {
  const Interval W = opts.y_window ? *opts.y_window : sampling_window(m.y_domain);
  const double y_base = std::clamp(0.0, W.lo, W.hi);

  std::function<double(double)> gp, pp;
  if (rep.gauge) {
    const YFunction k = rep.gauge->k, h = rep.gauge->h;
    gp = [k, h](double y) { return -h(y) * std::exp(-k(y)); };
    pp = [k](double y) { return std::exp(-k(y)); };
  } else {
    const double xr = opts.x_ref ? *opts.x_ref : pick_x_ref(m, rep, opts.x_window, W.mid());
    const MetricRep target = metric_rep(m, YFunction::constant(0.0), YFunction::constant(0.0));
    gp = [rep, xr](double y) { return -rep.a(xr, y) / rep.b(xr, y); };
    pp = [rep, target, xr](double y) { return target.b(xr, y) / rep.b(xr, y); };
  }

  bool neg = false, pos = false;
  for (double y : sample_points(W, 65)) {
    const double d = pp(y);
    if (d > 0.0) pos = true;
    else if (d < 0.0) neg = true;
    else throw NumericError(ErrorKind::DegenerateChart, "psi' vanishes at y=" + std::to_string(y));
  }
  if (pos && neg) throw NumericError(ErrorKind::DegenerateChart, "psi' changes sign");

  auto G = std::make_shared<const CumulativeIntegral>(gp, W, y_base);
  auto P = std::make_shared<const CumulativeIntegral>(pp, W, y_base);

  CoordChange cc;
  cc.flipped = neg;
  cc.gamma = YFunction([G](double y) { return (*G)(y); }, gp, {}, W);
  cc.psi = YFunction([P, y_base](double y) { return y_base + (*P)(y); }, pp, {}, W);
  const YFunction psi = cc.psi;
  cc.psi_inv = [psi, W](double yt) {
    return invert_monotone([&](double y) { return psi(y); }, [&](double y) { return psi.d1(y); },
                           yt, W.lo, W.hi);
  };

  NormalForm nf;
  nf.surface_type = classify(m, opts.x_window);
  nf.x_window = opts.x_window;
  const double e0 = cc.psi(W.lo), e1 = cc.psi(W.hi);
  nf.y_domain = {std::min(e0, e1), std::max(e0, e1)};

  const double s = (m.family == Family::SpecialII) ? 2.0 : 1.0;
  const CoordChange c = cc;
  if (m.family == Family::Vertical) {
    nf.zeta1 = YFunction::constant(0.0, nf.y_domain);
  } else {
    const YFunction c1 = m.c1;
    nf.zeta1 = YFunction(
        [c1, c, s](double yt) {
          const double y = c.psi_inv(yt);
          return c1(y) - s * c.gamma(y);
        },
        [c1, c, s](double yt) {
          const double y = c.psi_inv(yt);
          return (c1.d1(y) - s * c.gamma.d1(y)) / c.psi.d1(y);
        },
        {}, nf.y_domain);
  }
  if (m.family == Family::General) {
    const YFunction c2 = m.c2;
    nf.zeta2 = YFunction([c2, c](double yt) { return c2(c.psi_inv(yt)); },
                         [c2, c](double yt) {
                           const double y = c.psi_inv(yt);
                           return c2.d1(y) / c.psi.d1(y);
                         },
                         {}, nf.y_domain);
  }
  return {std::move(nf), std::move(cc)};
}

Sym2 first_fundamental_form(const NormalForm& nf, double x, double y) {
  double inv_b2 = 1.0;
  switch (nf.surface_type) {
    case SurfaceType::Vertical: break;
    case SurfaceType::SpecialI: {
      const double w = x + nf.zeta1(y);
      inv_b2 = w * w + w * w * w * w;
      break;
    }
    case SurfaceType::SpecialII: {
      const double w = 2.0 * x + nf.zeta1(y);
      inv_b2 = 1.0 + w * w;
      break;
    }
    default: {
      const double w = x + nf.zeta1(y);
      const double d = w * w + (*nf.zeta2)(y);
      inv_b2 = w * w + d * d;
    }
  }
  return {1.0, 0.0, inv_b2};
}

std::array<double, 2> connection_form(const MetricRep& rep, double x, double y, double step) {
  const double h = step * std::max(1.0, std::abs(x));
  const double a = rep.a(x, y), b = rep.b(x, y);
  const double ax = (rep.a(x + h, y) - rep.a(x - h, y)) / (2.0 * h);
  const double bx = (rep.b(x + h, y) - rep.b(x - h, y)) / (2.0 * h);
  const double w1 = (b * ax - a * bx) / b;
  const double w2 = bx / (b * b) - a * ax / b + a * a * bx / (b * b);
  return {w1, w2};
}

std::vector<Domain> maximal_domain(const YFunction& zeta1, const std::optional<YFunction>& zeta2,
                                   SurfaceType type) {
  const YFunction z1 = zeta1;
  std::vector<Domain> out;
  auto root = [zeta2](double y) { return std::sqrt(-(*zeta2)(y)); };
  switch (type) {
    case SurfaceType::Vertical:
    case SurfaceType::TypeI:
      out.push_back({type == SurfaceType::TypeI ? "V_I" : "plane",
                     [](double, double) { return true; }, {}});
      break;
    case SurfaceType::SpecialI: {
      auto edge = [z1](double y) { return -z1(y); };
      out.push_back({"U_I+", [z1](double x, double y) { return x + z1(y) > 0.0; }, {edge}});
      out.push_back({"U_I-", [z1](double x, double y) { return x + z1(y) < 0.0; }, {edge}});
      break;
    }
    case SurfaceType::SpecialII: {
      auto edge = [z1](double y) { return -0.5 * z1(y); };
      out.push_back({"U_II+", [z1](double x, double y) { return 2.0 * x + z1(y) > 0.0; }, {edge}});
      out.push_back({"U_II-", [z1](double x, double y) { return 2.0 * x + z1(y) < 0.0; }, {edge}});
      break;
    }
    case SurfaceType::TypeII:
    case SurfaceType::TypeIII: {
      if (!zeta2) throw NumericError(ErrorKind::InvalidArgument, "zeta2 required for this type");
      auto left = [z1, root](double y) { return -z1(y) - root(y); };
      auto right = [z1, root](double y) { return -z1(y) + root(y); };
      if (type == SurfaceType::TypeII) {
        out.push_back({"V_II+", [right](double x, double y) { return x > right(y); }, {right}});
        out.push_back({"V_II-", [left](double x, double y) { return x < left(y); }, {left}});
      } else {
        out.push_back({"V_III",
                       [left, right](double x, double y) { return x > left(y) && x < right(y); },
                       {left, right}});
      }
      break;
    }
  }
  return out;
}

}  // namespace heismin::models
