#include "heismin/fundamental.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "heismin/errors.hpp"
#include "heismin/numdiff.hpp"
#include "heismin/quadrature.hpp"

namespace heismin::fundamental {

double Field2D::dx(double x, double y, double step) const {
  return fd::d1([&](double t) { return f(t, y); }, x, step, domain.x);
}

double Field2D::dy(double x, double y, double step) const {
  return fd::d1([&](double t) { return f(x, t); }, y, step, domain.y);
}

double Field2D::dxx(double x, double y, double step) const {
  return fd::d2([&](double t) { return f(t, y); }, x, step, domain.x);
}

Field2D Field2D::constant(double c, Rect domain) {
  return {[c](double, double) { return c; }, domain};
}

double Grid::x(int i) const {
  return nx < 2 ? rect.x.mid() : rect.x.lo + (rect.x.hi - rect.x.lo) * i / (nx - 1);
}

double Grid::y(int j) const {
  return ny < 2 ? rect.y.mid() : rect.y.lo + (rect.y.hi - rect.y.lo) * j / (ny - 1);
}

namespace {

struct Line {
  CumulativeIntegral I1;
  CumulativeIntegral I2;
};

Interval x_range(const Field2D& alpha, double x_base) {
  Interval r = alpha.domain.x;
  if (!r.finite()) {
    throw NumericError(ErrorKind::QuadratureFailure, "alpha needs a finite x-interval");
  }
  r.lo = std::min(r.lo, x_base);
  r.hi = std::max(r.hi, x_base);
  return r;
}

std::shared_ptr<const Line> build_line(const Field2D& alpha, const Field2D& H, double x_base,
                                       double y, double ppu) {
  const Interval r = x_range(alpha, x_base);
  CumulativeIntegral I1([alpha, y](double t) { return 2.0 * alpha(t, y); }, r, x_base, ppu);
  auto i1 = std::make_shared<const CumulativeIntegral>(I1);
  CumulativeIntegral I2(
      [alpha, H, y, i1](double t) { return H(t, y) * alpha(t, y) * std::exp((*i1)(t)); }, r,
      x_base, ppu);
  return std::make_shared<const Line>(Line{std::move(I1), std::move(I2)});
}

class LineCache {
 public:
  LineCache(Field2D alpha, Field2D H, double x_base, double ppu)
      : alpha_(std::move(alpha)), H_(std::move(H)), x_base_(x_base), ppu_(ppu) {}

  std::shared_ptr<const Line> get(double y) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = lines_.find(y);
      if (it != lines_.end()) return it->second;
    }
    auto line = build_line(alpha_, H_, x_base_, y, ppu_);
    std::lock_guard<std::mutex> lock(mu_);
    if (lines_.size() >= kMaxLines) lines_.clear();
    lines_.emplace(y, line);
    return line;
  }

 private:
  static constexpr std::size_t kMaxLines = 2048;
  Field2D alpha_, H_;
  double x_base_, ppu_;
  std::mutex mu_;
  std::map<double, std::shared_ptr<const Line>> lines_;
};

}  // namespace

Integrals cumulative_integrals(const Field2D& alpha, const Field2D& H, double x_base, double y,
                               double x, double panels_per_unit) {
  const auto line = build_line(alpha, H, x_base, y, panels_per_unit);
  return {line->I1(x), line->I2(x)};
}

models::MetricRep metric_from_alpha_H(const Field2D& alpha, const Field2D& H, const YFunction& k,
                                      const YFunction& h, double x_base,
                                      double panels_per_unit) {
  x_range(alpha, x_base);
  auto cache = std::make_shared<LineCache>(alpha, H, x_base, panels_per_unit);
  models::MetricRep rep;
  rep.a = [cache, alpha, h](double x, double y) {
    const auto line = cache->get(y);
    const double al = alpha(x, y);
    return std::exp(-line->I1(x)) / std::sqrt(1.0 + al * al) * (h(y) - line->I2(x));
  };
  rep.b = [cache, alpha, k](double x, double y) {
    const auto line = cache->get(y);
    const double al = alpha(x, y);
    return std::exp(k(y) - line->I1(x)) / std::sqrt(1.0 + al * al);
  };
  return rep;
}

namespace {

struct Accum {
  ResidualStats s;
  long n = 0;
  void add(int k, double r) {
    const double v = std::abs(r);
    s.max[k] = std::max(s.max[k], std::isfinite(v) ? v : INFINITY);
    s.mean[k] += v;
  }
  ResidualStats done() {
    if (n > 0) {
      for (double& m : s.mean) m /= static_cast<double>(n);
    }
    return s;
  }
};

}  // namespace

ResidualStats integrability_residual(const Field2D& alpha, const Field2D& H,
                                     const models::MetricRep& rep, const Grid& grid) {
  Accum acc;
  const Field2D A{rep.a, alpha.domain}, B{rep.b, alpha.domain};
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double al = alpha(x, y), hv = H(x, y);
      const double alx = alpha.dx(x, y), alxx = alpha.dxx(x, y);
      const double a = A(x, y), b = B(x, y);
      const double ax = A.dx(x, y), bx = B.dx(x, y);
      const double root = std::sqrt(1.0 + al * al);
      acc.add(0, -ax + a * bx / b - hv * al / root);
      acc.add(1, -bx / b - 2.0 * al - al * alx / (1.0 + al * al));
      acc.add(2, a * H.dx(x, y) + b * H.dy(x, y) -
                     (alxx + 6.0 * al * alx + 4.0 * al * al * al + al * hv * hv) / root);
      ++acc.n;
    }
  }
  return acc.done();
}

ResidualStats codazzi_residual_2d(const Field2D& alpha, double c, const Grid& grid) {
  Accum acc;
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double al = alpha(x, y);
      acc.add(0, alpha.dxx(x, y) + 6.0 * al * alpha.dx(x, y) + 4.0 * al * al * al + c * c * al);
      ++acc.n;
    }
  }
  return acc.done();
}

}  // namespace heismin::fundamental
