#include "heismin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "heismin/errors.hpp"

namespace heismin {

double simpson(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

double composite_simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 1) n = 1;
  const double h = (b - a) / n;
  double sum = 0.0;
  double left = f(a);
  for (int i = 0; i < n; ++i) {
    const double x0 = a + i * h;
    const double x1 = (i + 1 == n) ? b : a + (i + 1) * h;
    const double right = f(x1);
    sum += (x1 - x0) / 6.0 * (left + 4.0 * f(0.5 * (x0 + x1)) + right);
    left = right;
  }
  return sum;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, Interval range,
                                       double base, double panels_per_unit)
    : f_(std::move(f)), range_(range), base_(base) {
  if (!range.finite() || !(range.hi > range.lo)) {
    throw NumericError(ErrorKind::InvalidArgument, "cumulative integral needs a finite range");
  }
  h_ = 1.0 / panels_per_unit;
  const double lo = std::min(range.lo, base);
  const double hi = std::max(range.hi, base);
  const auto k_lo = static_cast<long>(std::floor((lo - base) / h_));
  const auto k_hi = static_cast<long>(std::ceil((hi - base) / h_));
  const auto n = static_cast<std::size_t>(k_hi - k_lo + 1);
  nodes_.resize(n);
  values_.assign(n, 0.0);
  std::vector<double> fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes_[i] = base + static_cast<double>(k_lo + static_cast<long>(i)) * h_;
    fv[i] = f_(nodes_[i]);
    if (!std::isfinite(fv[i])) {
      throw NumericError(ErrorKind::QuadratureFailure,
                         "non-finite integrand at t=" + std::to_string(nodes_[i]));
    }
  }
  const auto i0 = static_cast<std::size_t>(-k_lo);
  for (std::size_t i = i0; i + 1 < n; ++i) {
    const double m = f_(0.5 * (nodes_[i] + nodes_[i + 1]));
    values_[i + 1] = values_[i] + h_ / 6.0 * (fv[i] + 4.0 * m + fv[i + 1]);
  }
  for (std::size_t i = i0; i > 0; --i) {
    const double m = f_(0.5 * (nodes_[i] + nodes_[i - 1]));
    values_[i - 1] = values_[i] - h_ / 6.0 * (fv[i - 1] + 4.0 * m + fv[i]);
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericError(ErrorKind::QuadratureFailure, "non-finite integral");
  }
}

double CumulativeIntegral::operator()(double t) const {
  if (nodes_.empty()) return 0.0;
  if (t < nodes_.front()) {
    const double gap = nodes_.front() - t;
    return values_.front() - composite_simpson(f_, t, nodes_.front(),
                                               static_cast<int>(std::ceil(gap / h_)));
  }
  if (t > nodes_.back()) {
    const double gap = t - nodes_.back();
    return values_.back() + composite_simpson(f_, nodes_.back(), t,
                                              static_cast<int>(std::ceil(gap / h_)));
  }
  auto k = static_cast<std::size_t>(std::floor((t - nodes_.front()) / h_));
  k = std::min(k, nodes_.size() - 1);
  return values_[k] + simpson(f_, nodes_[k], t);
}

YFunction CumulativeIntegral::as_yfunction() const {
  auto self = std::make_shared<const CumulativeIntegral>(*this);
  return {[self](double t) { return (*self)(t); }, [self](double t) { return self->integrand(t); },
          {}, range_};
}

HermiteTable::HermiteTable(std::vector<double> t, std::vector<double> f, std::vector<double> df,
                           std::vector<double> d2f)
    : t_(std::move(t)), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)) {
  if (t_.size() < 2 || f_.size() != t_.size() || df_.size() != t_.size() ||
      d2f_.size() != t_.size()) {
    throw NumericError(ErrorKind::InvalidArgument, "Hermite table needs >= 2 matching samples");
  }
}

HermiteTable::Sample HermiteTable::eval(double t) const {
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t k = (it == t_.begin()) ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  k = std::min(k, t_.size() - 2);
  const double h = t_[k + 1] - t_[k];
  const double s = (t - t_[k]) / h;

  const double a0 = f_[k];
  const double a1 = h * df_[k];
  const double a2 = 0.5 * h * h * d2f_[k];
  const double F = f_[k + 1] - (a0 + a1 + a2);
  const double G = h * df_[k + 1] - (a1 + 2.0 * a2);
  const double K = h * h * d2f_[k + 1] - 2.0 * a2;
  const double a3 = 10.0 * F - 4.0 * G + 0.5 * K;
  const double a4 = -15.0 * F + 7.0 * G - K;
  const double a5 = 6.0 * F - 3.0 * G + 0.5 * K;

  const double v = a0 + s * (a1 + s * (a2 + s * (a3 + s * (a4 + s * a5))));
  const double d = a1 + s * (2.0 * a2 + s * (3.0 * a3 + s * (4.0 * a4 + s * 5.0 * a5)));
  const double dd = 2.0 * a2 + s * (6.0 * a3 + s * (12.0 * a4 + s * 20.0 * a5));
  return {v, d / h, dd / (h * h)};
}

double invert_monotone(const std::function<double(double)>& F,
                       const std::function<double(double)>& dF, double target, double lo,
                       double hi) {
  double flo = F(lo) - target;
  double fhi = F(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericError(ErrorKind::InvalidArgument, "target outside the monotone range");
  }
  double t = lo - flo * (hi - lo) / (fhi - flo);
  for (int it = 0; it < 100; ++it) {
    const double ft = F(t) - target;
    if (std::abs(ft) <= 1e-15 * std::max(1.0, std::abs(target))) return t;
    if ((ft > 0.0) == (flo > 0.0)) {
      lo = t;
      flo = ft;
    } else {
      hi = t;
      fhi = ft;
    }
    const double d = dF(t);
    double next = (d != 0.0) ? t - ft / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, std::abs(t))) return next;
    t = next;
  }
  return t;
}

}  // namespace heismin
