#pragma once

#include <functional>
#include <vector>

#include "heismin/functions.hpp"

namespace heismin {

/// Simpson's rule on a single interval [a, b].
double simpson(const std::function<double(double)>& f, double a, double b);

/// Composite Simpson with n panels (each panel uses its midpoint).
double composite_simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Anti-derivative F(t) = int_{base}^{t} f, tabulated on a uniform grid by
/// panel-wise Simpson and completed inside the last panel by a partial
/// Simpson step, so F is smooth in t and exact F' = f is available.
///
/// The table is immutable after construction; evaluation is thread-safe.
class CumulativeIntegral {
 public:
  /// Default resolution of the cumulative quadratures.
  static constexpr double kPanelsPerUnit = 512.0;

  CumulativeIntegral() = default;
  CumulativeIntegral(std::function<double(double)> f, Interval range, double base,
                     double panels_per_unit = kPanelsPerUnit);

  double operator()(double t) const;
  double integrand(double t) const { return f_(t); }
  const Interval& range() const { return range_; }
  double base() const { return base_; }

  /// Wrap as a YFunction (derivative = integrand).
  YFunction as_yfunction() const;

 private:
  std::function<double(double)> f_;
  Interval range_{};
  double base_ = 0.0;
  double h_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// Piecewise quintic Hermite interpolant through (t_i, f_i, f'_i, f''_i).
/// Nodes must be strictly increasing. Evaluation outside the node range
/// extrapolates with the end polynomial.
class HermiteTable {
 public:
  struct Sample {
    double value;
    double d1;
    double d2;
  };

  HermiteTable() = default;
  HermiteTable(std::vector<double> t, std::vector<double> f, std::vector<double> df,
               std::vector<double> d2f);

  Sample eval(double t) const;
  double operator()(double t) const { return eval(t).value; }
  double front() const { return t_.front(); }
  double back() const { return t_.back(); }
  bool empty() const { return t_.empty(); }

 private:
  std::vector<double> t_, f_, df_, d2f_;
};

/// Solve F(t) = target for increasing or decreasing smooth F on [lo, hi]
/// by safeguarded Newton. dF must not vanish on the bracket.
double invert_monotone(const std::function<double(double)>& F,
                       const std::function<double(double)>& dF, double target, double lo,
                       double hi);

}  // namespace heismin
