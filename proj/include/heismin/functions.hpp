#pragma once

#include <functional>
#include <limits>

namespace heismin {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval whole() { return {}; }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool finite() const;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Real function of one variable with first (and optionally second)
/// derivative, declared on an interval. Used for c1(y), c2(y), k(y), h(y),
/// g(y), zeta1(y), zeta2(y), theta(t) and friends.
///
/// Evaluation is re-entrant; the wrapped callables must be too.
class YFunction {
 public:
  using Fn = std::function<double(double)>;

  YFunction() = default;
  YFunction(Fn f, Fn df, Fn d2f = {}, Interval domain = Interval::whole());

  static YFunction constant(double c, Interval domain = Interval::whole());
  /// slope * t + offset
  static YFunction linear(double slope, double offset, Interval domain = Interval::whole());

  double operator()(double t) const { return f_(t); }
  double d1(double t) const { return df_(t); }
  /// Second derivative; central difference of d1 when none was supplied.
  double d2(double t) const;
  bool has_d2() const { return static_cast<bool>(d2f_); }

  const Interval& domain() const { return domain_; }
  YFunction with_domain(Interval d) const;
  explicit operator bool() const { return static_cast<bool>(f_); }

 private:
  Fn f_;
  Fn df_;
  Fn d2f_;
  Interval domain_{};
};

}  // namespace heismin
