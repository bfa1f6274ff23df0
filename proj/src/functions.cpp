#include "heismin/functions.hpp"

#include <cmath>

namespace heismin {

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

YFunction::YFunction(Fn f, Fn df, Fn d2f, Interval domain)
    : f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)), domain_(domain) {}

YFunction YFunction::constant(double c, Interval domain) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; },
          domain};
}

YFunction YFunction::linear(double slope, double offset, Interval domain) {
  return {[=](double t) { return slope * t + offset; }, [slope](double) { return slope; },
          [](double) { return 0.0; }, domain};
}

double YFunction::d2(double t) const {
  if (d2f_) return d2f_(t);
  const double h = 1e-5 * std::max(1.0, std::abs(t));
  return (df_(t + h) - df_(t - h)) / (2.0 * h);
}

YFunction YFunction::with_domain(Interval d) const {
  YFunction out = *this;
  out.domain_ = d;
  return out;
}

}  // namespace heismin
