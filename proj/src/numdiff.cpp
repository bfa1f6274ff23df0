#include "heismin/numdiff.hpp"

#include <algorithm>
#include <cmath>

namespace heismin::fd {

double d1(const std::function<double(double)>& f, double t, double step, const Interval& dom) {
  const double h = step * std::max(1.0, std::abs(t));
  if (t - h < dom.lo) return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
  if (t + h > dom.hi) return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h);
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

double d2(const std::function<double(double)>& f, double t, double step, const Interval& dom) {
  const double h = step * std::max(1.0, std::abs(t));
  if (t - 2.0 * h < dom.lo) {
    // Fourth-order forward stencil on t, t+h, ..., t+5h.
    return (45.0 * f(t) - 154.0 * f(t + h) + 214.0 * f(t + 2.0 * h) - 156.0 * f(t + 3.0 * h) +
            61.0 * f(t + 4.0 * h) - 10.0 * f(t + 5.0 * h)) /
           (12.0 * h * h);
  }
  if (t + 2.0 * h > dom.hi) {
    return (45.0 * f(t) - 154.0 * f(t - h) + 214.0 * f(t - 2.0 * h) - 156.0 * f(t - 3.0 * h) +
            61.0 * f(t - 4.0 * h) - 10.0 * f(t - 5.0 * h)) /
           (12.0 * h * h);
  }
  return (-f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) - f(t + 2.0 * h)) /
         (12.0 * h * h);
}

}  // namespace heismin::fd
