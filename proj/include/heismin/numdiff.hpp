#pragma once

// Finite-difference stencils shared by the verification code.

#include <functional>

#include "heismin/functions.hpp"

namespace heismin::fd {

/// Default steps, scaled by max(1, |t|).
inline constexpr double kFirstStep = 1e-5;
inline constexpr double kSecondStep = 1e-3;

/// f'(t): central difference, one-sided (second order) when t -+ h leaves
/// `dom`.
double d1(const std::function<double(double)>& f, double t, double step = kFirstStep,
          const Interval& dom = {});

/// f''(t): fourth-order five-point stencil, shifted to a one-sided stencil
/// near the ends of `dom`.
double d2(const std::function<double(double)>& f, double t, double step = kSecondStep,
          const Interval& dom = {});

}  // namespace heismin::fd
