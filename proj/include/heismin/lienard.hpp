#pragma once

// The Codazzi-like (Lienard) equation
//
//     alpha'' + 6 alpha alpha' + 4 alpha^3 + c^2 alpha = 0
//
// along characteristic lines. For c = 0 every solution belongs to one of
// four closed-form families; for c != 0 only residuals and numerical
// integration are offered.

#include <functional>
#include <variant>
#include <vector>

#include "heismin/quadrature.hpp"

namespace heismin::lienard {

struct Tolerances {
  /// Closed forms are undefined where |denominator| <= den.
  double den = 1e-12;
  /// Branch tolerance used when recognising the special families.
  double fit = 1e-10;
};

/// alpha = 0
struct Zero {};
/// alpha = 1 / (x + c1)
struct SpecialI {
  double c1 = 0.0;
};
/// alpha = 1 / (2x + c1)
struct SpecialII {
  double c1 = 0.0;
};
/// alpha = (x + c1) / ((x + c1)^2 + c2), c2 != 0
struct General {
  double c1 = 0.0;
  double c2 = 1.0;
};

using AlphaSolution = std::variant<Zero, SpecialI, SpecialII, General>;

const char* family_name(const AlphaSolution& s);

struct PhaseState {
  double alpha = 0.0;
  double v = 0.0;  // alpha_x
};

/// Value with its first two x-derivatives.
struct Jet {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

/// Closed-form alpha and alpha_x. Throws SingularPoint on the pole set.
PhaseState eval_alpha(const AlphaSolution& s, double x, const Tolerances& tol = {});
/// Closed-form alpha with its analytic first and second derivatives.
Jet eval_jet(const AlphaSolution& s, double x, const Tolerances& tol = {});

/// f'' + 6 f f' + 4 f^3 + c^2 f from a jet.
double lienard_residual(const Jet& j, double H_const);
/// Residual of a closed-form solution using analytic derivatives.
double lienard_residual(const AlphaSolution& s, double x, double H_const,
                        const Tolerances& tol = {});
/// Residual of an arbitrary callable using fourth-order central differences
/// with step `step` (scaled by max(1, |x|)).
double lienard_residual(const std::function<double(double)>& f, double x, double H_const,
                        double step = 1e-3);

struct TrajectoryPoint {
  double x;
  PhaseState state;
};
using Trajectory = std::vector<TrajectoryPoint>;

struct IvpOptions {
  double overflow_guard = 1e12;
};

/// Classical RK4 with fixed step on alpha' = v, v' = -(6 alpha v + 4 alpha^3
/// + c^2 alpha) from x0 to x1 (either direction). The final step is
/// shortened so the trajectory ends exactly at x1. Throws BlowUp when
/// |alpha| or |v| passes the overflow guard.
Trajectory integrate_ivp(double alpha0, double v0, double x0, double x1, double step,
                         double H_const, const IvpOptions& opts = {});

/// The phase-plane vector field with constant c: (v, -(6 alpha v + 4 alpha^3 + c^2 alpha)).
PhaseState phase_velocity(const PhaseState& s, double H_const = 0.0);

/// C^2 interpolant of an RK4 trajectory. Second derivatives at the nodes
/// come from the ODE itself.
class DenseSolution {
 public:
  DenseSolution(const Trajectory& traj, double H_const);
  Jet operator()(double x) const;
  double front() const { return table_.front(); }
  double back() const { return table_.back(); }

 private:
  HermiteTable table_;
};

/// Family member through (x0, alpha0, v0). Total.
AlphaSolution fit_solution(double alpha0, double v0, double x0, const Tolerances& tol = {});

/// Conserved quantity of the general family along its phase curve,
/// C = w(3w+2) / ((3w+1)^2 alpha^2), w = 2 alpha^2 / (3 v). Throws
/// DegenerateBranch for v = 0, alpha = 0 or w in {0, -1/3, -2/3}.
double conserved_quantity(const PhaseState& s, const Tolerances& tol = {});

struct PhaseSample {
  PhaseState state;
  double d_alpha;
  double d_v;
};

/// Samples the phase-plane field (c = 0) on an nx-by-nv grid, alpha index
/// outer. Requires nx, nv >= 2.
std::vector<PhaseSample> phase_field(double alpha_min, double alpha_max, double v_min,
                                     double v_max, int nx, int nv);

/// Singular x positions of a closed-form solution (poles).
std::vector<double> singular_points(const AlphaSolution& s);

}  // namespace heismin::lienard
