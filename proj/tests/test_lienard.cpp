#include "doctest.h"

#include <cmath>
#include <random>

#include "heismin/errors.hpp"
#include "heismin/lienard.hpp"

using namespace heismin;
using namespace heismin::lienard;

namespace {

bool raises(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const NumericError& e) {
    return e.kind() == kind;
  }
  return false;
}

// Closed forms written out independently of the library.
double special_i(double c1, double x) { return 1.0 / (x + c1); }
double special_ii(double c1, double x) { return 1.0 / (2.0 * x + c1); }
double general(double c1, double c2, double x) { return (x + c1) / ((x + c1) * (x + c1) + c2); }

}  // namespace

TEST_CASE("closed-form values") {
  CHECK(eval_alpha(SpecialI{0.0}, 2.0).alpha == doctest::Approx(0.5));
  const PhaseState s2 = eval_alpha(SpecialII{0.0}, 1.0);
  CHECK(s2.alpha == doctest::Approx(0.5));
  CHECK(s2.v == doctest::Approx(-0.5));
  const PhaseState g = eval_alpha(General{1.0, 1.0}, 0.0);
  CHECK(g.alpha == doctest::Approx(0.5));
  CHECK(g.v == doctest::Approx(0.0));
  CHECK(eval_alpha(Zero{}, 3.0).alpha == 0.0);
  CHECK(raises(ErrorKind::SingularPoint, [] { eval_alpha(SpecialI{1.0}, -1.0); }));
  CHECK(raises(ErrorKind::SingularPoint, [] { eval_alpha(General{0.0, -4.0}, 2.0); }));
}

TEST_CASE("analytic derivatives agree with central differences of the closed forms") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-2.0, 2.0), x(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double c1 = c(rng), c2 = c(rng), t = x(rng);
    const auto check = [&](const AlphaSolution& s, auto f) {
      const double h = 1e-4;
      const double fm = f(t - h), f0 = f(t), fp = f(t + h);
      if (!std::isfinite(fm) || !std::isfinite(fp) || std::abs(f0) > 20.0) return;
      const Jet j = eval_jet(s, t);
      CHECK(j.f == doctest::Approx(f0).epsilon(1e-12));
      CHECK(j.df == doctest::Approx((fp - fm) / (2 * h)).epsilon(1e-5));
      CHECK(j.d2f == doctest::Approx((fp - 2 * f0 + fm) / (h * h)).epsilon(1e-4));
    };
    if (std::abs(t + c1) > 0.2) check(SpecialI{c1}, [&](double s) { return special_i(c1, s); });
    if (std::abs(2 * t + c1) > 0.2) check(SpecialII{c1}, [&](double s) { return special_ii(c1, s); });
    if (std::abs((t + c1) * (t + c1) + c2) > 0.2) {
      check(General{c1, c2}, [&](double s) { return general(c1, c2, s); });
    }
  }
}

TEST_CASE("residual examples") {
  CHECK(lienard_residual(Zero{}, 1.3, 0.0) == 0.0);
  CHECK(std::abs(lienard_residual(SpecialII{0.0}, 1.0, 0.0)) < 1e-14);
  CHECK(std::abs(lienard_residual(General{0.0, 1.0}, 0.7, 0.0)) < 1e-10);
  // finite-difference path on an arbitrary function
  CHECK(std::abs(lienard_residual([](double s) { return general(0.3, 0.8, s); }, 0.4, 0.0)) < 1e-8);
  // alpha = x is not a solution: 6x + 4x^3
  CHECK(lienard_residual([](double s) { return s; }, 1.0, 0.0) == doctest::Approx(10.0));
}

TEST_CASE("closed forms solve the equation: random draws") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> c(-3.0, 3.0), x(-5.0, 5.0);
  double worst = 0.0;
  for (int family = 0; family < 3; ++family) {
    for (int draw = 0; draw < 100; ++draw) {
      const double c1 = c(rng);
      double c2 = c(rng);
      if (std::abs(c2) < 0.05) c2 = 0.5;
      const AlphaSolution s = family == 0   ? AlphaSolution{SpecialI{c1}}
                              : family == 1 ? AlphaSolution{SpecialII{c1}}
                                            : AlphaSolution{General{c1, c2}};
      const auto bad = singular_points(s);
      int taken = 0;
      while (taken < 50) {
        const double t = x(rng);
        bool near = false;
        for (double b : bad) near = near || std::abs(t - b) < 0.1;
        if (near) continue;
        ++taken;
        worst = std::max(worst, std::abs(lienard_residual(s, t, 0.0)));
      }
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("fit_solution examples") {
  const auto g = std::get<General>(fit_solution(0.5, 0.0, 0.0));
  CHECK(g.c1 == doctest::Approx(1.0));
  CHECK(g.c2 == doctest::Approx(1.0));
  CHECK(std::get<SpecialI>(fit_solution(1.0, -1.0, 1.0)).c1 == doctest::Approx(0.0));
  CHECK(std::get<SpecialII>(fit_solution(0.5, -0.5, 0.0)).c1 == doctest::Approx(2.0));
  CHECK(std::holds_alternative<Zero>(fit_solution(0.0, 0.0, 4.0)));
  const auto z = std::get<General>(fit_solution(0.0, 2.0, 1.0));
  CHECK(z.c1 == doctest::Approx(-1.0));
  CHECK(z.c2 == doctest::Approx(0.5));
}

TEST_CASE("fit_solution inverts eval_alpha") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-2.0, 2.0), x(-2.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const double c1 = c(rng), t = x(rng);
    double c2 = c(rng);
    if (std::abs(c2) < 0.1) c2 = -0.7;
    const AlphaSolution cases[] = {SpecialI{c1}, SpecialII{c1}, General{c1, c2}};
    for (const auto& s : cases) {
      bool near = false;
      for (double b : singular_points(s)) near = near || std::abs(t - b) < 0.2;
      if (near) continue;
      const PhaseState st = eval_alpha(s, t);
      const AlphaSolution f = fit_solution(st.alpha, st.v, t);
      REQUIRE(f.index() == s.index());
      if (const auto* a = std::get_if<SpecialI>(&s)) {
        CHECK(std::abs(std::get<SpecialI>(f).c1 - a->c1) <= 1e-8);
      } else if (const auto* b = std::get_if<SpecialII>(&s)) {
        CHECK(std::abs(std::get<SpecialII>(f).c1 - b->c1) <= 1e-8);
      } else {
        const auto& gs = std::get<General>(s);
        const auto& gf = std::get<General>(f);
        CHECK(std::abs(gf.c1 - gs.c1) <= 1e-8);
        CHECK(std::abs(gf.c2 - gs.c2) <= 1e-8);
      }
    }
  }
}

TEST_CASE("RK4 against closed forms") {
  SUBCASE("critical point") {
    for (const auto& p : integrate_ivp(0.0, 0.0, 0.0, 1.0, 0.1, 0.0)) CHECK(p.state.alpha == 0.0);
  }
  SUBCASE("general c1=1 c2=1") {
    double err = 0.0;
    const auto tr = integrate_ivp(0.5, 0.0, 0.0, 3.0, 1e-3, 0.0);
    CHECK(tr.back().x == 3.0);
    for (const auto& p : tr) err = std::max(err, std::abs(p.state.alpha - general(1, 1, p.x)));
    CHECK(err <= 1e-6);
  }
  SUBCASE("special I backwards and forwards") {
    double err = 0.0;
    for (const auto& p : integrate_ivp(1.0, -1.0, 1.0, 4.0, 1e-3, 0.0)) {
      err = std::max(err, std::abs(p.state.alpha - 1.0 / p.x));
    }
    for (const auto& p : integrate_ivp(0.25, -0.0625, 4.0, 1.0, 1e-3, 0.0)) {
      err = std::max(err, std::abs(p.state.alpha - 1.0 / p.x));
    }
    CHECK(err <= 1e-6);
  }
  SUBCASE("blow-up at a pole") {
    CHECK(raises(ErrorKind::BlowUp, [] { integrate_ivp(1.0, -1.0, 1.0, -1.0, 1e-3, 0.0); }));
  }
  SUBCASE("dense output") {
    const auto tr = integrate_ivp(0.5, 0.0, 0.0, 3.0, 1e-2, 0.0);
    const DenseSolution ds(tr, 0.0);
    for (double t = 0.05; t < 2.95; t += 0.173) {
      const Jet j = ds(t);
      CHECK(std::abs(j.f - general(1, 1, t)) < 1e-7);
      CHECK(std::abs(lienard_residual(j, 0.0)) < 1e-5);
    }
  }
}

TEST_CASE("conserved quantity") {
  const General g{1.0, 1.0};
  const double a = conserved_quantity(eval_alpha(g, 0.3));
  const double b = conserved_quantity(eval_alpha(g, 1.7));
  CHECK(std::abs(a - b) < 1e-8);
  // C = 4 c2 / 3 on the general family, derived by eliminating x
  CHECK(a == doctest::Approx(4.0 / 3.0));
  CHECK(conserved_quantity(eval_alpha(General{0.2, -0.5}, 2.0)) == doctest::Approx(-2.0 / 3.0));
  CHECK(raises(ErrorKind::DegenerateBranch, [] { conserved_quantity(eval_alpha(General{0, 1}, 1.0)); }));
  CHECK(raises(ErrorKind::DegenerateBranch, [] { conserved_quantity(eval_alpha(SpecialII{0.3}, 1.0)); }));
  CHECK(raises(ErrorKind::DegenerateBranch, [] { conserved_quantity(eval_alpha(SpecialI{0.3}, 1.0)); }));
}

TEST_CASE("phase field") {
  CHECK(phase_velocity({0, 0}).alpha == 0.0);
  CHECK(phase_velocity({1, 0}).v == doctest::Approx(-4.0));
  CHECK(phase_velocity({0, 1}).alpha == doctest::Approx(1.0));
  const auto f = phase_field(-1, 1, -1, 1, 5, 5);
  int zeros = 0;
  for (const auto& s : f) zeros += (s.d_alpha == 0.0 && s.d_v == 0.0);
  CHECK(zeros == 1);
  CHECK(f.size() == 25u);
}

TEST_CASE("bounded orbits for c2 > 0") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> c(0.1, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double c1 = c(rng) - 1.5, c2 = c(rng);
    double mx = 0.0;
    for (int k = -20000; k <= 20000; ++k) {
      mx = std::max(mx, std::abs(eval_alpha(General{c1, c2}, -c1 + k * 1e-3 * std::sqrt(c2)).alpha));
    }
    CHECK(std::abs(mx - 1.0 / (2.0 * std::sqrt(c2))) < 1e-6);
  }
}

TEST_CASE("singular points") {
  CHECK(singular_points(SpecialI{2.0}) == std::vector<double>{-2.0});
  CHECK(singular_points(SpecialII{2.0}) == std::vector<double>{-1.0});
  CHECK(singular_points(General{0.0, 1.0}).empty());
  CHECK(singular_points(General{0.0, -1.0}) == std::vector<double>{-1.0, 1.0});
}
