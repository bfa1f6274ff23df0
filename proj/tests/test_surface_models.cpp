#include "doctest.h"

#include <cmath>
#include <random>

#include "heismin/errors.hpp"
#include "heismin/surface_models.hpp"

using namespace heismin;
using namespace heismin::models;

namespace {

const YFunction kZero = YFunction::constant(0.0);

bool raises(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const NumericError& e) {
    return e.kind() == kind;
  }
  return false;
}

YFunction wave(double a, double b, double c) {
  return {[=](double t) { return a + b * std::sin(c * t); },
          [=](double t) { return b * c * std::cos(c * t); },
          [=](double t) { return -b * c * c * std::sin(c * t); }};
}

double dx(const MetricRep::Field& f, double x, double y) {
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (f(x + h, y) - f(x - h, y)) / (2 * h);
}

}  // namespace

TEST_CASE("eval_model") {
  CHECK(eval_model(AlphaModel::vertical(), 3.0, 1.0) == 0.0);
  CHECK(eval_model(AlphaModel::special_i(kZero), 2.0, 5.0) == doctest::Approx(0.5));
  CHECK(eval_model(AlphaModel::general(YFunction::constant(1), YFunction::constant(1)), 0.0, 2.0) ==
        doctest::Approx(0.5));
  CHECK(eval_model(AlphaModel::special_ii(YFunction::linear(1, 0)), 0.5, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("every model solves the equation on each line") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  const AlphaModel models[] = {AlphaModel::special_i(wave(0.3, 1, 2)),
                               AlphaModel::special_ii(wave(-0.2, 0.5, 1)),
                               AlphaModel::general(wave(0, 1, 1), wave(1.5, 0.5, 3)),
                               AlphaModel::general(wave(0, 1, 1), wave(-1.5, 0.5, 3))};
  for (const auto& m : models) {
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng), y = u(rng);
      try {
        const auto j = eval_model_jet(m, x, y);
        if (std::abs(j.f) > 10) continue;
        CHECK(std::abs(lienard::lienard_residual(j, 0.0)) <= 1e-8);
      } catch (const NumericError&) {
      }
    }
  }
}

TEST_CASE("classify") {
  const auto c1 = YFunction::constant(0.0);
  CHECK(classify(AlphaModel::general(c1, YFunction::constant(1)), {-100, 100}) == SurfaceType::TypeI);
  const auto neg = AlphaModel::general(c1, YFunction::constant(-1));
  CHECK(classify(neg, {-1, 1}) == SurfaceType::TypeIII);
  CHECK(classify(neg, {2, 5}) == SurfaceType::TypeII);
  CHECK(classify(neg, {-5, -2}) == SurfaceType::TypeII);
  CHECK(raises(ErrorKind::MixedType, [&] { classify(neg, {0, 3}); }));
  CHECK(raises(ErrorKind::MixedType,
               [&] { classify(AlphaModel::general(c1, YFunction::linear(1, 0), {-1, 1}), {2, 3}); }));
  CHECK(classify(AlphaModel::special_i(c1), {}) == SurfaceType::SpecialI);
  CHECK(classify(AlphaModel::special_ii(c1), {}) == SurfaceType::SpecialII);
  CHECK(classify(AlphaModel::vertical(), {}) == SurfaceType::Vertical);
}

TEST_CASE("metric_rep values") {
  const auto r1 = metric_rep(AlphaModel::special_i(YFunction::constant(1)), kZero, kZero);
  CHECK(r1.a(0, 3) == 0.0);
  CHECK(r1.b(0, 3) == doctest::Approx(1 / std::sqrt(2.0)));
  const auto r2 = metric_rep(AlphaModel::special_ii(kZero), kZero, kZero);
  CHECK(r2.b(0.5, 3) == doctest::Approx(1 / std::sqrt(2.0)));
  const auto r3 = metric_rep(AlphaModel::general(kZero, YFunction::constant(1)), kZero, kZero);
  CHECK(r3.b(1, 3) == doctest::Approx(1 / std::sqrt(5.0)));
  const auto rv = metric_rep(AlphaModel::vertical(), YFunction::constant(std::log(3.0)), YFunction::constant(2));
  CHECK(rv.a(1, 1) == doctest::Approx(2.0));
  CHECK(rv.b(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("metric_rep satisfies the first two integrability equations") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  const YFunction k = wave(0.1, 0.3, 1), h = wave(-0.4, 0.7, 2);
  const AlphaModel models[] = {AlphaModel::special_i(wave(0.3, 1, 2)),
                               AlphaModel::special_ii(wave(-0.2, 0.5, 1)),
                               AlphaModel::general(wave(0, 1, 1), wave(1.5, 0.5, 3)),
                               AlphaModel::general(wave(0, 1, 1), wave(-1.5, 0.5, 3))};
  for (const auto& m : models) {
    const auto rep = metric_rep(m, k, h);
    int used = 0;
    while (used < 100) {
      const double x = u(rng), y = u(rng);
      lienard::Jet j;
      try {
        j = eval_model_jet(m, x, y);
        eval_model(m, x + 1e-4, y);
        eval_model(m, x - 1e-4, y);
      } catch (const NumericError&) {
        continue;
      }
      if (std::abs(j.f) > 5) continue;
      ++used;
      const double a = rep.a(x, y), b = rep.b(x, y);
      CHECK(b > 0.0);
      CHECK(std::abs(dx(rep.a, x, y) - a * dx(rep.b, x, y) / b) <= 1e-6);
      CHECK(std::abs(dx(rep.b, x, y) / b + 2 * j.f + j.f * j.df / (1 + j.f * j.f)) <= 1e-6);
    }
  }
}

TEST_CASE("normalize") {
  SUBCASE("already normal gives the identity") {
    const auto m = AlphaModel::general(wave(0.2, 0.5, 1), wave(1.0, 0.3, 2));
    const auto [nf, cc] = normalize(m, metric_rep(m, kZero, kZero));
    CHECK(nf.surface_type == SurfaceType::TypeI);
    for (double y = -3; y <= 3; y += 0.37) {
      CHECK(std::abs(cc.gamma(y)) <= 1e-10);
      CHECK(std::abs(cc.psi(y) - y) <= 1e-10);
      CHECK(std::abs(nf.zeta1(y) - m.c1(y)) <= 1e-10);
      CHECK(std::abs((*nf.zeta2)(y) - m.c2(y)) <= 1e-10);
    }
    // normalizing the normal form again changes nothing
    const auto m2 = nf.model();
    const auto [nf2, cc2] = normalize(m2, metric_rep(m2, kZero, kZero), {{}, Interval{-3, 3}, {}});
    for (double y = -2.5; y <= 2.5; y += 0.5) {
      CHECK(std::abs(cc2.gamma(y)) <= 1e-10);
      CHECK(std::abs(nf2.zeta1(y) - nf.zeta1(y)) <= 1e-10);
    }
  }
  SUBCASE("shear h = 1 on SpecialI") {
    const auto m = AlphaModel::special_i(kZero);
    const auto rep = metric_rep(m, kZero, YFunction::constant(1));
    const auto [nf, cc] = normalize(m, rep);
    for (double y = -3; y <= 3; y += 0.5) {
      CHECK(cc.gamma(y) == doctest::Approx(-y).epsilon(1e-9));
      CHECK(nf.zeta1(cc.psi(y)) == doctest::Approx(y).epsilon(1e-9));
    }
    // the transformed rep is orthogonal and matches the normal form
    const auto t = transform_metric(rep, cc);
    const auto target = metric_rep(nf.model(), kZero, kZero);
    for (double x : {-1.5, 0.7, 2.0}) {
      for (double y : {-1.0, 0.3, 1.2}) {
        CHECK(std::abs(t.a(x, y)) < 1e-10);
        CHECK(t.b(x, y) == doctest::Approx(target.b(x, y)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("k = ln 2 on General rescales y") {
    const auto m = AlphaModel::general(kZero, YFunction::constant(1));
    const auto rep = metric_rep(m, YFunction::constant(std::log(2.0)), kZero);
    const auto [nf, cc] = normalize(m, rep);
    CHECK(cc.psi.d1(0.3) == doctest::Approx(0.5));
    CHECK((*nf.zeta2)(1.0) == doctest::Approx(1.0));
    const auto t = transform_metric(rep, cc);
    const auto target = metric_rep(nf.model(), kZero, kZero);
    CHECK(t.b(0.4, 1.0) == doctest::Approx(target.b(0.4, 1.0)).epsilon(1e-10));
  }
  SUBCASE("y-dependent gauge, SpecialII and a rep without gauge") {
    const auto m = AlphaModel::special_ii(wave(0.5, 0.3, 1));
    const YFunction k = wave(0.2, 0.4, 1), h = wave(1.0, 0.5, 2);
    auto rep = metric_rep(m, k, h);
    const auto [nf, cc] = normalize(m, rep);
    auto bare = rep;
    bare.gauge.reset();
    const auto [nf_b, cc_b] = normalize(m, bare);
    const auto t = transform_metric(rep, cc);
    const auto target = metric_rep(nf.model(), kZero, kZero);
    for (double xt : {-1.0, 0.8, 2.3}) {
      for (double y : {-2.0, -0.5, 1.0, 2.5}) {
        const double yt = cc.psi(y);
        CHECK(std::abs(t.a(xt, yt)) < 1e-9);
        CHECK(t.b(xt, yt) == doctest::Approx(target.b(xt, yt)).epsilon(1e-8));
        CHECK(nf_b.zeta1(yt) == doctest::Approx(nf.zeta1(yt)).epsilon(1e-9));
        // alpha is unchanged as a function on the surface
        const auto [x, yy] = cc.unapply(xt, yt);
        CHECK(eval_model(nf.model(), xt, yt) == doctest::Approx(eval_model(m, x, yy)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("type is preserved") {
    const auto m = AlphaModel::general(wave(0, 0.2, 1), YFunction::constant(-1));
    const auto rep = metric_rep(m, wave(0, 0.1, 1), kZero);
    NormalizeOptions opts;
    opts.x_window = {-0.5, 0.5};
    const auto [nf, cc] = normalize(m, rep, opts);
    CHECK(nf.surface_type == classify(m, opts.x_window));
    CHECK(nf.surface_type == SurfaceType::TypeIII);
  }
}

TEST_CASE("transformation law round trip") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto m = AlphaModel::general(wave(0.1, 0.5, 1), wave(2.0, 0.4, 1));
  const auto rep = metric_rep(m, wave(0.3, 0.2, 2), wave(0.5, 0.5, 1));
  CoordChange cc;
  cc.gamma = wave(0.2, 0.8, 1.3);
  cc.psi = {[](double y) { return 2 * y + 0.3 * std::sin(y); },
            [](double y) { return 2 + 0.3 * std::cos(y); }};
  cc.psi_inv = [](double t) {
    double y = t / 2;
    for (int i = 0; i < 60; ++i) y -= (2 * y + 0.3 * std::sin(y) - t) / (2 + 0.3 * std::cos(y));
    return y;
  };
  const auto there = transform_metric(rep, cc);
  const auto back = transform_metric(there, cc.inverse());
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(std::abs(back.a(x, y) - rep.a(x, y)) <= 1e-8);
    CHECK(std::abs(back.b(x, y) - rep.b(x, y)) <= 1e-8);
  }
}

TEST_CASE("first fundamental form") {
  NormalForm s1;
  s1.surface_type = SurfaceType::SpecialI;
  s1.zeta1 = wave(0.2, 0.5, 1);
  for (double y = -2; y <= 2; y += 0.25) {
    const auto I = first_fundamental_form(s1, -s1.zeta1(y), y);
    CHECK(I.det() <= 1e-12);
  }
  NormalForm s2;
  s2.surface_type = SurfaceType::SpecialII;
  s2.zeta1 = YFunction::constant(0.6);
  CHECK(first_fundamental_form(s2, -0.3, 0.0).g == doctest::Approx(1.0));
  NormalForm g;
  g.surface_type = SurfaceType::TypeIII;
  g.zeta1 = kZero;
  g.zeta2 = YFunction::constant(-1);
  CHECK(first_fundamental_form(g, 1.0, 0.0).g == doctest::Approx(1.0));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    CHECK(first_fundamental_form(s2, u(rng), u(rng)).det() > 0.0);
    CHECK(first_fundamental_form(g, u(rng), u(rng)).det() > 0.0);
  }
  // 1/b^2 agrees with the normal-form metric representation
  const auto rep = metric_rep(g.model(), kZero, kZero);
  CHECK(first_fundamental_form(g, 0.4, 0.0).g == doctest::Approx(1 / std::pow(rep.b(0.4, 0.0), 2)));
}

TEST_CASE("connection form") {
  MetricRep flat{[](double, double) { return 0.0; }, [](double, double) { return 1.0; }};
  const auto w = connection_form(flat, 0.3, 0.2);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);
  MetricRep bx{[](double, double) { return 0.0; }, [](double x, double) { return 2 + x * x; }};
  const auto v = connection_form(bx, 1.0, 0.0);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-8));
  const auto m = AlphaModel::special_i(kZero);
  const auto rep = metric_rep(m, kZero, kZero);
  const auto c = connection_form(rep, 1.0, 0.0);
  const auto j = eval_model_jet(m, 1.0, 0.0);
  const double lhs = -(rep.a(1, 0) * c[0] + rep.b(1, 0) * c[1]);
  CHECK(std::abs(lhs - (2 * j.f + j.f * j.df / (1 + j.f * j.f))) <= 1e-8);
}

TEST_CASE("maximal domains") {
  const auto u1 = maximal_domain(kZero, std::nullopt, SurfaceType::SpecialI);
  REQUIRE(u1.size() == 2);
  CHECK(u1[0].contains(0.5, 1.0));
  CHECK_FALSE(u1[0].contains(-0.5, 1.0));
  CHECK(u1[1].contains(-0.5, 1.0));
  const auto v1 = maximal_domain(kZero, YFunction::constant(1), SurfaceType::TypeI);
  CHECK(v1.size() == 1);
  CHECK(v1[0].contains(1e6, -3));
  const auto v3 = maximal_domain(kZero, YFunction::constant(-1), SurfaceType::TypeIII);
  REQUIRE(v3.size() == 1);
  CHECK(v3[0].contains(0.9, 0));
  CHECK_FALSE(v3[0].contains(1.1, 0));
  CHECK(v3[0].boundaries[0](0.0) == doctest::Approx(-1));
  CHECK(v3[0].boundaries[1](0.0) == doctest::Approx(1));
  const auto v2 = maximal_domain(kZero, YFunction::constant(-1), SurfaceType::TypeII);
  CHECK(v2[0].contains(1.1, 0));
  CHECK(v2[1].contains(-1.1, 0));
}
