#include "heismin/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "heismin/constructor.hpp"
#include "heismin/errors.hpp"
#include "heismin/expr.hpp"
#include "heismin/fundamental.hpp"
#include "heismin/io.hpp"
#include "heismin/lienard.hpp"
#include "heismin/parallel.hpp"
#include "heismin/surface_models.hpp"
#include "heismin/verifier.hpp"

namespace heismin::cli {

namespace {

using nlohmann::json;
using Range = std::vector<double>;

constexpr double kTwoPi = 6.283185307179586;
const double kNaN = std::nan("");

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Interval to_interval(const Range& r, const char* what) {
  if (r.size() != 2 || !(r[0] < r[1])) {
    throw UsageError(std::string(what) + " needs two increasing numbers lo,hi");
  }
  return {r[0], r[1]};
}

CLI::Option* add_range(CLI::App* app, const std::string& name, Range& r, const std::string& help) {
  return app->add_option(name, r, help)->delimiter(',')->expected(2)->capture_default_str();
}

double linspace(Interval d, int n, int i) {
  return n > 1 ? d.lo + d.width() * i / (n - 1) : d.mid();
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Graph surface u(x, y) with symbolic partials.
GraphSurface graph_from_expr(const std::string& src, Interval wx, Interval wy) {
  const std::vector<std::string> vars{"x", "y"};
  const expr::Expr u = expr::parse(src, vars);
  const expr::Expr ux = expr::derivative(u, 0), uy = expr::derivative(u, 1);
  const expr::Expr uxx = expr::derivative(ux, 0), uxy = expr::derivative(ux, 1),
                   uyy = expr::derivative(uy, 1);
  auto wrap = [](expr::Expr e) {
    return [e](double x, double y) {
      const double v[2] = {x, y};
      return expr::eval(e, v);
    };
  };
  GraphSurface g;
  g.u = wrap(u);
  g.ux = wrap(ux);
  g.uy = wrap(uy);
  g.uxx = wrap(uxx);
  g.uxy = wrap(uxy);
  g.uyy = wrap(uyy);
  g.wx = wx;
  g.wy = wy;
  return g;
}

std::function<double(double, double)> field_from_expr(const std::string& src) {
  const expr::Expr e = expr::parse(src, {"x", "y"});
  return [e](double x, double y) {
    const double v[2] = {x, y};
    return expr::eval(e, v);
  };
}

// Options shared by the commands that take an alpha model.
struct ModelArgs {
  std::string alpha = "general";
  std::string c1 = "0";
  std::string c2 = "1";
  Range y_domain{-1.0, 1.0};

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "vertical|special1|special2|general")
        ->check(CLI::IsMember({"vertical", "special1", "special2", "general"}))
        ->capture_default_str();
    app->add_option("--c1", c1, "c1(y)")->capture_default_str();
    app->add_option("--c2", c2, "c2(y), general family only")->capture_default_str();
    add_range(app, "--y-domain", y_domain, "y interval lo,hi");
  }

  models::AlphaModel build() const {
    const Interval dom = to_interval(y_domain, "--y-domain");
    if (alpha == "vertical") return models::AlphaModel::vertical(dom);
    const YFunction f1 = expr::to_yfunction(c1, "y", dom);
    if (alpha == "special1") return models::AlphaModel::special_i(f1, dom);
    if (alpha == "special2") return models::AlphaModel::special_ii(f1, dom);
    return models::AlphaModel::general(f1, expr::to_yfunction(c2, "y", dom), dom);
  }
};

struct GaugeArgs {
  std::string k = "0";
  std::string h = "0";

  void add(CLI::App* app) {
    app->add_option("--k", k, "gauge k(y)")->capture_default_str();
    app->add_option("--h", h, "gauge h(y)")->capture_default_str();
  }
  YFunction kf(Interval d) const { return expr::to_yfunction(k, "y", d); }
  YFunction hf(Interval d) const { return expr::to_yfunction(h, "y", d); }
};

json stats_json(const fundamental::ResidualStats& s, int k) {
  return {{"max", s.max[static_cast<std::size_t>(k)]}, {"mean", s.mean[static_cast<std::size_t>(k)]}};
}

// ---------------------------------------------------------------- commands

struct SolveLienard {
  std::string mode = "integrate";
  std::string family = "general";
  double c1 = 0.0, c2 = 1.0;
  double alpha0 = 1.0, v0 = 0.0, x0 = 0.0, x1 = 3.0, step = 1e-3, H = 0.0;
  int n = 101;
  bool fit = false;

  void add(CLI::App* app) {
    app->add_option("--mode", mode, "integrate|evaluate")
        ->check(CLI::IsMember({"integrate", "evaluate"}))
        ->capture_default_str();
    app->add_option("--family", family, "zero|special1|special2|general (evaluate)")
        ->check(CLI::IsMember({"zero", "special1", "special2", "general"}))
        ->capture_default_str();
    app->add_option("--c1", c1)->capture_default_str();
    app->add_option("--c2", c2)->capture_default_str();
    app->add_option("--alpha0", alpha0, "initial alpha")->capture_default_str();
    app->add_option("--v0", v0, "initial alpha'")->capture_default_str();
    app->add_option("--x0", x0)->capture_default_str();
    app->add_option("--x1", x1)->capture_default_str();
    app->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--H", H, "constant p-mean curvature c")->capture_default_str();
    app->add_option("--n", n, "samples (evaluate)")->check(CLI::Range(2, 10000000))->capture_default_str();
    app->add_flag("--fit", fit, "report the closed-form family through (x0, alpha0, v0)");
  }

  lienard::AlphaSolution solution() const {
    if (family == "zero") return lienard::Zero{};
    if (family == "special1") return lienard::SpecialI{c1};
    if (family == "special2") return lienard::SpecialII{c1};
    if (c2 == 0.0) throw UsageError("--c2 must be nonzero for the general family");
    return lienard::General{c1, c2};
  }

  int run(std::ostream& out) const {
    if (fit) {
      const auto s = lienard::fit_solution(alpha0, v0, x0);
      json j{{"family", lienard::family_name(s)}, {"x0", x0}, {"alpha0", alpha0}, {"v0", v0}};
      std::visit(
          [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, lienard::General>) {
              j["c1"] = f.c1;
              j["c2"] = f.c2;
            } else if constexpr (!std::is_same_v<T, lienard::Zero>) {
              j["c1"] = f.c1;
            }
          },
          s);
      write_json(out, j);
      return Ok;
    }
    std::vector<std::vector<double>> rows;
    if (mode == "evaluate") {
      const auto s = solution();
      for (int i = 0; i < n; ++i) {
        const double x = linspace({x0, x1}, n, i);
        try {
          const auto st = lienard::eval_alpha(s, x);
          rows.push_back({x, st.alpha, st.v});
        } catch (const NumericError& e) {
          if (e.kind() != ErrorKind::SingularPoint) throw;
          rows.push_back({x, kNaN, kNaN});
        }
      }
      io::write_csv(out, {"x", "alpha", "v"}, rows);
      return Ok;
    }
    const auto traj = lienard::integrate_ivp(alpha0, v0, x0, x1, step, H);
    const bool closed = H == 0.0;
    const auto s = lienard::fit_solution(alpha0, v0, x0);
    for (const auto& p : traj) {
      std::vector<double> row{p.x, p.state.alpha, p.state.v};
      if (closed) {
        try {
          row.push_back(lienard::eval_alpha(s, p.x).alpha);
        } catch (const NumericError&) {
          row.push_back(kNaN);
        }
      }
      rows.push_back(std::move(row));
    }
    std::vector<std::string> header{"x", "alpha", "v"};
    if (closed) header.push_back("alpha_closed");
    io::write_csv(out, header, rows);
    return Ok;
  }
};

struct PhaseField {
  Range alpha_range{-2.0, 2.0};
  Range v_range{-2.0, 2.0};
  int nx = 21, nv = 21;

  void add(CLI::App* app) {
    add_range(app, "--alpha-range", alpha_range, "alpha interval lo,hi");
    add_range(app, "--v-range", v_range, "alpha' interval lo,hi");
    app->add_option("--nx", nx)->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--nv", nv)->check(CLI::Range(2, 100000))->capture_default_str();
  }

  int run(std::ostream& out) const {
    const Interval a = to_interval(alpha_range, "--alpha-range");
    const Interval v = to_interval(v_range, "--v-range");
    std::vector<std::vector<double>> rows;
    for (const auto& s : lienard::phase_field(a.lo, a.hi, v.lo, v.hi, nx, nv)) {
      rows.push_back({s.state.alpha, s.state.v, s.d_alpha, s.d_v});
    }
    io::write_csv(out, {"x", "v", "dx", "dv"}, rows);
    return Ok;
  }
};

struct Classify {
  ModelArgs model;
  Range x_window{-1.0, 1.0};
  int samples = 65;

  void add(CLI::App* app) {
    model.add(app);
    add_range(app, "--x-window", x_window, "x interval lo,hi");
    app->add_option("--samples", samples)->check(CLI::Range(2, 1000000))->capture_default_str();
  }

  int run(std::ostream& out) const {
    const auto m = model.build();
    const Interval xw = to_interval(x_window, "--x-window");
    const auto t = models::classify(m, xw, samples);
    write_json(out, {{"type", models::to_string(t)},
                     {"family", models::to_string(m.family)},
                     {"x_window", {xw.lo, xw.hi}},
                     {"y_domain", {m.y_domain.lo, m.y_domain.hi}},
                     {"samples", samples}});
    return Ok;
  }
};

struct Metric {
  ModelArgs model;
  GaugeArgs gauge;
  Range x_range{-1.0, 1.0};
  int nx = 21, ny = 21;

  void add(CLI::App* app) {
    model.add(app);
    gauge.add(app);
    add_range(app, "--x-range", x_range, "x interval lo,hi");
    app->add_option("--nx", nx)->check(CLI::Range(1, 100000))->capture_default_str();
    app->add_option("--ny", ny)->check(CLI::Range(1, 100000))->capture_default_str();
  }

  int run(std::ostream& out) const {
    const auto m = model.build();
    const Interval xr = to_interval(x_range, "--x-range");
    const auto rep = models::metric_rep(m, gauge.kf(m.y_domain), gauge.hf(m.y_domain));
    const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    std::vector<std::vector<double>> rows(n);
    parallel_for(n, [&](std::size_t k) {
      const double x = linspace(xr, nx, static_cast<int>(k / static_cast<std::size_t>(ny)));
      const double y = linspace(m.y_domain, ny, static_cast<int>(k % static_cast<std::size_t>(ny)));
      try {
        rows[k] = {x, y, models::eval_model(m, x, y), rep.a(x, y), rep.b(x, y)};
      } catch (const NumericError& e) {
        if (e.kind() != ErrorKind::SingularPoint) throw;
        rows[k] = {x, y, kNaN, kNaN, kNaN};
      }
    });
    io::write_csv(out, {"x", "y", "alpha", "a", "b"}, rows);
    return Ok;
  }
};

struct Normalize {
  ModelArgs model;
  GaugeArgs gauge;
  Range x_window{-1.0, 1.0};
  int samples = 21;

  void add(CLI::App* app) {
    model.add(app);
    gauge.add(app);
    add_range(app, "--x-window", x_window, "x interval lo,hi");
    app->add_option("--samples", samples)->check(CLI::Range(2, 100000))->capture_default_str();
  }

  int run(std::ostream& out) const {
    const auto m = model.build();
    const auto rep = models::metric_rep(m, gauge.kf(m.y_domain), gauge.hf(m.y_domain));
    models::NormalizeOptions opts;
    opts.x_window = to_interval(x_window, "--x-window");
    const auto [nf, cc] = models::normalize(m, rep, opts);
    json pts = json::array();
    double drift = 0.0;
    const Interval yw = models::sampling_window(m.y_domain);
    for (int i = 0; i < samples; ++i) {
      const double y = linspace(yw, samples, i);
      drift = std::max({drift, std::abs(cc.gamma(y)), std::abs(cc.psi(y) - y)});
      const double yt = linspace(nf.y_domain, samples, i);
      json s{{"y", yt}, {"zeta1", nf.zeta1(yt)}};
      s["zeta2"] = nf.zeta2 ? json((*nf.zeta2)(yt)) : json(nullptr);
      pts.push_back(s);
    }
    const double id_tol = 1e-9;
    write_json(out, {{"type", models::to_string(nf.surface_type)},
                     {"flipped", cc.flipped},
                     {"identity", drift <= id_tol},
                     {"y_domain", {nf.y_domain.lo, nf.y_domain.hi}},
                     {"samples", pts},
                     {"tolerances", {{"identity", id_tol}}}});
    return Ok;
  }
};

struct Integrability {
  ModelArgs model;
  GaugeArgs gauge;
  std::string alpha_expr;
  Range lienard_init;
  std::string H = "0";
  double x_base = 0.0;
  Range x_range{-1.0, 1.0};
  int nx = 50, ny = 20;

  void add(CLI::App* app) {
    model.add(app);
    gauge.add(app);
    app->add_option("--alpha-expr", alpha_expr, "alpha(x, y); uses the quadrature path");
    app->add_option("--lienard", lienard_init,
                    "alpha,alpha' at the left end of --x-range; alpha solves the ODE with c = H")
        ->delimiter(',')
        ->expected(2);
    app->add_option("--H", H, "p-mean curvature H(x, y) for the quadrature path")->capture_default_str();
    app->add_option("--x-base", x_base, "base abscissa of the x-integrals")->capture_default_str();
    add_range(app, "--x-range", x_range, "x interval lo,hi");
    app->add_option("--nx", nx)->check(CLI::Range(3, 100000))->capture_default_str();
    app->add_option("--ny", ny)->check(CLI::Range(3, 100000))->capture_default_str();
  }

  int run(std::ostream& out) const {
    const Interval xr = to_interval(x_range, "--x-range");
    const Interval yr = to_interval(model.y_domain, "--y-domain");
    const double pad = 0.1 * xr.width();
    const fundamental::Rect rect{{xr.lo - pad, xr.hi + pad}, yr};
    const fundamental::Grid grid{{xr, yr}, nx, ny};
    const YFunction k = gauge.kf(yr), h = gauge.hf(yr);
    std::string path = "explicit";
    fundamental::Field2D alpha, Hf;
    models::MetricRep rep;
    if (!alpha_expr.empty() && !lienard_init.empty()) {
      throw UsageError("--alpha-expr and --lienard are exclusive");
    }
    if (!alpha_expr.empty() || !lienard_init.empty()) {
      path = "quadrature";
      Hf = {field_from_expr(H), rect};
      if (!alpha_expr.empty()) {
        alpha = {field_from_expr(alpha_expr), rect};
      } else {
        const expr::Expr he = expr::parse(H, {"x", "y"});
        if (expr::depends_on(he, 0) || expr::depends_on(he, 1)) {
          throw UsageError("--lienard needs a constant --H");
        }
        const double c = expr::eval(he, 0.0);
        const double step = 1e-3;
        auto back = lienard::integrate_ivp(lienard_init[0], lienard_init[1], xr.lo, rect.x.lo, step, c);
        const auto fwd = lienard::integrate_ivp(lienard_init[0], lienard_init[1], xr.lo, rect.x.hi, step, c);
        std::reverse(back.begin(), back.end());
        back.insert(back.end(), fwd.begin() + 1, fwd.end());
        const lienard::DenseSolution ds(back, c);
        alpha = {[ds](double x, double) { return ds(x).f; }, rect};
      }
      rep = fundamental::metric_from_alpha_H(alpha, Hf, k, h, x_base);
    } else {
      const auto m = model.build();
      alpha = {[m](double x, double y) { return models::eval_model(m, x, y); }, rect};
      Hf = fundamental::Field2D::constant(0.0, rect);
      rep = models::metric_rep(m, k, h);
    }
    const auto s = fundamental::integrability_residual(alpha, Hf, rep, grid);
    const double tol = 1e-6;
    const bool ok = s.max[0] <= tol && s.max[1] <= tol && s.max[2] <= tol;
    write_json(out, {{"path", path},
                     {"grid", {{"nx", nx}, {"ny", ny}, {"x", {xr.lo, xr.hi}}, {"y", {yr.lo, yr.hi}}}},
                     {"r1", stats_json(s, 0)},
                     {"r2", stats_json(s, 1)},
                     {"r3", stats_json(s, 2)},
                     {"passed", ok},
                     {"tolerances", {{"residual", tol}, {"first_difference_step", 1e-5},
                                     {"second_difference_step", 1e-3}}}});
    return Ok;
  }
};

std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

json mesh_summary(const io::Mesh& m) {
  return {{"nu", m.nu}, {"nv", m.nv}, {"vertices", m.vertices.size()}};
}

void maybe_write_obj(const std::string& path, const SurfaceChart& chart, Interval u, Interval v,
                     int nu, int nv, json& report) {
  if (path.empty()) return;
  const io::Mesh mesh = io::sample_chart(chart, u, v, nu, nv);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  io::write_obj(f, mesh);
  report["obj"] = {{"path", path}, {"mesh", mesh_summary(mesh)}};
}

struct Construct {
  std::string curve;
  std::string zeta1, zeta2;
  Range theta_range{0.0, kTwoPi};
  Range r_range{-2.0, 2.0};
  int nu = 21, nv = 65, samples = 65;
  std::string obj;

  void add(CLI::App* app) {
    auto* c = app->add_option("--curve", curve, "generating curve \"x=...,y=...,z=...\" in theta");
    auto* z1 = app->add_option("--zeta1", zeta1, "zeta1(theta)");
    auto* z2 = app->add_option("--zeta2", zeta2, "zeta2(theta)");
    c->excludes(z1)->excludes(z2);
    z1->needs(z2);
    z2->needs(z1);
    add_range(app, "--theta-range", theta_range, "theta interval lo,hi");
    add_range(app, "--r-range", r_range, "ruling parameter interval lo,hi");
    app->add_option("--nu", nu, "mesh samples along the rulings")->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--nv", nv, "mesh samples along the curve")->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--samples", samples, "theta samples in the report")->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--obj", obj, "write the surface mesh to this OBJ file");
  }

  construct::GeneratingCurve build(Interval th) const {
    if (!zeta1.empty()) {
      return construct::curve_from_zeta(expr::to_yfunction(zeta1, "theta", th),
                                        expr::to_yfunction(zeta2, "theta", th), th);
    }
    if (curve.empty()) throw UsageError("construct needs --curve or --zeta1/--zeta2");
    std::optional<YFunction> comp[3];
    for (const std::string& part : split_top(curve)) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw UsageError("--curve components look like x=<expr>");
      const std::string name = trim(part.substr(0, eq));
      const int idx = name == "x" ? 0 : name == "y" ? 1 : name == "z" ? 2 : -1;
      if (idx < 0 || comp[idx]) throw UsageError("--curve needs each of x, y, z exactly once");
      comp[idx] = expr::to_yfunction(part.substr(eq + 1), "theta", th);
    }
    if (!comp[0] || !comp[1] || !comp[2]) throw UsageError("--curve needs x, y and z");
    return construct::GeneratingCurve::from_components(*comp[0], *comp[1], *comp[2], th);
  }

  int run(std::ostream& out) const {
    const Interval th = to_interval(theta_range, "--theta-range");
    const Interval rr = to_interval(r_range, "--r-range");
    const auto c = build(th);
    const auto ruled = construct::ruled_surface(c, rr);
    const SurfaceChart chart = ruled.chart();
    const auto [z1, z2] = construct::zeta_from_curve(c);

    std::vector<double> thetas(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) thetas[static_cast<std::size_t>(i)] = linspace(th, samples, i);
    json pts = json::array();
    double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
    for (double t : thetas) {
      const double a = z1(t), b = z2(t);
      lo1 = std::min(lo1, a);
      hi1 = std::max(hi1, a);
      lo2 = std::min(lo2, b);
      hi2 = std::max(hi2, b);
      pts.push_back({{"theta", t}, {"zeta1", a}, {"zeta2", b}});
    }
    const double const_tol = 1e-8;
    auto constant_or_null = [&](double lo, double hi) {
      return hi - lo <= const_tol ? json(0.5 * (lo + hi)) : json(nullptr);
    };

    json bad = json::array();
    bool immersed = true;
    for (const auto& r : construct::immersion_locus(c, thetas)) {
      if (r.immersed_everywhere) continue;
      immersed = false;
      bad.push_back({{"theta", r.theta}, {"r", r.bad_radius}});
    }

    const auto leg = verify::legendrian_line_check(chart);
    const int hr = 9, ht = 17;
    std::vector<double> hs(static_cast<std::size_t>(hr * ht), 0.0);
    parallel_for(hs.size(), [&](std::size_t k) {
      const double r = linspace(rr, hr, static_cast<int>(k) / ht);
      const double t = linspace(th, ht, static_cast<int>(k) % ht);
      try {
        hs[k] = std::abs(verify::numeric_H_on_chart(chart, r, t));
      } catch (const NumericError&) {
        hs[k] = 0.0;
      }
    });

    json report{{"source", zeta1.empty() ? "curve" : "zeta"},
                {"theta_range", {th.lo, th.hi}},
                {"r_range", {rr.lo, rr.hi}},
                {"invariants", {{"zeta1", constant_or_null(lo1, hi1)}, {"zeta2", constant_or_null(lo2, hi2)}}},
                {"samples", pts},
                {"immersion", {{"immersed_everywhere", immersed}, {"singular", bad}}},
                {"legendrian", {{"max_contact", leg.max_contact},
                                {"max_second_difference", leg.max_second_difference}}},
                {"max_abs_H", *std::max_element(hs.begin(), hs.end())},
                {"tolerances", {{"constant", const_tol}, {"quadrature_panels_per_unit", 512}}}};
    maybe_write_obj(obj, chart, rr, th, nu, nv, report);
    write_json(out, report);
    return Ok;
  }
};

struct Examples {
  std::string name;
  double A = 0.0, B = 0.0, C = 0.0;
  std::string g = "0";
  std::string theta = "t";
  Range u_range{-2.0, 2.0};
  Range v_range{-2.0, 2.0};
  int n = 11;
  int nu = 21, nv = 21;
  std::string obj;

  void add(CLI::App* app) {
    app->add_option("name", name, "plane|saddle|helicoid|conicoid")
        ->required()
        ->check(CLI::IsMember({"plane", "saddle", "helicoid", "conicoid"}));
    app->add_option("--A", A)->capture_default_str();
    app->add_option("--B", B)->capture_default_str();
    app->add_option("--C", C)->capture_default_str();
    app->add_option("--g", g, "g(y) of the saddle")->capture_default_str();
    app->add_option("--theta", theta, "theta(t) of the helicoid")->capture_default_str();
    add_range(app, "--u-range", u_range, "first parameter interval lo,hi");
    add_range(app, "--v-range", v_range, "second parameter interval lo,hi");
    app->add_option("--n", n, "samples per parameter in the report")->check(CLI::Range(1, 10000))->capture_default_str();
    app->add_option("--nu", nu)->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--nv", nv)->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--obj", obj, "write the surface mesh to this OBJ file");
  }

  int run(std::ostream& out) const {
    const Interval u = to_interval(u_range, "--u-range");
    const Interval v = to_interval(v_range, "--v-range");
    SurfaceChart chart;
    std::function<double(double, double)> closed;
    json extra;
    if (name == "plane") {
      const auto p = construct::bernstein_plane(A, B, C);
      chart = SurfaceChart::from_graph(p.graph);
      const auto s = p.singular_point;
      closed = [s](double x, double y) { return 1.0 / std::hypot(x - s[0], y - s[1]); };
      extra["singular_point"] = {s[0], s[1]};
    } else if (name == "saddle") {
      const double a = (A == 0.0 && B == 0.0) ? 1.0 : A;
      const YFunction gf = expr::to_yfunction(g, "y");
      const auto sd = construct::bernstein_saddle(a, B, gf);
      chart = SurfaceChart::from_graph(sd.graph);
      const RigidMotion mo = sd.to_normal;
      closed = [mo, gf, sd](double x, double y) {
        const HPoint q = apply_motion(mo, {x, y, sd.graph.u(x, y)});
        return 1.0 / std::abs(2.0 * q.x + gf.d1(q.y));
      };
      extra["rotation_angle"] = mo.rotation_angle;
    } else if (name == "helicoid") {
      const YFunction tf = expr::to_yfunction(theta, "t");
      chart = construct::helicoid_chart(tf, u, v);
      closed = [tf](double s, double t) { return construct::helicoid_invariants(tf, s, t).alpha; };
    } else {
      chart = construct::conicoid_chart(u, v);
      closed = [](double s, double t) { return construct::conicoid_invariants(s, t).alpha; };
    }
    chart.du = u;
    chart.dv = v;

    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<double> err(count, kNaN);
    parallel_for(count, [&](std::size_t k) {
      const double a = linspace(u, n, static_cast<int>(k) / n);
      const double b = linspace(v, n, static_cast<int>(k) % n);
      try {
        err[k] = std::abs(verify::numeric_alpha_on_chart(chart, a, b) - closed(a, b));
      } catch (const NumericError&) {
        err[k] = kNaN;
      }
    });
    double worst = 0.0;
    int used = 0;
    for (double e : err) {
      if (std::isnan(e) || std::isinf(e)) continue;
      worst = std::max(worst, e);
      ++used;
    }
    json report{{"example", name},
                {"u_range", {u.lo, u.hi}},
                {"v_range", {v.lo, v.hi}},
                {"alpha_check", {{"max_error", worst}, {"points", used}, {"tolerance", 1e-8}}}};
    for (auto& [key, val] : extra.items()) report[key] = val;
    maybe_write_obj(obj, chart, u, v, nu, nv, report);
    write_json(out, report);
    return Ok;
  }
};

struct VerifyGraph {
  std::string u;
  Range x_window{-2.0, 2.0};
  Range y_window{-2.0, 2.0};
  int n = 41;

  void add(CLI::App* app) {
    app->add_option("--u", u, "u(x, y)")->required();
    add_range(app, "--x-window", x_window, "x interval lo,hi");
    add_range(app, "--y-window", y_window, "y interval lo,hi");
    app->add_option("--grid", n, "samples per axis")->check(CLI::Range(2, 10000))->capture_default_str();
  }

  int run(std::ostream& out) const {
    const auto g = graph_from_expr(u, to_interval(x_window, "--x-window"),
                                   to_interval(y_window, "--y-window"));
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<double> res(count);
    parallel_for(count, [&](std::size_t k) {
      const double x = linspace(g.wx, n, static_cast<int>(k) / n);
      const double y = linspace(g.wy, n, static_cast<int>(k) % n);
      res[k] = std::abs(verify::pmge_residual(g, x, y));
    });
    double mx = 0.0, sum = 0.0;
    for (double r : res) {
      mx = std::max(mx, r);
      sum += r;
    }
    verify::SingularOptions opts;
    opts.grid = n;
    const auto rep = verify::singular_set(g, opts);
    json comps = json::array();
    for (const auto& c : rep.components) {
      json pts = json::array();
      for (const auto& p : c.points) pts.push_back({p[0], p[1]});
      comps.push_back({{"kind", c.kind == verify::SingularKind::Curve ? "curve" : "point"},
                       {"residual", c.residual},
                       {"points", pts}});
    }
    const double tol = 1e-8;
    write_json(out, {{"u", u},
                     {"pmge", {{"max", mx}, {"mean", sum / static_cast<double>(count)},
                               {"samples", count}, {"p_minimal", mx <= tol}}},
                     {"singular_set", {{"components", comps},
                                       {"newton_failures", rep.newton_failures}}},
                     {"tolerances", {{"pmge", tol}, {"newton", rep.newton_tol},
                                     {"max_iterations", rep.max_iterations}}}});
    return Ok;
  }
};

struct GoThrough {
  std::string u;
  Range point;
  Range direction;

  void add(CLI::App* app) {
    app->add_option("--u", u, "u(x, y)")->required();
    app->add_option("--point", point, "x,y on a singular curve")->delimiter(',')->expected(2)->required();
    app->add_option("--direction", direction, "approach direction dx,dy")->delimiter(',')->expected(2);
  }

  int run(std::ostream& out) const {
    const auto g = graph_from_expr(u, {-5.0, 5.0}, {-5.0, 5.0});
    std::optional<std::array<double, 2>> dir;
    if (!direction.empty()) dir = std::array<double, 2>{direction[0], direction[1]};
    const auto r = verify::go_through_check(g, {point[0], point[1]}, dir);
    write_json(out, {{"u", u},
                     {"point", {point[0], point[1]}},
                     {"cos_plus", r.cos_plus},
                     {"cos_minus", r.cos_minus},
                     {"expected_abs", r.expected_abs},
                     {"cos_eta_plus", r.cos_eta_plus},
                     {"cos_eta_minus", r.cos_eta_minus},
                     {"expected_eta_abs", r.expected_eta_abs},
                     {"flip_detected", r.flip_detected},
                     {"tolerances", {{"flip", 1e-4}, {"richardson_levels", 20}}}});
    return Ok;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant p-mean curvature surfaces in the Heisenberg group", "heismin"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  SolveLienard solve;
  PhaseField phase;
  Classify classify;
  Metric metric;
  Normalize normalize;
  Integrability integrability;
  Construct construct;
  Examples examples;
  VerifyGraph verify_graph;
  GoThrough go_through;

  std::vector<std::pair<CLI::App*, std::function<int(std::ostream&)>>> commands;
  auto reg = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    cmd.add(sub);
    commands.emplace_back(sub, [&cmd](std::ostream& o) { return cmd.run(o); });
  };
  reg("solve-lienard", "integrate, evaluate or fit the Lienard equation (CSV / JSON)", solve);
  reg("phase-field", "phase-plane vector field (CSV)", phase);
  reg("classify", "type of an alpha model (JSON)", classify);
  reg("metric", "alpha, a, b over a grid (CSV)", metric);
  reg("normalize", "zeta normal form of a model (JSON)", normalize);
  reg("integrability", "residuals of the integrability system (JSON)", integrability);
  reg("construct", "ruled surface from a curve or from zeta1, zeta2 (JSON, OBJ)", construct);
  reg("examples", "closed-form examples checked numerically (JSON, OBJ)", examples);
  reg("verify-graph", "graph PDE residual and singular set (JSON)", verify_graph);
  reg("go-through", "characteristic direction across a singular curve (JSON)", go_through);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    for (auto& [sub, fn] : commands) {
      if (sub->parsed()) {
        std::ostringstream buf;
        const int code = fn(buf);
        out << buf.str();
        return code;
      }
    }
    return Usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << '\n';
    return Parse;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return Numeric;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return Numeric;
  }
}

}  // namespace heismin::cli
