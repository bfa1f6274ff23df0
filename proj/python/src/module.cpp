#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "heismin/cli.hpp"
#include "heismin/constructor.hpp"
#include "heismin/errors.hpp"
#include "heismin/expr.hpp"
#include "heismin/heis_core.hpp"
#include "heismin/lienard.hpp"
#include "heismin/surface_models.hpp"
#include "heismin/verifier.hpp"

namespace py = pybind11;
using namespace heismin;

namespace {

using Triple = std::array<double, 3>;

HPoint hp(const Triple& t) { return {t[0], t[1], t[2]}; }
Triple tr(const HPoint& p) { return {p.x, p.y, p.z}; }

GraphSurface graph(const std::string& src) {
  const std::vector<std::string> vars{"x", "y"};
  const auto u = expr::parse(src, vars);
  const auto ux = expr::derivative(u, 0), uy = expr::derivative(u, 1);
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
  g.uxx = wrap(expr::derivative(ux, 0));
  g.uxy = wrap(expr::derivative(ux, 1));
  g.uyy = wrap(expr::derivative(uy, 1));
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constant p-mean curvature surfaces in the Heisenberg group";

  static py::exception<NumericError> numeric_error(m, "NumericError", PyExc_ArithmeticError);
  static py::exception<SyntaxError> syntax_error(m, "ExprSyntaxError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericError& e) {
      py::set_error(numeric_error, e.what());
    } catch (const SyntaxError& e) {
      py::set_error(syntax_error, e.what());
    }
  });

  m.def("group_mul", [](const Triple& p, const Triple& q) { return tr(group_mul(hp(p), hp(q))); });
  m.def("group_inv", [](const Triple& p) { return tr(group_inv(hp(p))); });
  m.def("contact_value", [](const Triple& p, const Triple& v) {
    return contact_value(hp(p), Vec3{v[0], v[1], v[2]});
  });

  py::class_<lienard::Zero>(m, "Zero").def(py::init<>());
  py::class_<lienard::SpecialI>(m, "SpecialI")
      .def(py::init<double>(), py::arg("c1"))
      .def_readwrite("c1", &lienard::SpecialI::c1);
  py::class_<lienard::SpecialII>(m, "SpecialII")
      .def(py::init<double>(), py::arg("c1"))
      .def_readwrite("c1", &lienard::SpecialII::c1);
  py::class_<lienard::General>(m, "General")
      .def(py::init<double, double>(), py::arg("c1"), py::arg("c2"))
      .def_readwrite("c1", &lienard::General::c1)
      .def_readwrite("c2", &lienard::General::c2);

  m.def("family_name", &lienard::family_name);
  m.def(
      "eval_alpha",
      [](const lienard::AlphaSolution& s, double x) {
        const auto st = lienard::eval_alpha(s, x);
        return std::make_pair(st.alpha, st.v);
      },
      "(alpha, alpha') of a closed-form solution");
  m.def(
      "lienard_residual",
      [](const lienard::AlphaSolution& s, double x, double H) { return lienard::lienard_residual(s, x, H); },
      py::arg("solution"), py::arg("x"), py::arg("H") = 0.0);
  m.def("fit_solution", [](double a, double v, double x0) { return lienard::fit_solution(a, v, x0); });
  m.def("conserved_quantity", [](double a, double v) { return lienard::conserved_quantity({a, v}); });
  m.def(
      "integrate_ivp",
      [](double a0, double v0, double x0, double x1, double step, double H) {
        std::vector<Triple> out;
        for (const auto& p : lienard::integrate_ivp(a0, v0, x0, x1, step, H)) {
          out.push_back({p.x, p.state.alpha, p.state.v});
        }
        return out;
      },
      py::arg("alpha0"), py::arg("v0"), py::arg("x0"), py::arg("x1"), py::arg("step") = 1e-3,
      py::arg("H") = 0.0, "RK4 trajectory as (x, alpha, alpha') rows");

  m.def(
      "classify",
      [](const std::string& family, const std::string& c1, const std::string& c2,
         std::pair<double, double> x_window, std::pair<double, double> y_domain) {
        const Interval dom{y_domain.first, y_domain.second};
        models::AlphaModel am;
        if (family == "vertical") am = models::AlphaModel::vertical(dom);
        else if (family == "special1") am = models::AlphaModel::special_i(expr::to_yfunction(c1, "y", dom), dom);
        else if (family == "special2") am = models::AlphaModel::special_ii(expr::to_yfunction(c1, "y", dom), dom);
        else if (family == "general")
          am = models::AlphaModel::general(expr::to_yfunction(c1, "y", dom), expr::to_yfunction(c2, "y", dom), dom);
        else throw py::value_error("family must be vertical, special1, special2 or general");
        return std::string(models::to_string(models::classify(am, {x_window.first, x_window.second})));
      },
      py::arg("family"), py::arg("c1") = "0", py::arg("c2") = "1",
      py::arg("x_window") = std::make_pair(-1.0, 1.0), py::arg("y_domain") = std::make_pair(-1.0, 1.0));

  m.def("pmge_residual", [](const std::string& u, double x, double y) {
    return verify::pmge_residual(graph(u), x, y);
  });
  m.def(
      "singular_set",
      [](const std::string& u) {
        std::vector<std::pair<std::string, std::vector<std::array<double, 2>>>> out;
        for (const auto& c : verify::singular_set(graph(u)).components) {
          out.emplace_back(c.kind == verify::SingularKind::Curve ? "curve" : "point", c.points);
        }
        return out;
      },
      "Components of the singular set of the graph z = u(x, y) on [-5, 5]^2");
  m.def("helicoid_alpha", [](const std::string& theta, double s, double t) {
    const auto chart = construct::helicoid_chart(expr::to_yfunction(theta, "t"));
    return verify::numeric_alpha_on_chart(chart, s, t);
  });
  m.def(
      "zeta_round_trip",
      [](const std::string& z1, const std::string& z2, int samples) {
        const Interval dom{0.0, 6.283185307179586};
        const auto f1 = expr::to_yfunction(z1, "theta", dom), f2 = expr::to_yfunction(z2, "theta", dom);
        const auto back = construct::zeta_from_curve(construct::curve_from_zeta(f1, f2, dom));
        std::vector<Triple> out;
        for (int i = 0; i < samples; ++i) {
          const double t = dom.width() * i / (samples - 1);
          out.push_back({t, back.first(t), back.second(t)});
        }
        return out;
      },
      py::arg("zeta1"), py::arg("zeta2"), py::arg("samples") = 33,
      "(theta, zeta1, zeta2) recovered from the curve built out of zeta1, zeta2");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run a command line; returns (exit code, stdout text, stderr text)");
}
