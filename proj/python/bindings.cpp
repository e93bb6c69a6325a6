#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "staggered/basis.hpp"
#include "staggered/driver.hpp"
#include "staggered/errors.hpp"
#include "staggered/reference.hpp"
#include "staggered/riemann.hpp"

namespace py = pybind11;
using namespace staggered;

namespace {

// Config values arrive as Python objects; the text parser owns validation.
std::string as_setting(const py::handle& v) {
  if (py::isinstance<py::bool_>(v)) return v.cast<bool>() ? "on" : "off";
  return py::str(v).cast<std::string>();
}

RunConfig config_from(const py::dict& settings) {
  RunConfig cfg;
  for (const auto& [k, v] : settings) apply_setting(cfg, k.cast<std::string>(), as_setting(v));
  validate(cfg);
  return cfg;
}

py::dict primitive_dict(const Primitive& w) {
  py::dict d;
  d["rho"] = w.rho;
  d["u"] = w.u;
  d["p"] = w.p;
  return d;
}

py::dict run(const py::dict& settings) {
  const RunConfig cfg = config_from(settings);
  RunResult r = [&] {
    py::gil_scoped_release release;
    return run_case(cfg);
  }();
  py::dict out;
  py::dict summary;
  for (const auto& [k, v] : r.summary) summary[py::str(k)] = v;
  out["summary"] = summary;
  out["t"] = r.t;
  out["steps"] = r.steps;
  out["min_rho"] = r.min_rho;
  out["min_p"] = r.min_p;
  out["identity_residue"] = r.identities.max();
  out["drift_momentum"] = r.ledger.max_abs_drift_m();
  out["drift_energy"] = r.ledger.max_abs_drift_E();
  if (r.l1) out["l1"] = py::dict(py::arg("rho") = r.l1->rho, py::arg("u") = r.l1->u, py::arg("p") = r.l1->p);
  if (r.shock_position) out["shock_position"] = *r.shock_position;
  if (r.shock_position_exact) out["shock_position_exact"] = *r.shock_position_exact;

  const auto rows = sample_profile(r.state, r.bench.gas());
  std::vector<double> x, rho, u, p, e;
  for (const auto& row : rows) {
    x.push_back(row.x);
    rho.push_back(row.rho);
    u.push_back(row.u);
    p.push_back(row.p);
    e.push_back(row.e);
  }
  out["profile"] = py::dict(py::arg("x") = x, py::arg("rho") = rho, py::arg("u") = u, py::arg("p") = p,
                            py::arg("e") = e);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Staggered residual-distribution solver for the 1D Euler equations";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<PositivityError>(m, "PositivityError", PyExc_RuntimeError);
  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("config_keys", &config_keys);

  m.def("builtin_cases", [] {
    py::list out;
    for (const auto& c : builtin_cases()) {
      py::dict d;
      d["name"] = c.name;
      d["domain"] = py::make_tuple(c.a, c.b);
      d["x0"] = c.x0;
      d["t_final"] = c.t_final;
      d["cfl"] = c.cfl;
      d["gamma"] = c.gamma;
      d["reference"] = std::string(to_string(c.reference));
      if (c.reference == ReferenceKind::riemann) {
        d["left"] = primitive_dict(c.left);
        d["right"] = primitive_dict(c.right);
      }
      out.append(d);
    }
    return out;
  });

  m.def(
      "exact_riemann",
      [](std::tuple<double, double, double> l, std::tuple<double, double, double> r, double gamma,
         std::vector<double> xi) {
        const Primitive left{std::get<0>(l), std::get<1>(l), std::get<2>(l)};
        const Primitive right{std::get<0>(r), std::get<1>(r), std::get<2>(r)};
        const ExactRiemannSolution sol(left, right, GasModel(gamma));
        py::dict d;
        d["p_star"] = sol.p_star();
        d["u_star"] = sol.u_star();
        d["rho_star_left"] = sol.rho_star_left();
        d["rho_star_right"] = sol.rho_star_right();
        std::vector<double> rho, u, p;
        for (double s : xi) {
          const Primitive w = sol.sample(s);
          rho.push_back(w.rho);
          u.push_back(w.u);
          p.push_back(w.p);
        }
        d["rho"] = rho;
        d["u"] = u;
        d["p"] = p;
        return d;
      },
      py::arg("left"), py::arg("right"), py::arg("gamma") = 1.4, py::arg("xi") = std::vector<double>{},
      "Star state of (rho, u, p) left/right data, plus samples at x/t = xi.");

  m.def("basis_eval", &basis::eval, py::arg("degree"), py::arg("index"), py::arg("lam"));
  m.def(
      "bezier_value", [](std::vector<double> c, double lam) { return basis::bezier_value(c, lam); },
      py::arg("coeffs"), py::arg("lam"));

  m.def(
      "isentropic_exact",
      [](double x, double t) {
        const auto s = isentropic_exact(x, t, smooth_density, 1.0);
        return py::make_tuple(s.rho, s.u);
      },
      py::arg("x"), py::arg("t"), "Exact (rho, u) of the smooth case at (x, t).");

  m.def("run_case", &run, py::arg("config") = py::dict(),
        "Runs one case. Keys are the configuration-file keys; returns summary, profile and diagnostics.");

  m.def(
      "convergence_study",
      [](const py::dict& settings, std::vector<int> meshes) {
        const RunConfig cfg = config_from(settings);
        std::vector<ConvergenceRow> rows;
        {
          py::gil_scoped_release release;
          rows = convergence_study(cfg, meshes);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["n"] = r.n;
          d["l1_rho"] = r.error.rho;
          d["l1_u"] = r.error.u;
          d["l1_p"] = r.error.p;
          d["order_rho"] = r.order_rho ? py::cast(*r.order_rho) : py::none();
          d["order_u"] = r.order_u ? py::cast(*r.order_u) : py::none();
          d["order_p"] = r.order_p ? py::cast(*r.order_p) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("config") = py::dict(), py::arg("meshes") = std::vector<int>{50, 100, 200, 400});

  m.def(
      "stability_matrix",
      [](int n_cells, double t_report, double cfl) {
        std::vector<StabilityRow> rows;
        {
          py::gil_scoped_release release;
          rows = stability_matrix({n_cells, t_report, cfl});
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["flux"] = std::string(to_string(r.flux));
          d["layout"] = r.layout;
          d["stable"] = r.stable;
          d["step"] = r.step;
          d["time"] = r.time;
          d["max_growth"] = r.max_growth;
          d["reason"] = r.reason;
          out.append(d);
        }
        return out;
      },
      py::arg("n_cells") = 100, py::arg("t_report") = 0.025, py::arg("cfl") = 0.4);
}
