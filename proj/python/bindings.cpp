// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bifront/config.hpp"
#include "bifront/golden.hpp"
#include "bifront/io.hpp"
#include "bifront/profile.hpp"
#include "bifront/sweep.hpp"
#include "bifront/validate.hpp"

namespace py = pybind11;
using namespace bifront;

namespace {

ReactionSpec make_spec(const std::string& name, py::object param,
                       py::object poly, py::object pieces) {
  if (!poly.is_none())
    return ReactionSpec::polynomial("custom", poly.cast<std::vector<double>>());
  if (!pieces.is_none()) {
    auto [breaks, coefs] =
        pieces.cast<std::pair<std::vector<double>,
                              std::vector<std::vector<double>>>>();
    return ReactionSpec::piecewise("custom", breaks, coefs);
  }
  std::optional<double> p;
  if (!param.is_none()) p = param.cast<double>();
  return ReactionSpec::catalog(name, p);
}

py::dict calculus_dict(const ReactionCalculus& c) {
  py::dict d;
  d["type"] = std::string(1, c.label());
  d["alpha"] = c.alpha;
  d["k"] = c.k;
  d["F1"] = c.F1;
  d["fprime0"] = c.fprime0;
  d["f_max"] = c.f_max;
  d["v_max"] = c.v_max;
  d["v_plus"] = c.v_plus;
  d["v_star"] = c.v_star;
  d["balanced"] = c.balanced;
  d["kpp"] = c.kpp;
  d["assumption_f"] = c.assumption_f;
  return d;
}

py::object json_to_py(const nlohmann::json& j) {
  py::module_ json_mod = py::module_::import("json");
  return json_mod.attr("loads")(j.dump());
}

SolverControls controls_from(double ctol, double rtol) {
  SolverControls ctl;
  if (ctol > 0.0) ctl.ctol = ctol;
  if (rtol > 0.0) ctl.rtol = rtol;
  return ctl;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Critical speeds and traveling-front profiles for reaction-diffusion "
      "equations with Born-Infeld (Minkowski) diffusion";

  m.def(
      "classify",
      [](const std::string& name, py::object param, py::object poly,
         py::object pieces) {
        return calculus_dict(classify(make_spec(name, param, poly, pieces)));
      },
      py::arg("name") = "fisher", py::arg("param") = py::none(),
      py::arg("poly") = py::none(), py::arg("pieces") = py::none(),
      "Classify a reaction term and return its derived calculus.");

  m.def(
      "bounds",
      [](const std::string& name, double a, double b, py::object param,
         py::object poly, py::object pieces) {
        auto calc = classify(make_spec(name, param, poly, pieces));
        return json_to_py(to_json(compute_bounds(calc, ModelParams(a, b))));
      },
      py::arg("name") = "fisher", py::arg("a") = 1.0, py::arg("b") = 1.0,
      py::arg("param") = py::none(), py::arg("poly") = py::none(),
      py::arg("pieces") = py::none(),
      "Analytic lower/upper bounds on the critical speed.");

  m.def(
      "speed",
      [](const std::string& name, double a, double b, py::object param,
         py::object poly, py::object pieces, double ctol, double rtol) {
        auto calc = classify(make_spec(name, param, poly, pieces));
        auto res =
            compute_speed(calc, ModelParams(a, b), controls_from(ctol, rtol));
        return json_to_py(to_json(res));
      },
      py::arg("name") = "fisher", py::arg("a") = 1.0, py::arg("b") = 1.0,
      py::arg("param") = py::none(), py::arg("poly") = py::none(),
      py::arg("pieces") = py::none(), py::arg("ctol") = 0.0,
      py::arg("rtol") = 0.0, "Critical speed by two-point shooting.");

  m.def(
      "profile",
      [](const std::string& name, double a, double b, py::object param,
         py::object c_override, py::object v0) {
        auto calc = classify(make_spec(name, param, py::none(), py::none()));
        SolverControls ctl;
        ModelParams p(a, b);
        double c = c_override.is_none()
                       ? compute_speed(calc, p, ctl).c_star
                       : c_override.cast<double>();
        auto red = critical_reduction(calc, p, c, ctl);
        double V0 =
            v0.is_none() ? calc.default_normalization() : v0.cast<double>();
        return json_to_py(to_json(reconstruct_profile(red, V0, ctl)));
      },
      py::arg("name") = "fisher", py::arg("a") = 1.0, py::arg("b") = 1.0,
      py::arg("param") = py::none(), py::arg("c") = py::none(),
      py::arg("v0") = py::none(),
      "Sampled front profile (z, v, dv) at the critical or given speed.");

  m.def(
      "linear_critical_speed",
      [](const std::string& name, py::object param) {
        auto calc = classify(make_spec(name, param, py::none(), py::none()));
        auto [c, prof] = linear_critical(calc, {});
        py::dict d;
        d["c"] = c;
        d["profile"] = json_to_py(to_json(prof));
        return d;
      },
      py::arg("name") = "fisher", py::arg("param") = py::none(),
      "Critical speed and profile of the linear-diffusion reference.");

  m.def(
      "limit_profile",
      [](const std::string& name, const std::string& regime, py::object param,
         py::object v0) {
        auto calc = classify(make_spec(name, param, py::none(), py::none()));
        double V0 =
            v0.is_none() ? calc.default_normalization() : v0.cast<double>();
        auto lp = make_limit_profile(calc, regime_from_string(regime), V0);
        return json_to_py(to_json(lp));
      },
      py::arg("name"), py::arg("regime"), py::arg("param") = py::none(),
      py::arg("v0") = py::none(),
      "Closed-form limit profile for an asymptotic parameter regime.");

  m.def(
      "classify_regime",
      [](const std::string& a, const std::string& b, py::object ratio_ba,
         py::object ratio_b2a) {
        auto trend = [](const std::string& s) {
          if (s == "zero" || s == "0") return Trend::ToZero;
          if (s == "bounded" || s == "q") return Trend::Bounded;
          if (s == "infinity" || s == "inf") return Trend::ToInfinity;
          throw DomainError("trend must be zero|bounded|infinity");
        };
        std::optional<Trend> rba, rb2a;
        if (!ratio_ba.is_none()) rba = trend(ratio_ba.cast<std::string>());
        if (!ratio_b2a.is_none()) rb2a = trend(ratio_b2a.cast<std::string>());
        return json_to_py(to_json(classify_regime(trend(a), trend(b), rba, rb2a)));
      },
      py::arg("a"), py::arg("b"), py::arg("ratio_ba") = py::none(),
      py::arg("ratio_b2a") = py::none(),
      "Parameter-plane taxonomy cell for the given trends.");

  m.def(
      "sweep",
      [](const std::string& name, const std::string& axis,
         std::vector<double> values, py::object param, double base_a,
         double base_b, bool distances, py::object expected_order, int jobs) {
        SweepPlan plan;
        plan.reaction = make_spec(name, param, py::none(), py::none());
        if (axis == "a") plan.axis = SweepAxis::A;
        else if (axis == "b") plan.axis = SweepAxis::B;
        else if (axis == "epsilon") plan.axis = SweepAxis::EpsilonCoupling;
        else if (axis == "gamma") plan.axis = SweepAxis::GammaCoupling;
        else throw DomainError("axis must be a|b|epsilon|gamma");
        plan.values = std::move(values);
        plan.base = ModelParams(base_a, base_b);
        plan.outputs.distances = distances;
        plan.outputs.profiles = distances;
        if (!expected_order.is_none())
          plan.expected_order = expected_order.cast<double>();
        return json_to_py(to_json(run_sweep(plan, {}, jobs)));
      },
      py::arg("name"), py::arg("axis"), py::arg("values"),
      py::arg("param") = py::none(), py::arg("base_a") = 1.0,
      py::arg("base_b") = 1.0, py::arg("distances") = false,
      py::arg("expected_order") = py::none(), py::arg("jobs") = 1,
      "Parameter sweep: one speed record per value.");

  m.def("golden_table", [] {
    py::list rows;
    for (const auto& cell : golden_table()) {
      py::dict d;
      d["family"] = cell.family;
      d["reaction"] = cell.reaction;
      d["a"] = cell.a;
      d["b"] = cell.b;
      d["reference"] = cell.reference;
      rows.append(d);
    }
    return rows;
  }, "The bundled reference table of critical-speed approximations.");

  m.def("validate", [] {
    py::list rows;
    for (const auto& c : run_validation({})) {
      py::dict d;
      d["name"] = c.name;
      d["pass"] = c.pass;
      d["message"] = c.message;
      rows.append(d);
    }
    return rows;
  }, "Run the cross-module invariant suite.");

  m.attr("__version__") = "0.1.0";
}
