// Python bindings: scattering matrices, observables of Schrödinger and Dirac
// junctions, special functions, and the config-driven runner.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "qjunction/config.hpp"
#include "qjunction/dirac.hpp"
#include "qjunction/numerics.hpp"
#include "qjunction/runner.hpp"
#include "qjunction/schrodinger.hpp"

namespace py = pybind11;
using namespace qjunction;

namespace {

Statistics parse_statistics(const std::string& s) {
  if (s == "fermi") return Statistics::fermi;
  if (s == "bose") return Statistics::bose;
  throw ValidationError("statistics must be 'fermi' or 'bose', got '" + s + "'");
}

std::optional<GaugePhases> to_gauge(const std::optional<std::vector<double>>& g) {
  if (!g) return std::nullopt;
  return GaugePhases{*g};
}

EvalOptions options(const std::string& method, double rel_tol) {
  EvalOptions o;
  if (method == "auto") {
    o.method = Method::automatic;
  } else if (method == "closed-form") {
    o.method = Method::closed_form;
  } else if (method == "quadrature") {
    o.method = Method::quadrature;
  } else {
    throw ValidationError("method must be 'auto', 'closed-form' or 'quadrature', got '" + method + "'");
  }
  if (rel_tol > 0.0) o.quadrature.rel_tol = rel_tol;
  o.quadrature.validate();
  return o;
}

// lambda = None means a scale-invariant coupling.
SchrodingerSystem make_system(const ComplexMatrix& u, const std::vector<double>& beta, const std::vector<double>& mu,
                              std::optional<double> lambda, double mass, double charge, const std::string& statistics,
                              const std::optional<std::vector<double>>& gauge, bool override_bound_states) {
  const UnitaryMatrix um = UnitaryMatrix::checked(u);
  ScatteringModel::Source src = lambda ? ScatteringModel::Source(VertexCoupling(um, *lambda))
                                       : ScatteringModel::Source(CriticalCoupling{um});
  return SchrodingerSystem(mass, charge, ScatteringModel(src, to_gauge(gauge), charge),
                           ReservoirBank(beta, mu, parse_statistics(statistics)), override_bound_states);
}

py::dict as_dict(const LeadVector& v) {
  py::dict d;
  d["values"] = v.values;
  d["method"] = v.method;
  d["converged"] = v.converged;
  d["error_estimate"] = v.error_estimate;
  return d;
}

py::dict as_dict(const LeadMatrix& m) {
  py::dict d;
  d["values"] = m.values;
  d["method"] = m.method;
  d["converged"] = m.converged;
  d["error_estimate"] = m.error_estimate;
  return d;
}

py::tuple run(const std::string& mode, const std::string& config_text, int workers, double tol,
              bool override_bound_states) {
  RunConfig cfg = parse_config(config_text);
  if (override_bound_states) cfg.override_bound_states = true;
  if (tol > 0.0) {
    cfg.quadrature.rel_tol = tol;
    cfg.quadrature.validate();
  }
  RunReport report;
  {
    py::gil_scoped_release release;
    if (mode == "point") {
      report = run_point(cfg);
    } else if (mode == "sweep") {
      report = run_sweep(cfg, workers);
    } else if (mode == "check") {
      report = run_check(cfg);
    } else {
      throw ValidationError("mode must be 'point', 'sweep' or 'check', got '" + mode + "'");
    }
  }
  return py::make_tuple(report.exit_code(), report.document.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady-state transport and noise in quantum wire junctions";
  m.attr("__version__") = kVersion;

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<BoundStateError>(m, "BoundStateError", validation.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", error.ptr());

  m.def("smatrix", [](const ComplexMatrix& u, double lambda, double k) {
    return smatrix(VertexCoupling(UnitaryMatrix::checked(u), lambda), k);
  }, py::arg("U"), py::arg("lam"), py::arg("k"));
  m.def("critical_smatrix", [](const ComplexMatrix& u, double k) { return critical_smatrix(UnitaryMatrix::checked(u), k); },
        py::arg("U"), py::arg("k"));
  m.def("two_lead_smatrix", [](double eta1, double eta2, double theta, double phi, double k) {
    const TwoLeadParams p{eta1, eta2, theta, phi};
    p.validate();
    return two_lead_smatrix(p, k);
  }, py::arg("eta1"), py::arg("eta2"), py::arg("theta"), py::arg("phi"), py::arg("k"));

  m.def("polylog", &polylog, py::arg("s"), py::arg("x"));
  m.def("exp_integral_e1", &exp_integral_e1, py::arg("a"));

  py::class_<SchrodingerSystem>(m, "Schrodinger")
      .def(py::init(&make_system), py::arg("U"), py::arg("beta"), py::arg("mu"), py::arg("lam") = py::none(),
           py::arg("mass") = 1.0, py::arg("charge") = 1.0, py::arg("statistics") = "fermi",
           py::arg("gauge") = py::none(), py::arg("override_bound_states") = false)
      .def_property_readonly("leads", &SchrodingerSystem::leads)
      .def_property_readonly("bound_state_free", &SchrodingerSystem::bound_state_free)
      .def("current", [](const SchrodingerSystem& s, const std::string& method, double tol) {
        return as_dict(steady_current(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0)
      .def("heat_current", [](const SchrodingerSystem& s, const std::string& method, double tol) {
        return as_dict(heat_current(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0)
      .def("conductance", [](const SchrodingerSystem& s, const std::string& method, double tol) {
        return as_dict(conductance(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0)
      .def("noise", [](const SchrodingerSystem& s, const std::string& method, double tol) {
        return as_dict(noise_zero_freq(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0)
      .def("charge_density", [](const SchrodingerSystem& s, int lead, double x) {
        const ChargeDensity c = charge_density_profile(s, lead - 1, x);
        py::dict d;
        d["total"] = c.total;
        d["oscillating"] = c.oscillating;
        d["non_equilibrium"] = c.non_equilibrium;
        d["converged"] = c.converged;
        return d;
      }, py::arg("lead"), py::arg("x"))
      .def("energy_density", [](const SchrodingerSystem& s, int lead, double x) {
        const EnergyDensity e = energy_density_profile(s, lead - 1, x);
        py::dict d;
        d["total"] = e.total;
        d["oscillating"] = e.oscillating;
        d["non_equilibrium"] = e.non_equilibrium;
        d["stefan_boltzmann"] = e.stefan_boltzmann;
        d["converged"] = e.converged;
        return d;
      }, py::arg("lead"), py::arg("x"));

  py::class_<DiracSystem>(m, "Dirac")
      .def(py::init([](const ComplexMatrix& u, const std::vector<double>& beta, const std::vector<double>& mu,
                       const std::vector<double>& mu_tilde, double charge,
                       const std::optional<std::vector<double>>& gauge) {
             return DiracSystem(charge, UnitaryMatrix::checked(u), DiracReservoirBank(beta, mu, mu_tilde), to_gauge(gauge));
           }),
           py::arg("U"), py::arg("beta"), py::arg("mu"), py::arg("mu_tilde"), py::arg("charge") = 1.0,
           py::arg("gauge") = py::none())
      .def("current", [](const DiracSystem& s, const std::string& method, double tol) {
        return as_dict(dirac_current(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0)
      .def("heat_current", [](const DiracSystem& s, const std::string& method, double tol) {
        return as_dict(dirac_heat_current(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0)
      .def("conductance", [](const DiracSystem& s) { return as_dict(dirac_conductance(s)); })
      .def("densities", [](const DiracSystem& s) {
        const DiracDensities d = dirac_densities(s);
        py::dict out;
        out["charge"] = d.charge.values;
        out["energy"] = d.energy.values;
        return out;
      })
      .def("noise", [](const DiracSystem& s, const std::string& method, double tol) {
        return as_dict(dirac_noise_zero_freq(s, options(method, tol)));
      }, py::arg("method") = "auto", py::arg("tol") = 0.0);

  m.def("run", &run, py::arg("mode"), py::arg("config_text"), py::arg("workers") = 0, py::arg("tol") = 0.0,
        py::arg("override_bound_states") = false,
        "Runs a JSON config in 'point', 'sweep' or 'check' mode; returns (exit_code, table_text).");
}
