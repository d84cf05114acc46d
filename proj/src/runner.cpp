#include "qjunction/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace qjunction {

namespace {

std::string index_name(const std::string& prefix, int i) { return prefix + "_" + std::to_string(i + 1); }
std::string index_name(const std::string& prefix, int i, int j) {
  return prefix + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}
std::string pair_name(const std::string& prefix, int i, int j, int n) {
  // P_12 reads fine up to 9 leads; beyond that separate the indices.
  if (n < 10) return index_name(prefix, i, j);
  return prefix + "_" + std::to_string(i + 1) + "." + std::to_string(j + 1);
}

Evaluation from_vector(const LeadVector& v, const std::string& prefix, bool kirchhoff = true) {
  Evaluation e;
  e.observable = v.observable;
  e.units = v.units;
  e.method = v.method;
  e.converged = v.converged;
  e.error_estimate = v.error_estimate;
  e.notes = v.notes;
  if (kirchhoff) {
    e.kirchhoff_residual = v.kirchhoff_residual();
    e.kirchhoff_ok = v.kirchhoff_ok();
  }
  for (int i = 0; i < v.size(); ++i) e.fields.push_back({index_name(prefix, i), v[i]});
  return e;
}

Evaluation from_matrix(const LeadMatrix& m, const std::string& prefix) {
  Evaluation e;
  e.observable = m.observable;
  e.units = m.units;
  e.method = m.method;
  e.converged = m.converged;
  e.error_estimate = m.error_estimate;
  e.notes = m.notes;
  e.kirchhoff_residual = m.row_sums_vanish ? std::max(m.column_residual(), m.row_residual()) : m.column_residual();
  e.kirchhoff_ok = m.kirchhoff_ok();
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e.fields.push_back({pair_name(prefix, i, j, n), m(i, j)});
  return e;
}

Evaluation limits_evaluation(const LeadVector& high, const LeadVector& zero) {
  Evaluation e;
  e.observable = "current_limits";
  e.units = high.units;
  e.method = "closed-form";
  e.kirchhoff_residual = std::max(high.kirchhoff_residual(), zero.kirchhoff_residual());
  e.kirchhoff_ok = high.kirchhoff_ok() && zero.kirchhoff_ok();
  for (int i = 0; i < high.size(); ++i) e.fields.push_back({index_name("Jhigh", i), high[i]});
  for (int i = 0; i < zero.size(); ++i) e.fields.push_back({index_name("Jzero", i), zero[i]});
  return e;
}

void evaluate_schrodinger(const RunConfig& cfg, const EvalOptions& opts, PointResult& out) {
  const SchrodingerSystem sys = make_schrodinger(cfg);
  out.bound_state_free = sys.bound_state_free();
  for (const std::string& name : cfg.observables) {
    if (name == "current") {
      out.evaluations.push_back(from_vector(steady_current(sys, opts), "J"));
    } else if (name == "current_limits") {
      if (!sys.model().is_critical()) throw DomainError("current_limits: needs a scale-invariant (critical) coupling");
      std::vector<double> mu;
      for (const auto& r : cfg.reservoirs) mu.push_back(r.mu);
      const CurrentLimits lim = steady_current_limits(sys.model().critical_matrix(), mu, cfg.charge);
      out.evaluations.push_back(limits_evaluation(lim.high_temperature, lim.zero_temperature));
    } else if (name == "conductance") {
      out.evaluations.push_back(from_matrix(conductance(sys, opts), "G"));
    } else if (name == "heat_current") {
      out.evaluations.push_back(from_vector(heat_current(sys, opts), "heat"));
    } else if (name == "noise") {
      out.evaluations.push_back(from_matrix(noise_zero_freq(sys, opts), "P"));
    } else if (name == "shot_noise") {
      if (!sys.model().is_critical()) throw DomainError("shot_noise: needs a scale-invariant (critical) coupling");
      std::vector<double> mu;
      for (const auto& r : cfg.reservoirs) mu.push_back(r.mu);
      out.evaluations.push_back(
          from_matrix(shot_noise(sys.model().critical_matrix(), mu, cfg.statistics, cfg.charge), "Pshot"));
    } else if (name == "johnson_nyquist") {
      if (!sys.model().is_critical()) throw DomainError("johnson_nyquist: needs a scale-invariant (critical) coupling");
      if (!sys.bank().common_temperature()) throw DomainError("johnson_nyquist: needs a common temperature");
      out.evaluations.push_back(
          from_matrix(johnson_nyquist_noise(sys.model().critical_matrix(), sys.bank().beta(0), cfg.charge), "Pjn"));
    } else if (name == "stefan_boltzmann") {
      if (!sys.model().is_critical()) {
        throw DomainError("stefan_boltzmann: the closed form needs a scale-invariant (critical) coupling");
      }
      sys.require_density_admissible();
      out.evaluations.push_back(
          from_vector(stefan_boltzmann_closed_form(sys.model().critical_matrix(), sys.bank(), cfg.mass), "eps", false));
    } else if (name == "thermal_noise") {
      if (cfg.coupling.kind != CouplingSpec::Kind::two_lead) throw DomainError("thermal_noise: needs the two-lead family");
      if (!sys.bank().common_temperature() || cfg.reservoirs[0].mu != 0.0 || cfg.reservoirs[1].mu != 0.0) {
        throw DomainError("thermal_noise: needs a common beta and mu = 0 on both leads");
      }
      const ThermalNoiseBounds b =
          thermal_noise_bounds_two_lead(cfg.coupling.two_lead, cfg.mass, cfg.charge, cfg.reservoirs[0].beta, opts.quadrature);
      Evaluation e;
      e.observable = "thermal_noise";
      e.units = "charge^2/time";
      e.method = "quadrature";
      e.converged = b.converged;
      e.notes = b.notes;
      e.fields = {{"P_11", b.value}, {"lower", b.lower}, {"upper", b.upper}, {"quoted_lower", b.quoted_lower}};
      out.evaluations.push_back(std::move(e));
    } else if (name == "charge_density" || name == "energy_density") {
      Profile p;
      p.observable = name;
      p.lead = cfg.lead;
      const bool charge = name == "charge_density";
      p.columns = charge ? std::vector<std::string>{"total", "oscillating", "equilibrium", "non_equilibrium"}
                         : std::vector<std::string>{"total", "oscillating", "stefan_boltzmann", "equilibrium",
                                                    "non_equilibrium"};
      for (double x : cfg.positions) {
        p.x.push_back(x);
        if (charge) {
          const ChargeDensity d = charge_density_profile(sys, cfg.lead - 1, x, opts);
          p.rows.push_back({d.total, d.oscillating, d.equilibrium, d.non_equilibrium});
          p.converged = p.converged && d.converged;
          p.error_estimate = std::max(p.error_estimate, d.error_estimate);
          if (p.notes.empty()) p.notes = d.notes;
        } else {
          const EnergyDensity d = energy_density_profile(sys, cfg.lead - 1, x, opts);
          p.rows.push_back({d.total, d.oscillating, d.stefan_boltzmann, d.equilibrium, d.non_equilibrium});
          p.converged = p.converged && d.converged;
          p.error_estimate = std::max(p.error_estimate, d.error_estimate);
          if (p.notes.empty()) p.notes = d.notes;
        }
      }
      out.profiles.push_back(std::move(p));
    }
  }
}

void evaluate_dirac(const RunConfig& cfg, const EvalOptions& opts, PointResult& out) {
  const DiracSystem sys = make_dirac(cfg);
  for (const std::string& name : cfg.observables) {
    if (name == "current") {
      out.evaluations.push_back(from_vector(dirac_current(sys, opts), "J"));
    } else if (name == "current_limits") {
      const DiracCurrentLimits lim = dirac_current_limits(sys);
      out.evaluations.push_back(limits_evaluation(lim.high_temperature, lim.zero_temperature));
    } else if (name == "conductance") {
      out.evaluations.push_back(from_matrix(dirac_conductance(sys), "G"));
    } else if (name == "heat_current") {
      out.evaluations.push_back(from_vector(dirac_heat_current(sys, opts), "heat"));
    } else if (name == "densities") {
      const DiracDensities d = dirac_densities(sys, opts);
      out.evaluations.push_back(from_vector(d.charge, "rho", false));
      out.evaluations.push_back(from_vector(d.energy, "energy", false));
    } else if (name == "noise") {
      out.evaluations.push_back(from_matrix(dirac_noise_zero_freq(sys, opts), "P"));
    }
  }
}

std::vector<std::string> base_metadata(const RunConfig& cfg, const char* mode) {
  std::vector<std::string> m;
  m.push_back(std::string("qjunction ") + kVersion);
  m.push_back(std::string("mode: ") + mode);
  m.push_back(std::string("dynamics: ") + to_string(cfg.dynamics));
  if (cfg.dynamics == Dynamics::schrodinger) m.push_back(std::string("statistics: ") + to_string(cfg.statistics));
  m.push_back("leads: " + std::to_string(cfg.leads()));
  m.push_back("config_digest: fnv1a64:" + config_digest(cfg));
  const QuadratureSettings& q = cfg.quadrature;
  m.push_back("quadrature: rel_tol=" + format_value(q.rel_tol) + " abs_tol=" + format_value(q.abs_tol) +
              " max_subdivisions=" + std::to_string(q.max_subdivisions) +
              " tail_decay_scale=" + format_value(q.tail_decay_scale));
  m.push_back(std::string("override_bound_states: ") + (cfg.override_bound_states ? "true" : "false"));
  return m;
}

std::string bound_state_line(const RunConfig& cfg, bool free) {
  if (cfg.dynamics == Dynamics::dirac) return "bound_state_free: true (scale-invariant boundary)";
  std::string line = std::string("bound_state_free: ") + (free ? "true" : "false");
  if (!free && cfg.override_bound_states) line += " (densities computed under override)";
  return line;
}

void add_notes(std::vector<std::string>& meta, std::vector<std::string>& seen, const std::vector<std::string>& notes) {
  for (const auto& n : notes) {
    if (std::find(seen.begin(), seen.end(), n) == seen.end()) {
      seen.push_back(n);
      meta.push_back("note: " + n);
    }
  }
}

bool is_validation(const std::exception& e) {
  return dynamic_cast<const ValidationError*>(&e) != nullptr || dynamic_cast<const DomainError*>(&e) != nullptr;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '"', '\'');
  return s;
}

std::string quoted(const std::string& s) { return s.empty() ? "" : "\"" + one_line(s) + "\""; }

}  // namespace

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

PointResult evaluate(const RunConfig& cfg) {
  EvalOptions opts;
  opts.quadrature = cfg.quadrature;
  PointResult out;
  if (cfg.dynamics == Dynamics::schrodinger) {
    evaluate_schrodinger(cfg, opts, out);
  } else {
    evaluate_dirac(cfg, opts, out);
  }
  return out;
}

void OutputDocument::write(std::ostream& out) const {
  for (const auto& m : metadata) out << "# " << m << '\n';
  for (const auto& t : tables) {
    out << "# table: " << t.name << '\n';
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
  }
}

std::string OutputDocument::str() const {
  std::ostringstream s;
  write(s);
  return s.str();
}

int RunReport::exit_code() const {
  if (validation_failure) return kExitValidation;
  if (nonconverged) return kExitNonConvergence;
  if (invariant_violation) return kExitInvariant;
  return kExitOk;
}

RunReport run_point(const RunConfig& cfg) {
  if (cfg.sweep) throw ValidationError("sweep: the config has a sweep plan; use the sweep subcommand");
  RunReport report;
  const PointResult r = evaluate(cfg);
  auto& doc = report.document;
  doc.metadata = base_metadata(cfg, "point");
  doc.metadata.push_back(bound_state_line(cfg, r.bound_state_free));
  std::vector<std::string> seen;

  Table flows{"observables",
              {"observable", "component", "value", "units", "method", "converged", "error_estimate",
               "kirchhoff_residual"},
              {}};
  for (const Evaluation& e : r.evaluations) {
    add_notes(doc.metadata, seen, e.notes);
    if (!e.converged) report.nonconverged = true;
    if (!e.kirchhoff_ok) report.invariant_violation = true;
    for (const Field& f : e.fields) {
      flows.rows.push_back({e.observable, f.name, format_value(f.value), e.units, e.method, e.converged ? "true" : "false",
                            format_value(e.error_estimate),
                            e.kirchhoff_residual ? format_value(*e.kirchhoff_residual) : "-"});
    }
  }
  if (!flows.rows.empty()) doc.tables.push_back(std::move(flows));
  for (const Profile& p : r.profiles) {
    add_notes(doc.metadata, seen, p.notes);
    if (!p.converged) report.nonconverged = true;
    Table t{p.observable + " lead " + std::to_string(p.lead), {"x"}, {}};
    for (const auto& c : p.columns) t.header.push_back(c);
    t.header.push_back("converged");
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      std::vector<std::string> row{format_value(p.x[i])};
      for (double v : p.rows[i]) row.push_back(format_value(v));
      row.push_back(p.converged ? "true" : "false");
      t.rows.push_back(std::move(row));
    }
    doc.tables.push_back(std::move(t));
  }
  return report;
}

RunReport run_sweep(const RunConfig& cfg, int workers) {
  if (!cfg.sweep) throw ValidationError("sweep: the config has no sweep plan");
  const auto& axes = cfg.sweep->axes;
  std::vector<std::vector<double>> grid_axes;
  for (const auto& a : axes) grid_axes.push_back(a.values());
  const std::size_t n0 = grid_axes[0].size();
  const std::size_t n1 = axes.size() == 2 ? grid_axes[1].size() : 1;
  const std::size_t total = n0 * n1;

  struct Slot {
    std::vector<double> coords;
    std::vector<Field> fields;
    std::vector<std::string> notes;
    bool converged = true;
    bool kirchhoff_ok = true;
    bool bound_state_free = true;
    std::string error;
    bool validation_error = false;
    bool numerical_error = false;
  };
  std::vector<Slot> slots(total);

  // Row-major: the first axis is the slow index.
  auto run_one = [&](std::size_t idx) {
    Slot& s = slots[idx];
    const std::size_t i0 = idx / n1;
    const std::size_t i1 = idx % n1;
    RunConfig point = cfg;
    point.sweep.reset();
    s.coords.push_back(grid_axes[0][i0]);
    if (axes.size() == 2) s.coords.push_back(grid_axes[1][i1]);
    try {
      for (std::size_t a = 0; a < axes.size(); ++a) apply_parameter(point, axes[a].parameter, s.coords[a]);
      revalidate(point);
      const PointResult r = evaluate(point);
      s.bound_state_free = r.bound_state_free;
      for (const Evaluation& e : r.evaluations) {
        s.converged = s.converged && e.converged;
        s.kirchhoff_ok = s.kirchhoff_ok && e.kirchhoff_ok;
        for (const Field& f : e.fields) s.fields.push_back(f);
        if (e.kirchhoff_residual) s.fields.push_back({e.observable + ".kirchhoff", *e.kirchhoff_residual});
        s.notes.insert(s.notes.end(), e.notes.begin(), e.notes.end());
      }
      for (const Profile& p : r.profiles) {
        s.converged = s.converged && p.converged;
        for (std::size_t k = 0; k < p.x.size(); ++k) {
          for (std::size_t c = 0; c < p.columns.size(); ++c) {
            s.fields.push_back({p.observable + "." + p.columns[c] + "@x=" + format_value(p.x[k]), p.rows[k][c]});
          }
        }
        s.notes.insert(s.notes.end(), p.notes.begin(), p.notes.end());
      }
    } catch (const std::exception& e) {
      s.error = e.what();
      s.validation_error = is_validation(e);
      s.numerical_error = dynamic_cast<const NumericalError*>(&e) != nullptr;
      s.fields.clear();
    }
  };

  unsigned count = workers > 0 ? static_cast<unsigned>(workers) : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, total));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t idx = next++; idx < total; idx = next++) run_one(idx);
    });
  }
  for (auto& t : pool) t.join();

  RunReport report;
  auto& doc = report.document;
  doc.metadata = base_metadata(cfg, "sweep");
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const auto& ax = axes[a];
    doc.metadata.push_back("axis " + std::to_string(a + 1) + ": " + ax.parameter + " " + format_value(ax.min) + ".." +
                           format_value(ax.max) + " points=" + std::to_string(ax.points) +
                           (ax.log_spacing ? " log" : " linear"));
  }
  doc.metadata.push_back("order: row-major over the axes, first axis slowest");
  std::vector<std::string> names;
  for (const Slot& s : slots) {
    if (s.error.empty()) {
      for (const Field& f : s.fields) names.push_back(f.name);
      break;
    }
  }
  bool all_free = true;
  for (const Slot& s : slots) all_free = all_free && s.bound_state_free;
  doc.metadata.push_back(bound_state_line(cfg, all_free));
  std::vector<std::string> seen;
  for (const Slot& s : slots) add_notes(doc.metadata, seen, s.notes);

  Table t{"sweep", {}, {}};
  for (const auto& a : axes) t.header.push_back(a.parameter);
  for (const auto& n : names) t.header.push_back(n);
  const bool schrodinger = cfg.dynamics == Dynamics::schrodinger;
  if (schrodinger) t.header.push_back("bound_state_free");
  t.header.push_back("converged");
  t.header.push_back("error");
  for (const Slot& s : slots) {
    std::vector<std::string> row;
    for (double c : s.coords) row.push_back(format_value(c));
    if (s.error.empty()) {
      for (const Field& f : s.fields) row.push_back(format_value(f.value));
    } else {
      for (std::size_t k = 0; k < names.size(); ++k) row.push_back("nan");
    }
    if (schrodinger) row.push_back(s.bound_state_free ? "1" : "0");
    row.push_back(s.error.empty() && s.converged ? "true" : "false");
    row.push_back(quoted(s.error));
    t.rows.push_back(std::move(row));
    if (s.validation_error) report.validation_failure = true;
    if (s.numerical_error || (s.error.empty() && !s.converged)) report.nonconverged = true;
    if (s.error.empty() && s.converged && !s.kirchhoff_ok) report.invariant_violation = true;
    if (!s.error.empty() && !s.validation_error && !s.numerical_error) report.invariant_violation = true;
  }
  doc.tables.push_back(std::move(t));
  return report;
}

namespace {

struct CheckLine {
  std::string property;
  bool pass;
  std::string detail;
};

// Scale floor for the 1e-12 gauge comparison: an absolute floor of 1e-15, so an
// equilibrium current of 1e-17 does not read as a large relative change.
constexpr double kGaugeScaleFloor = 1e-3;

double max_rel(const std::vector<double>& a, const std::vector<double>& b, double floor = 1e-14) {
  double scale = floor, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return diff / scale;
}

double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double floor = 1e-14) {
  const double scale = std::max({floor, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<double> check_gauge_phases(int n) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& x : a) x = u(rng);
  return a;
}

void check_schrodinger(const RunConfig& cfg, std::vector<CheckLine>& lines, bool& nonconverged) {
  const SchrodingerSystem sys = make_schrodinger(cfg);
  const ScatteringModel& model = sys.model();
  double unit = 0.0, ha = 0.0;
  for (int k = -12; k <= 12; ++k) {
    const double q = std::pow(10.0, k / 4.0);
    const ComplexMatrix sp = model.at(q);
    unit = std::max(unit, unitarity_residual(sp));
    ha = std::max(ha, (sp.adjoint() - model.at(-q)).cwiseAbs().maxCoeff());
  }
  lines.push_back({"smatrix.unitarity", unit <= 1e-10, "max residual " + sci(unit)});
  lines.push_back({"smatrix.hermitian_analyticity", ha <= 1e-10, "max residual " + sci(ha)});

  EvalOptions opts;
  opts.quadrature = cfg.quadrature;
  const LeadVector j = steady_current(sys, opts);
  const LeadVector h = heat_current(sys, opts);
  const LeadMatrix p = noise_zero_freq(sys, opts);
  nonconverged = nonconverged || !j.converged || !h.converged || !p.converged;
  lines.push_back({"kirchhoff.current", j.kirchhoff_ok(), "residual " + sci(j.kirchhoff_residual())});
  lines.push_back({"kirchhoff.heat_current", h.kirchhoff_ok(), "residual " + sci(h.kirchhoff_residual())});
  lines.push_back({"kirchhoff.noise", p.kirchhoff_ok(),
                   "residual " + sci(std::max(p.column_residual(), p.row_residual()))});
  const double scale = std::max(1e-14, p.values.cwiseAbs().maxCoeff());
  lines.push_back({"noise.symmetric", p.asymmetry() <= 1e-9 * scale, "asymmetry " + sci(p.asymmetry())});
  if (cfg.statistics == Statistics::fermi) {
    double worst = 0.0;
    for (int i = 0; i < p.size(); ++i) worst = std::min(worst, p(i, i));
    lines.push_back({"noise.diagonal_nonnegative", worst >= -1e-12 * scale, "min diagonal " + sci(worst)});
  }
  bool mu_nonzero = true;
  for (const auto& r : cfg.reservoirs) mu_nonzero = mu_nonzero && r.mu != 0.0;
  if (mu_nonzero) {
    const LeadMatrix g = conductance(sys, opts);
    lines.push_back({"kirchhoff.conductance", g.kirchhoff_ok(), "column residual " + sci(g.column_residual())});
  }

  // Equal reservoirs: the first lead's (β, μ) everywhere.
  const ReservoirBank eq(std::vector<double>(cfg.reservoirs.size(), cfg.reservoirs[0].beta),
                         std::vector<double>(cfg.reservoirs.size(), cfg.reservoirs[0].mu), cfg.statistics);
  const SchrodingerSystem at_eq = sys.with_bank(eq);
  const double jeq = max_abs(steady_current(at_eq, opts).values);
  const double heq = max_abs(heat_current(at_eq, opts).values);
  lines.push_back({"equilibrium.current_null", jeq <= 1e-10, "max |J| " + sci(jeq)});
  lines.push_back({"equilibrium.heat_null", heq <= 1e-10, "max |heat| " + sci(heq)});

  const ScatteringModel dressed = model.with_gauge(GaugePhases{check_gauge_phases(sys.leads())}, cfg.charge);
  const SchrodingerSystem gs = sys.with_model(dressed);
  const double gj = max_rel(steady_current(gs, opts).values, j.values, kGaugeScaleFloor);
  const double gp = max_rel(noise_zero_freq(gs, opts).values, p.values, kGaugeScaleFloor);
  lines.push_back({"gauge.invariance", gj <= 1e-12 && gp <= 1e-12, "current " + sci(gj) + ", noise " + sci(gp)});

  if (model.is_critical()) {
    EvalOptions quad = opts;
    quad.method = Method::quadrature;
    const double cj = max_rel(steady_current(sys, quad).values, j.values);
    const double ch = max_rel(heat_current(sys, quad).values, h.values);
    lines.push_back({"closed_form.current", cj <= 1e-6, "relative difference " + sci(cj)});
    lines.push_back({"closed_form.heat_current", ch <= 1e-6, "relative difference " + sci(ch)});
    if (sys.bank().common_temperature()) {
      const double cp = max_rel(noise_zero_freq(sys, quad).values, p.values);
      lines.push_back({"closed_form.noise", cp <= 1e-6, "relative difference " + sci(cp)});
    }
  }
}

void check_dirac(const RunConfig& cfg, std::vector<CheckLine>& lines, bool& nonconverged) {
  const DiracSystem sys = make_dirac(cfg);
  const double unit = unitarity_residual(sys.boundary().matrix());
  lines.push_back({"boundary.unitarity", unit <= 1e-10, "residual " + sci(unit)});
  EvalOptions opts;
  opts.quadrature = cfg.quadrature;
  const LeadVector j = dirac_current(sys, opts);
  const LeadVector h = dirac_heat_current(sys, opts);
  const LeadMatrix p = dirac_noise_zero_freq(sys, opts);
  nonconverged = nonconverged || !p.converged || !h.converged;
  lines.push_back({"kirchhoff.current", j.kirchhoff_ok(), "residual " + sci(j.kirchhoff_residual())});
  lines.push_back({"kirchhoff.heat_current", h.kirchhoff_ok(), "residual " + sci(h.kirchhoff_residual())});
  lines.push_back({"kirchhoff.noise", p.kirchhoff_ok(),
                   "residual " + sci(std::max(p.column_residual(), p.row_residual()))});
  const double scale = std::max(1e-14, p.values.cwiseAbs().maxCoeff());
  lines.push_back({"noise.symmetric", p.asymmetry() <= 1e-9 * scale, "asymmetry " + sci(p.asymmetry())});
  const LeadMatrix g = dirac_conductance(sys);
  lines.push_back({"kirchhoff.conductance", g.kirchhoff_ok(), "column residual " + sci(g.column_residual())});

  const std::size_t n = cfg.reservoirs.size();
  const DiracReservoirBank eq(std::vector<double>(n, cfg.reservoirs[0].beta), std::vector<double>(n, cfg.reservoirs[0].mu),
                              std::vector<double>(n, cfg.reservoirs[0].mu_tilde));
  const DiracSystem at_eq = sys.with_bank(eq);
  const double jeq = max_abs(dirac_current(at_eq, opts).values);
  const double heq = max_abs(dirac_heat_current(at_eq, opts).values);
  lines.push_back({"equilibrium.current_null", jeq <= 1e-10, "max |J| " + sci(jeq)});
  lines.push_back({"equilibrium.heat_null", heq <= 1e-10, "max |heat| " + sci(heq)});

  RunConfig gauged = cfg;
  gauged.gauge = check_gauge_phases(static_cast<int>(n));
  const DiracSystem gs = make_dirac(gauged);
  const double gj = max_rel(dirac_current(gs, opts).values, j.values, kGaugeScaleFloor);
  const double gp = max_rel(dirac_noise_zero_freq(gs, opts).values, p.values, kGaugeScaleFloor);
  lines.push_back({"gauge.invariance", gj <= 1e-12 && gp <= 1e-12, "current " + sci(gj) + ", noise " + sci(gp)});

  EvalOptions quad = opts;
  quad.method = Method::quadrature;
  const double cj = max_rel(dirac_current(sys, quad).values, j.values);
  lines.push_back({"closed_form.current", cj <= 1e-6, "relative difference " + sci(cj)});
  if (sys.bank().common_temperature()) {
    const double cp = max_rel(dirac_noise_zero_freq(sys, quad).values, p.values);
    lines.push_back({"closed_form.noise", cp <= 1e-6, "relative difference " + sci(cp)});
  }
}

}  // namespace

RunReport run_check(const RunConfig& cfg) {
  RunConfig base = cfg;
  base.sweep.reset();
  std::vector<CheckLine> lines;
  bool nonconverged = false;
  if (cfg.dynamics == Dynamics::schrodinger) {
    check_schrodinger(base, lines, nonconverged);
  } else {
    check_dirac(base, lines, nonconverged);
  }
  RunReport report;
  report.nonconverged = nonconverged;
  auto& doc = report.document;
  doc.metadata = base_metadata(cfg, "check");
  Table t{"check", {"property", "status", "detail"}, {}};
  int failed = 0;
  for (const auto& l : lines) {
    t.rows.push_back({l.property, l.pass ? "PASS" : "FAIL", quoted(l.detail)});
    if (!l.pass) ++failed;
  }
  doc.metadata.push_back("failed: " + std::to_string(failed) + " of " + std::to_string(lines.size()));
  doc.tables.push_back(std::move(t));
  report.invariant_violation = failed > 0;
  return report;
}

}  // namespace qjunction
