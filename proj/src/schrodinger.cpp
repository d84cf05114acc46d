#include "qjunction/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "noise_kernels.hpp"
#include "qjunction/errors.hpp"

namespace qjunction {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Finite-temperature leads are integrated explicitly up to ω = μ⁺ + 45/β.
constexpr double kCutoffExponent = 45.0;

struct MomentumGrid {
  std::vector<double> nodes;
  bool tail = false;
  double tail_scale = 1.0;
  double cutoff = 0.0;
};

MomentumGrid momentum_grid(const SchrodingerSystem& sys) {
  const auto& bank = sys.bank();
  const double two_m = 2.0 * sys.mass();
  MomentumGrid g;
  std::vector<double> pts{0.0};
  double beta_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j < bank.size(); ++j) {
    const double mu_plus = std::max(bank.mu(j), 0.0);
    const double kf = std::sqrt(two_m * mu_plus);
    if (kf > 0.0) pts.push_back(kf);
    if (bank.zero_temperature(j)) {
      g.cutoff = std::max(g.cutoff, kf);
    } else {
      g.tail = true;
      beta_min = std::min(beta_min, bank.beta(j));
      g.cutoff = std::max(g.cutoff, std::sqrt(two_m * (mu_plus + kCutoffExponent / bank.beta(j))));
    }
  }
  for (double eta : sys.model().momentum_scales()) {
    if (eta < g.cutoff) pts.push_back(eta);
  }
  pts.push_back(g.cutoff);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  g.nodes = std::move(pts);
  if (g.tail) g.tail_scale = std::clamp(std::sqrt(two_m / beta_min), 1e-3, 1e3);
  return g;
}

VectorQuadratureResult integrate_momentum(const SchrodingerSystem& sys, const VectorIntegrand& f, int dim,
                                          const QuadratureSettings& base, double oscillation_x = 0.0) {
  MomentumGrid g = momentum_grid(sys);
  if (oscillation_x > 0.0) {
    const auto extra = half_period_breakpoints(0.0, g.cutoff, oscillation_x);
    g.nodes.insert(g.nodes.end(), extra.begin(), extra.end());
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  }
  QuadratureSettings s = base;
  s.tail_decay_scale = g.tail_scale;
  return integrate_panels(f, dim, g.nodes, g.tail, s);
}

// Per-momentum state shared by every integrand.
struct Sample {
  ComplexMatrix s;
  Eigen::MatrixXd prob;  // |S_ij|²
  Eigen::VectorXd d;
  Eigen::VectorXd c;
};

void fill_sample(const SchrodingerSystem& sys, double k, Sample& out, bool complements = false) {
  const int n = sys.leads();
  out.s = sys.model().at(k);
  out.prob = out.s.cwiseAbs2();
  const double omega = sys.dispersion(k);
  out.d.resize(n);
  if (complements) out.c.resize(n);
  for (int j = 0; j < n; ++j) {
    out.d[j] = occupation_d(sys.bank(), j, omega);
    if (complements) out.c[j] = complement_c(sys.bank(), j, omega);
  }
}

bool fermi_critical(const SchrodingerSystem& sys) {
  return sys.model().is_critical() && sys.bank().statistics() == Statistics::fermi;
}

bool use_closed_form(Method method, bool available, const char* what) {
  if (method == Method::quadrature) return false;
  if (method == Method::closed_form && !available) {
    throw DomainError(std::string("no closed form for ") + what + " with this system");
  }
  return available;
}

void attach_system_notes(const SchrodingerSystem& sys, std::vector<std::string>& notes) {
  for (const auto& w : sys.bank().warnings()) notes.push_back(w);
  if (!sys.bound_state_free()) {
    notes.push_back("coupling has bound states; flow observables are unaffected by them");
  }
}

void check_lead(const SchrodingerSystem& sys, int lead) {
  if (lead < 0 || lead >= sys.leads()) {
    std::ostringstream msg;
    msg << "lead index " << lead << " out of range for " << sys.leads() << " leads";
    throw DomainError(msg.str());
  }
}

void check_position(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("density profiles need a finite position x > 0");
}

// ∫dω ω^p d(ω) for one lead, p ∈ {0, 1}.
double lead_moment(const ReservoirBank& bank, int j, double order) {
  return fermi_integral(order, bank.beta(j), bank.mu(j));
}

LeadVector make_vector(const char* name, const char* units, std::vector<double> values, const char* method) {
  LeadVector v;
  v.observable = name;
  v.units = units;
  v.values = std::move(values);
  v.method = method;
  return v;
}

void require_common_temperature(const ReservoirBank& bank) {
  if (!bank.common_temperature()) {
    throw DomainError("the critical noise closed form needs a common temperature in every lead");
  }
}

}  // namespace

SchrodingerSystem::SchrodingerSystem(double mass, double charge, ScatteringModel model, ReservoirBank bank,
                                     bool override_bound_states)
    : mass_(mass), charge_(charge), model_(std::move(model)), bank_(std::move(bank)), override_(override_bound_states) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw ValidationError("mass must be finite and > 0");
  if (!std::isfinite(charge_)) throw ValidationError("charge must be finite");
  if (model_.leads() != bank_.size()) {
    std::ostringstream msg;
    msg << "coupling has " << model_.leads() << " leads but " << bank_.size() << " reservoirs are given";
    throw ValidationError(msg.str());
  }
}

void SchrodingerSystem::require_density_admissible() const {
  if (bound_state_free() || override_) return;
  throw BoundStateError(
      "coupling has bound states (some eta > 0); density observables need the bound-state override");
}

SchrodingerSystem SchrodingerSystem::with_bank(ReservoirBank bank) const {
  return SchrodingerSystem(mass_, charge_, model_, std::move(bank), override_);
}

SchrodingerSystem SchrodingerSystem::with_model(ScatteringModel model) const {
  return SchrodingerSystem(mass_, charge_, std::move(model), bank_, override_);
}

LeadVector steady_current(const SchrodingerSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const double e = sys.charge();
  LeadVector out;
  if (use_closed_form(opts.method, fermi_critical(sys), "the steady current")) {
    const Eigen::MatrixXd prob = sys.model().critical_matrix().matrix().cwiseAbs2();
    std::vector<double> j(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        const double w = (i == l ? 1.0 : 0.0) - prob(i, l);
        j[static_cast<std::size_t>(i)] += e / kTwoPi * w * lead_moment(sys.bank(), l, 0.0);
      }
    }
    out = make_vector("current", "charge/time", std::move(j), "closed-form");
  } else {
    Sample smp;
    const double pref = e / (kTwoPi * sys.mass());
    const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
      fill_sample(sys, k, smp);
      v = pref * k * (smp.d - smp.prob * smp.d);
    };
    const auto r = integrate_momentum(sys, f, n, opts.quadrature);
    out = make_vector("current", "charge/time", {r.value.data(), r.value.data() + n}, "quadrature");
    out.converged = r.converged;
    out.error_estimate = r.error_estimate;
  }
  attach_system_notes(sys, out.notes);
  return out;
}

CurrentLimits steady_current_limits(const UnitaryMatrix& u, const std::vector<double>& mu, double charge) {
  u.require_valid();
  const int n = u.size();
  if (static_cast<int>(mu.size()) != n) throw ValidationError("chemical potential count does not match U");
  const Eigen::MatrixXd prob = u.matrix().cwiseAbs2();
  std::vector<double> hot(static_cast<std::size_t>(n), 0.0), cold(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = (i == j ? 1.0 : 0.0) - prob(i, j);
      cold[static_cast<std::size_t>(i)] += charge / kTwoPi * w * mu[static_cast<std::size_t>(j)];
    }
    hot[static_cast<std::size_t>(i)] = 0.5 * cold[static_cast<std::size_t>(i)];
  }
  return {make_vector("current_high_temperature", "charge/time", std::move(hot), "closed-form"),
          make_vector("current_zero_temperature", "charge/time", std::move(cold), "closed-form")};
}

LeadMatrix conductance(const SchrodingerSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const double e = sys.charge();
  for (int j = 0; j < n; ++j) {
    if (sys.bank().mu(j) == 0.0) {
      std::ostringstream msg;
      msg << "conductance needs mu_" << j + 1 << " != 0 (voltages are V_j = mu_j / e)";
      throw DomainError(msg.str());
    }
  }
  LeadMatrix out;
  out.observable = "conductance";
  out.units = "charge^2";
  if (use_closed_form(opts.method, fermi_critical(sys), "the conductance")) {
    const Eigen::MatrixXd prob = sys.model().critical_matrix().matrix().cwiseAbs2();
    out.values.resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double w = (i == j ? 1.0 : 0.0) - prob(i, j);
        out.values(i, j) = e * e / kTwoPi * w * lead_moment(sys.bank(), j, 0.0) / sys.bank().mu(j);
      }
    }
    out.method = "closed-form";
  } else {
    Sample smp;
    const double pref = e * e / (kTwoPi * sys.mass());
    Eigen::VectorXd inv_mu(n);
    for (int j = 0; j < n; ++j) inv_mu[j] = 1.0 / sys.bank().mu(j);
    const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
      fill_sample(sys, k, smp);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          const double w = (i == j ? 1.0 : 0.0) - smp.prob(i, j);
          v[j * n + i] = pref * k * w * smp.d[j] * inv_mu[j];
        }
      }
    };
    const auto r = integrate_momentum(sys, f, n * n, opts.quadrature);
    out.values = Eigen::Map<const Eigen::MatrixXd>(r.value.data(), n, n);
    out.method = "quadrature";
    out.converged = r.converged;
    out.error_estimate = r.error_estimate;
  }
  attach_system_notes(sys, out.notes);
  return out;
}

ChargeDensity charge_density_profile(const SchrodingerSystem& sys, int lead, double x, const EvalOptions& opts) {
  check_lead(sys, lead);
  check_position(x);
  sys.require_density_admissible();
  if (opts.method == Method::closed_form) throw DomainError("charge density profiles are evaluated by quadrature");
  const int i = lead;
  const double e = sys.charge();
  Sample smp;
  // components: oscillating, homogeneous, non-equilibrium, own occupation
  const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
    fill_sample(sys, k, smp);
    const double scale = e / kTwoPi;
    const Complex phase = std::polar(1.0, -2.0 * k * x);
    const double pd = smp.prob.row(i).dot(smp.d);
    v[0] = scale * 2.0 * (smp.s(i, i) * phase).real() * smp.d[i];
    v[1] = scale * (smp.d[i] + pd);
    v[2] = scale * (smp.d[i] - pd);
    v[3] = scale * smp.d[i];
  };
  const auto r = integrate_momentum(sys, f, 4, opts.quadrature, x);
  ChargeDensity out;
  out.oscillating = r.value[0];
  out.total = r.value[0] + r.value[1];
  out.non_equilibrium = r.value[2];
  out.equilibrium = r.value[0] + 2.0 * r.value[3];
  out.converged = r.converged;
  out.error_estimate = r.error_estimate;
  const double mismatch = std::abs(out.total + out.non_equilibrium - out.equilibrium);
  const double scale = std::max({std::abs(out.total), std::abs(out.equilibrium), std::abs(out.non_equilibrium)});
  if (!kirchhoff_within(mismatch, scale)) {
    std::ostringstream msg;
    msg << "charge density decomposition is inconsistent (residual " << mismatch << ")";
    throw InvariantError(msg.str());
  }
  if (!sys.bound_state_free()) out.notes.push_back("bound-state contribution not included (override active)");
  for (const auto& w : sys.bank().warnings()) out.notes.push_back(w);
  return out;
}

EnergyDensity energy_density_profile(const SchrodingerSystem& sys, int lead, double x, const EvalOptions& opts) {
  check_lead(sys, lead);
  check_position(x);
  sys.require_density_admissible();
  if (opts.method == Method::closed_form) throw DomainError("energy density profiles are evaluated by quadrature");
  const int i = lead;
  Sample smp;
  const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
    fill_sample(sys, k, smp);
    const double scale = sys.dispersion(k) / kTwoPi;
    const Complex phase = std::polar(1.0, -2.0 * k * x);
    const double pd = smp.prob.row(i).dot(smp.d);
    v[0] = scale * 2.0 * (smp.s(i, i) * phase).real() * smp.d[i];
    v[1] = scale * (smp.d[i] + pd);
    v[2] = scale * (smp.d[i] - pd);
    v[3] = scale * smp.d[i];
  };
  const auto r = integrate_momentum(sys, f, 4, opts.quadrature, x);
  EnergyDensity out;
  out.oscillating = r.value[0];
  out.stefan_boltzmann = r.value[1];
  out.total = r.value[0] + r.value[1];
  out.non_equilibrium = r.value[2];
  out.equilibrium = r.value[0] + 2.0 * r.value[3];
  out.converged = r.converged;
  out.error_estimate = r.error_estimate;
  const double mismatch = std::abs(out.total + out.non_equilibrium - out.equilibrium);
  const double scale = std::max({std::abs(out.total), std::abs(out.equilibrium), std::abs(out.non_equilibrium)});
  if (!kirchhoff_within(mismatch, scale)) {
    std::ostringstream msg;
    msg << "energy density decomposition is inconsistent (residual " << mismatch << ")";
    throw InvariantError(msg.str());
  }
  if (!sys.bound_state_free()) out.notes.push_back("bound-state contribution not included (override active)");
  for (const auto& w : sys.bank().warnings()) out.notes.push_back(w);
  return out;
}

LeadVector stefan_boltzmann_closed_form(const UnitaryMatrix& u, const ReservoirBank& bank, double mass) {
  u.require_valid();
  if (bank.statistics() != Statistics::fermi) throw DomainError("the Stefan-Boltzmann closed form needs Fermi statistics");
  if (bank.size() != u.size()) throw ValidationError("reservoir count does not match U");
  if (!(mass > 0.0)) throw ValidationError("mass must be > 0");
  const int n = u.size();
  const Eigen::MatrixXd prob = u.matrix().cwiseAbs2();
  // ∫dk/2π ω d_j = (1/2π) √(m/2) ∫dω ω^{1/2} d_j
  std::vector<double> moment(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    moment[static_cast<std::size_t>(j)] =
        std::sqrt(mass / 2.0) / kTwoPi * fermi_integral(0.5, bank.beta(j), bank.mu(j));
  }
  std::vector<double> eps(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      eps[static_cast<std::size_t>(i)] += ((i == j ? 1.0 : 0.0) + prob(i, j)) * moment[static_cast<std::size_t>(j)];
    }
  }
  return make_vector("stefan_boltzmann", "energy/length", std::move(eps), "closed-form");
}

double friedel_oscillation_closed_form(const UnitaryMatrix& u, int lead, double mu, double mass, double charge,
                                       double x) {
  u.require_valid();
  if (lead < 0 || lead >= u.size()) throw DomainError("lead index out of range");
  check_position(x);
  if (!(mass > 0.0)) throw ValidationError("mass must be > 0");
  const Complex uii = u.matrix()(lead, lead);
  if (std::abs(uii.imag()) > kUnitarityTolerance) {
    throw DomainError("the Friedel closed form needs a real diagonal entry U_ii");
  }
  const double kf = std::sqrt(2.0 * mass * std::max(mu, 0.0));
  return charge * uii.real() * std::sin(2.0 * x * kf) / (kTwoPi * x);
}

LeadVector heat_current(const SchrodingerSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  LeadVector out;
  if (use_closed_form(opts.method, fermi_critical(sys), "the heat current")) {
    const Eigen::MatrixXd prob = sys.model().critical_matrix().matrix().cwiseAbs2();
    std::vector<double> t(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double w = (i == j ? 1.0 : 0.0) - prob(i, j);
        t[static_cast<std::size_t>(i)] += w * lead_moment(sys.bank(), j, 1.0) / kTwoPi;
      }
    }
    out = make_vector("heat_current", "energy/time", std::move(t), "closed-form");
  } else {
    Sample smp;
    const double pref = 1.0 / (kTwoPi * sys.mass());
    const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
      fill_sample(sys, k, smp);
      v = pref * k * sys.dispersion(k) * (smp.d - smp.prob * smp.d);
    };
    const auto r = integrate_momentum(sys, f, n, opts.quadrature);
    out = make_vector("heat_current", "energy/time", {r.value.data(), r.value.data() + n}, "quadrature");
    out.converged = r.converged;
    out.error_estimate = r.error_estimate;
  }
  attach_system_notes(sys, out.notes);
  return out;
}

LeadMatrix noise_critical_closed_form(const UnitaryMatrix& u, const ReservoirBank& bank, double charge) {
  u.require_valid();
  if (bank.size() != u.size()) throw ValidationError("reservoir count does not match U");
  require_common_temperature(bank);
  const int n = u.size();
  const ComplexMatrix& m = u.matrix();
  const Eigen::MatrixXd prob = m.cwiseAbs2();
  const Statistics stats = bank.statistics();
  const double beta = bank.beta(0);
  const bool cold = std::isinf(beta);

  // kernel(l, m)/β and g(a_l)/β; at zero temperature these tend to |μ_l⁺ − μ_m⁺| and 0.
  Eigen::MatrixXd kernel(n, n);
  Eigen::VectorXd diag(n);
  for (int l = 0; l < n; ++l) {
    diag[l] = cold ? 0.0 : detail::occupation_weight(stats, beta * bank.mu(l)) / beta;
    for (int q = 0; q < n; ++q) {
      if (cold) {
        kernel(l, q) = std::abs(std::max(bank.mu(l), 0.0) - std::max(bank.mu(q), 0.0));
      } else {
        kernel(l, q) = detail::pair_kernel(stats, beta * bank.mu(l), beta * bank.mu(q)) / beta;
      }
    }
  }

  LeadMatrix out;
  out.observable = "noise";
  out.row_sums_vanish = true;
  out.units = "charge^2/time";
  out.method = "closed-form";
  out.values.resize(n, n);
  const double pref = charge * charge / kTwoPi;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double quartic = 0.0;
      for (int l = 0; l < n; ++l) {
        const Complex a = std::conj(m(i, l)) * m(j, l);
        for (int q = 0; q < n; ++q) {
          quartic += (a * std::conj(m(j, q)) * m(i, q)).real() * kernel(l, q);
        }
      }
      out.values(i, j) = pref * ((i == j ? diag[i] : 0.0) - prob(i, j) * diag[j] - prob(j, i) * diag[i] + 0.5 * quartic);
    }
  }
  return out;
}

LeadMatrix shot_noise(const UnitaryMatrix& u, const std::vector<double>& mu, Statistics statistics, double charge) {
  u.require_valid();
  const int n = u.size();
  if (static_cast<int>(mu.size()) != n) throw ValidationError("chemical potential count does not match U");
  const ComplexMatrix& m = u.matrix();
  const double sign = statistics == Statistics::fermi ? 1.0 : -1.0;
  LeadMatrix out;
  out.observable = "shot_noise";
  out.row_sums_vanish = true;
  out.units = "charge^2/time";
  out.method = "closed-form";
  out.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l) {
        for (int q = 0; q < n; ++q) {
          if (l == q) continue;
          const Complex prod = std::conj(m(i, l)) * m(j, l) * std::conj(m(j, q)) * m(i, q);
          acc += prod.real() * std::abs(mu[static_cast<std::size_t>(l)] - mu[static_cast<std::size_t>(q)]);
        }
      }
      out.values(i, j) = sign * charge * charge / (4.0 * std::numbers::pi) * acc;
    }
  }
  return out;
}

LeadMatrix johnson_nyquist_noise(const UnitaryMatrix& u, double beta, double charge) {
  u.require_valid();
  if (!(beta > 0.0) || std::isinf(beta)) throw DomainError("Johnson-Nyquist noise needs a finite beta > 0");
  const int n = u.size();
  const Eigen::MatrixXd prob = u.matrix().cwiseAbs2();
  LeadMatrix out;
  out.observable = "johnson_nyquist_noise";
  out.row_sums_vanish = true;
  out.units = "charge^2/time";
  out.method = "closed-form";
  out.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.values(i, j) = charge * charge / (kTwoPi * beta) * ((i == j ? 2.0 : 0.0) - prob(i, j) - prob(j, i));
    }
  }
  return out;
}

LeadMatrix noise_zero_freq(const SchrodingerSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const bool closed = sys.model().is_critical() && sys.bank().common_temperature();
  LeadMatrix out;
  if (use_closed_form(opts.method, closed, "the noise")) {
    out = noise_critical_closed_form(sys.model().critical_matrix(), sys.bank(), sys.charge());
  } else {
    Sample smp;
    const double e = sys.charge();
    const double pref = e * e / (kTwoPi * sys.mass());
    Eigen::VectorXd dc(n);
    const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
      fill_sample(sys, k, smp, true);
      dc = smp.d.cwiseProduct(smp.c);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          Complex xs = 0.0;
          Complex ys = 0.0;
          for (int l = 0; l < n; ++l) {
            const Complex ml = smp.s(i, l) * std::conj(smp.s(j, l));
            xs += ml * smp.c[l];
            ys += ml * smp.d[l];
          }
          const double quartic = (xs * std::conj(ys)).real();
          const double diag = (i == j ? dc[i] : 0.0) - smp.prob(i, j) * dc[j] - smp.prob(j, i) * dc[i];
          v[j * n + i] = pref * k * (diag + quartic);
        }
      }
    };
    const auto r = integrate_momentum(sys, f, n * n, opts.quadrature);
    out.observable = "noise";
    out.row_sums_vanish = true;
    out.units = "charge^2/time";
    out.values = Eigen::Map<const Eigen::MatrixXd>(r.value.data(), n, n);
    out.method = "quadrature";
    out.converged = r.converged;
    out.error_estimate = r.error_estimate;
  }
  attach_system_notes(sys, out.notes);
  return out;
}

ThermalNoiseBounds thermal_noise_bounds_two_lead(const TwoLeadParams& p, double mass, double charge, double beta,
                                                 const QuadratureSettings& settings) {
  if (p.eta2 != 0.0) throw DomainError("thermal noise bounds need eta2 = 0");
  if (!(mass > 0.0)) throw ValidationError("mass must be > 0");
  if (!(beta > 0.0) || std::isinf(beta)) throw DomainError("thermal noise bounds need a finite beta > 0");
  ThermalNoiseBounds out;
  const double eta = p.eta1;
  const double amp = charge * eta * std::sin(p.theta);
  if (eta == 0.0 || amp == 0.0) {
    out.notes.push_back("isolated leads: the noise vanishes");
    return out;
  }
  const double c = amp * amp / (kTwoPi * mass);
  const double a = beta * eta * eta / (2.0 * mass);
  const auto r = integrate_finite([a](double xi) { return 1.0 / ((1.0 + xi) * (1.0 + xi) * (a - std::log(xi))); },
                                  0.0, 1.0, settings);
  const double ia = exp_integral_Ia(a);
  out.value = c * r.value;
  out.upper = c * ia;
  out.lower = 0.25 * c * ia;
  out.quoted_lower = 0.5 * c * ia;
  out.converged = r.converged;
  return out;
}

}  // namespace qjunction
