#include "qjunction/dirac.hpp"

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
constexpr double kCutoffExponent = 45.0;

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// ∫dω ω^p f of lead j: particles sit at potential μ, antiparticles at −μ̃.
double particle_moment(const DiracReservoirBank& bank, int j, double order) {
  return fermi_integral(order, bank.beta(j), bank.mu(j));
}
double antiparticle_moment(const DiracReservoirBank& bank, int j, double order) {
  return fermi_integral(order, bank.beta(j), -bank.mu_tilde(j));
}

LeadVector make_vector(const char* name, const char* units, std::vector<double> values, const char* method) {
  LeadVector v;
  v.observable = name;
  v.units = units;
  v.values = std::move(values);
  v.method = method;
  return v;
}

VectorQuadratureResult integrate_dirac(const DiracSystem& sys, const VectorIntegrand& f, int dim,
                                       const QuadratureSettings& base) {
  const auto& bank = sys.bank();
  std::vector<double> nodes{0.0};
  double cutoff = 0.0;
  double beta_min = std::numeric_limits<double>::infinity();
  bool tail = false;
  for (int j = 0; j < bank.size(); ++j) {
    const double scale = std::max({std::abs(bank.mu(j)), std::abs(bank.mu_tilde(j)), 1.0});
    const bool cold = bank.beta(j) * scale > kZeroTemperatureThreshold;
    for (double edge : {bank.mu(j), -bank.mu_tilde(j)}) {
      const double e = std::max(edge, 0.0);
      if (e > 0.0) nodes.push_back(e);
      cutoff = std::max(cutoff, cold ? e : e + kCutoffExponent / bank.beta(j));
    }
    if (!cold) {
      tail = true;
      beta_min = std::min(beta_min, bank.beta(j));
    }
  }
  nodes.push_back(cutoff);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  QuadratureSettings s = base;
  if (tail) s.tail_decay_scale = std::clamp(1.0 / beta_min, 1e-3, 1e3);
  return integrate_panels(f, dim, nodes, tail, s);
}

bool use_closed_form(Method method, bool available, const char* what) {
  if (method == Method::quadrature) return false;
  if (method == Method::closed_form && !available) {
    throw DomainError(std::string("no closed form for ") + what + " with this system");
  }
  return available;
}

void attach_notes(const DiracSystem& sys, std::vector<std::string>& notes) {
  if (sys.gauge()) notes.push_back("gauge dressing of the Dirac boundary matrix follows the Schrodinger rule");
}

// Σ_j w_ij [A_j ± B_j] with w = δ ∓ |U|² style weights supplied by the caller.
std::vector<double> contract(const Eigen::MatrixXd& w, const std::vector<double>& per_lead, double scale) {
  const auto n = static_cast<int>(per_lead.size());
  std::vector<double> out(per_lead.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i)] += scale * w(i, j) * per_lead[static_cast<std::size_t>(j)];
  }
  return out;
}

Eigen::MatrixXd flow_weights(const DiracSystem& sys, double sign) {
  const int n = sys.leads();
  const Eigen::MatrixXd prob = sys.boundary().matrix().cwiseAbs2();
  return Eigen::MatrixXd::Identity(n, n) + sign * prob;
}

// Per-lead integrals by quadrature: component j holds ∫dk/2π k^p [f_j + sign·f̃_j].
std::vector<double> lead_integrals(const DiracSystem& sys, double order, double sign, const QuadratureSettings& qs,
                                   bool& converged, double& error) {
  const int n = sys.leads();
  const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
    const double w = order == 0.0 ? 1.0 : k;
    for (int j = 0; j < n; ++j) {
      const auto [fp, fa] = dirac_occupations(sys.bank(), j, k);
      v[j] = w * (fp + sign * fa) / kTwoPi;
    }
  };
  const auto r = integrate_dirac(sys, f, n, qs);
  converged = r.converged;
  error = r.error_estimate;
  return {r.value.data(), r.value.data() + n};
}

}  // namespace

DiracSystem::DiracSystem(double charge, UnitaryMatrix u, DiracReservoirBank bank, std::optional<GaugePhases> gauge)
    : charge_(charge), bare_(std::move(u)), bank_(std::move(bank)), gauge_(std::move(gauge)) {
  if (!std::isfinite(charge_)) throw ValidationError("charge must be finite");
  bare_.require_valid();
  if (bare_.size() != bank_.size()) {
    std::ostringstream msg;
    msg << "boundary matrix has " << bare_.size() << " leads but " << bank_.size() << " reservoirs are given";
    throw ValidationError(msg.str());
  }
  u_ = gauge_ ? gauge_dress(bare_, *gauge_, charge_) : bare_;
}

bool DiracSystem::charge_conjugation_symmetric() const {
  if ((u_.matrix().conjugate() + u_.matrix()).cwiseAbs().maxCoeff() > kUnitarityTolerance) return false;
  for (int i = 0; i < bank_.size(); ++i) {
    const double mu = bank_.mu(i);
    if (std::abs(mu + bank_.mu_tilde(i)) > 1e-12 * std::max(1.0, std::abs(mu))) return false;
  }
  return true;
}

DiracSystem DiracSystem::with_bank(DiracReservoirBank bank) const {
  return DiracSystem(charge_, bare_, std::move(bank), gauge_);
}

LeadVector dirac_current(const DiracSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const Eigen::MatrixXd w = flow_weights(sys, -1.0);
  LeadVector out;
  if (use_closed_form(opts.method, true, "the Dirac current")) {
    std::vector<double> net(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      net[static_cast<std::size_t>(j)] = particle_moment(sys.bank(), j, 0.0) - antiparticle_moment(sys.bank(), j, 0.0);
    }
    out = make_vector("current", "charge/time", contract(w, net, sys.charge() / kTwoPi), "closed-form");
  } else {
    bool conv = true;
    double err = 0.0;
    const auto per_lead = lead_integrals(sys, 0.0, -1.0, opts.quadrature, conv, err);
    out = make_vector("current", "charge/time", contract(w, per_lead, sys.charge()), "quadrature");
    out.converged = conv;
    out.error_estimate = err;
  }
  attach_notes(sys, out.notes);
  return out;
}

DiracCurrentLimits dirac_current_limits(const DiracSystem& sys) {
  const int n = sys.leads();
  const Eigen::MatrixXd w = flow_weights(sys, -1.0);
  std::vector<double> hot(static_cast<std::size_t>(n)), cold(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double mu = sys.bank().mu(j);
    const double mt = sys.bank().mu_tilde(j);
    hot[static_cast<std::size_t>(j)] = 0.5 * (mu + mt);
    // θ(0) = 0 at zero temperature
    cold[static_cast<std::size_t>(j)] = (mu > 0.0 ? mu : 0.0) + (mt < 0.0 ? mt : 0.0);
  }
  const double scale = sys.charge() / kTwoPi;
  return {make_vector("current_high_temperature", "charge/time", contract(w, hot, scale), "closed-form"),
          make_vector("current_zero_temperature", "charge/time", contract(w, cold, scale), "closed-form")};
}

LeadMatrix dirac_conductance(const DiracSystem& sys) {
  const int n = sys.leads();
  const Eigen::MatrixXd w = flow_weights(sys, -1.0);
  LeadMatrix out;
  out.observable = "conductance";
  out.units = "charge^2";
  out.method = "closed-form";
  out.values.resize(n, n);
  const double e = sys.charge();
  for (int j = 0; j < n; ++j) {
    const double mu = sys.bank().mu(j);
    if (mu == 0.0) {
      std::ostringstream msg;
      msg << "conductance needs mu_" << j + 1 << " != 0 (voltages are V_j = mu_j / e)";
      throw DomainError(msg.str());
    }
    const double net = particle_moment(sys.bank(), j, 0.0) - antiparticle_moment(sys.bank(), j, 0.0);
    for (int i = 0; i < n; ++i) out.values(i, j) = e * e / kTwoPi * w(i, j) * net / mu;
  }
  attach_notes(sys, out.notes);
  return out;
}

LeadVector dirac_heat_current(const DiracSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const Eigen::MatrixXd w = flow_weights(sys, -1.0);
  LeadVector out;
  if (use_closed_form(opts.method, true, "the Dirac heat current")) {
    std::vector<double> total(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      total[static_cast<std::size_t>(j)] =
          particle_moment(sys.bank(), j, 1.0) + antiparticle_moment(sys.bank(), j, 1.0);
    }
    out = make_vector("heat_current", "energy/time", contract(w, total, 1.0 / kTwoPi), "closed-form");
  } else {
    bool conv = true;
    double err = 0.0;
    const auto per_lead = lead_integrals(sys, 1.0, 1.0, opts.quadrature, conv, err);
    out = make_vector("heat_current", "energy/time", contract(w, per_lead, 1.0), "quadrature");
    out.converged = conv;
    out.error_estimate = err;
  }
  attach_notes(sys, out.notes);
  return out;
}

DiracDensities dirac_densities(const DiracSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const Eigen::MatrixXd w = flow_weights(sys, 1.0);
  DiracDensities out;
  if (use_closed_form(opts.method, true, "the Dirac densities")) {
    std::vector<double> net(static_cast<std::size_t>(n)), total(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      net[static_cast<std::size_t>(j)] = particle_moment(sys.bank(), j, 0.0) - antiparticle_moment(sys.bank(), j, 0.0);
      total[static_cast<std::size_t>(j)] =
          particle_moment(sys.bank(), j, 1.0) + antiparticle_moment(sys.bank(), j, 1.0);
    }
    out.charge = make_vector("charge_density", "charge/length", contract(w, net, sys.charge() / kTwoPi), "closed-form");
    out.energy = make_vector("energy_density", "energy/length", contract(w, total, 1.0 / kTwoPi), "closed-form");
  } else {
    bool c1 = true, c2 = true;
    double e1 = 0.0, e2 = 0.0;
    const auto net = lead_integrals(sys, 0.0, -1.0, opts.quadrature, c1, e1);
    const auto total = lead_integrals(sys, 1.0, 1.0, opts.quadrature, c2, e2);
    out.charge = make_vector("charge_density", "charge/length", contract(w, net, sys.charge()), "quadrature");
    out.energy = make_vector("energy_density", "energy/length", contract(w, total, 1.0), "quadrature");
    out.charge.converged = c1;
    out.charge.error_estimate = e1;
    out.energy.converged = c2;
    out.energy.error_estimate = e2;
  }
  attach_notes(sys, out.charge.notes);
  attach_notes(sys, out.energy.notes);
  return out;
}

LeadMatrix dirac_noise_zero_freq(const DiracSystem& sys, const EvalOptions& opts) {
  const int n = sys.leads();
  const ComplexMatrix& u = sys.boundary().matrix();
  const Eigen::MatrixXd prob = u.cwiseAbs2();
  const auto& bank = sys.bank();
  const double e2 = sys.charge() * sys.charge();

  // W^{ij}_{lm} = Re(U_li conj(U_lj) U_mj conj(U_mi)), stored as [(i*n + j)*n + l]*n + m
  std::vector<double> quartic(static_cast<std::size_t>(n * n * n * n));
  auto qidx = [n](int i, int j, int l, int m) { return static_cast<std::size_t>(((i * n + j) * n + l) * n + m); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          quartic[qidx(i, j, l, m)] = (u(l, i) * std::conj(u(l, j)) * u(m, j) * std::conj(u(m, i))).real();

  LeadMatrix out;
  out.observable = "noise";
  out.row_sums_vanish = true;
  out.units = "charge^2/time";
  out.values.resize(n, n);
  if (use_closed_form(opts.method, bank.common_temperature(), "the Dirac noise")) {
    const double beta = bank.beta(0);
    const bool cold = std::isinf(beta);
    Eigen::VectorXd g(n);
    Eigen::MatrixXd kernel(n, n);
    for (int l = 0; l < n; ++l) {
      const double ap = beta * bank.mu(l);
      const double aa = -beta * bank.mu_tilde(l);
      g[l] = cold ? 0.0 : (detail::sigmoid(ap) + detail::sigmoid(aa)) / beta;
      for (int m = 0; m < n; ++m) {
        if (cold) {
          kernel(l, m) = std::abs(std::max(bank.mu(l), 0.0) - std::max(bank.mu(m), 0.0)) +
                         std::abs(std::max(-bank.mu_tilde(l), 0.0) - std::max(-bank.mu_tilde(m), 0.0));
        } else {
          kernel(l, m) = (detail::pair_kernel(Statistics::fermi, ap, beta * bank.mu(m)) +
                          detail::pair_kernel(Statistics::fermi, aa, -beta * bank.mu_tilde(m))) /
                         beta;
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double q = 0.0;
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) q += quartic[qidx(i, j, l, m)] * kernel(l, m);
        out.values(i, j) = e2 / kTwoPi * ((delta(i, j) - prob(i, j)) * g[i] - prob(j, i) * g[j] + 0.5 * q);
      }
    }
    out.method = "closed-form";
  } else {
    Eigen::VectorXd fp(n), fa(n);
    Eigen::MatrixXd kern(n, n);
    const VectorIntegrand f = [&](double k, Eigen::VectorXd& v) {
      for (int l = 0; l < n; ++l) {
        const auto [p, a] = dirac_occupations(bank, l, k);
        fp[l] = p;
        fa[l] = a;
      }
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) kern(l, m) = fp[l] * (1.0 - fp[m]) + fa[l] * (1.0 - fa[m]);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          double q = 0.0;
          for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m) q += quartic[qidx(i, j, l, m)] * (kern(l, m) + kern(m, l));
          const double diag = (delta(i, j) - prob(i, j)) * kern(i, i) - prob(j, i) * kern(j, j);
          v[j * n + i] = e2 / kTwoPi * (diag + 0.5 * q);
        }
      }
    };
    const auto r = integrate_dirac(sys, f, n * n, opts.quadrature);
    out.values = Eigen::Map<const Eigen::MatrixXd>(r.value.data(), n, n);
    out.method = "quadrature";
    out.converged = r.converged;
    out.error_estimate = r.error_estimate;
  }
  attach_notes(sys, out.notes);
  return out;
}

}  // namespace qjunction
