// Acceptance gate: one PASS/FAIL line per criterion.
//
//   qj_acceptance                 run all criteria
//   qj_acceptance --criterion N   run criterion N only
//
// Exit status is 0 only if every selected criterion passes.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qjunction/dirac.hpp"
#include "qjunction/errors.hpp"
#include "qjunction/numerics.hpp"
#include "qjunction/schrodinger.hpp"
#include "systems.hpp"

using namespace qjunction;
using namespace testsys;
using std::numbers::pi;

namespace {

// Pinned tolerances.
constexpr double kSMatrixTol = 1e-10;
constexpr double kKirchhoffRel = 1e-9;
constexpr double kKirchhoffFloor = 1e-14;
constexpr double kEquilibriumTol = 1e-10;
constexpr double kClosedFormRel = 1e-6;
constexpr double kLimitRel = 1e-3;
constexpr double kFriedelTol = 1e-6;
constexpr double kEnvelopeRel = 0.05;
constexpr double kSymmetryTol = 1e-9;
constexpr double kBoseFermiTol = 1e-9;
constexpr double kLowTRel = 0.05;
constexpr double kHighTRel = 0.10;
constexpr double kCorrespondenceTol = 1e-12;
constexpr double kGaugeTol = 1e-12;
constexpr double kSpecialTol = 1e-9;
constexpr double kZeroCrossingTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail] " << what << "; ";
    }
  }
  void note(const std::string& what) { detail << what << "; "; }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double worst(double current, double candidate) { return std::max(current, candidate); }

bool kirchhoff_vec(const LeadVector& v) {
  double scale = 0.0;
  for (double x : v.values) scale = std::max(scale, std::abs(x));
  return v.kirchhoff_residual() <= std::max(kKirchhoffRel * scale, kKirchhoffFloor);
}

bool kirchhoff_cols(const LeadMatrix& m) {
  const double scale = m.values.cwiseAbs().maxCoeff();
  return m.column_residual() <= std::max(kKirchhoffRel * scale, kKirchhoffFloor);
}

bool kirchhoff_both(const LeadMatrix& m) {
  const double scale = m.values.cwiseAbs().maxCoeff();
  return kirchhoff_cols(m) && m.row_residual() <= std::max(kKirchhoffRel * scale, kKirchhoffFloor);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Relative difference with a scale floor, for values that can be tiny.
double rel_floor(const std::vector<double>& a, const std::vector<double>& b, double floor) {
  double scale = floor, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return diff / scale;
}

double rel_floor(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double floor) {
  const double scale = std::max({floor, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// Random bound-state-free Schrödinger system; cycles vertex, critical and two-lead couplings.
SchrodingerSystem random_schrodinger(std::mt19937_64& rng, int variant, std::vector<double> beta = {},
                                     Statistics stats = Statistics::fermi) {
  std::uniform_int_distribution<int> nd(2, 4);
  std::uniform_real_distribution<double> lam(-3.0, -0.3);
  int n = variant % 3 == 2 ? 2 : nd(rng);
  if (beta.empty()) beta = uniform(n, 0.3, 5.0, rng);
  n = static_cast<int>(beta.size());
  std::vector<double> mu = stats == Statistics::fermi ? uniform(n, 0.1, 2.0, rng) : uniform(n, -2.0, -0.1, rng);
  switch (variant % 3) {
    case 0:
      return vertex(random_admissible_boundary(n, rng), lam(rng), beta, mu, stats);
    case 1:
      return critical(oracle::haar_unitary(n, rng), beta, mu, stats);
    default: {
      std::uniform_real_distribution<double> eta(-3.0, 0.0), ang(0.0, pi);
      const TwoLeadParams p{eta(rng), eta(rng), ang(rng), 2.0 * ang(rng)};
      return SchrodingerSystem(1.0, 1.0, ScatteringModel(p), ReservoirBank(beta, mu, stats));
    }
  }
}

DiracSystem random_dirac(std::mt19937_64& rng, std::vector<double> beta = {}) {
  std::uniform_int_distribution<int> nd(2, 4);
  int n = beta.empty() ? nd(rng) : static_cast<int>(beta.size());
  if (beta.empty()) beta = uniform(n, 0.3, 5.0, rng);
  return DiracSystem(1.0, UnitaryMatrix(oracle::haar_unitary(n, rng)),
                     DiracReservoirBank(beta, uniform(n, -2.0, 2.0, rng), uniform(n, -2.0, 2.0, rng)));
}

Outcome criterion_1() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> mag(0.2, 5.0), logk(-3.0, 3.0);
  std::bernoulli_distribution sign(0.5);
  double unit = 0.0, ha = 0.0, at_lambda = 0.0;
  for (int c = 0; c < 200; ++c) {
    const int n = 2 + c % 3;
    const double lambda = sign(rng) ? mag(rng) : -mag(rng);
    const VertexCoupling vc(UnitaryMatrix(oracle::haar_unitary(n, rng)), lambda);
    for (int m = 0; m < 50; ++m) {
      const double k = std::pow(10.0, logk(rng));
      const ComplexMatrix s = smatrix(vc, k);
      unit = worst(unit, unitarity_residual(s));
      ha = worst(ha, (s.adjoint() - smatrix(vc, -k)).cwiseAbs().maxCoeff());
    }
    at_lambda = worst(at_lambda, (smatrix(vc, lambda) - vc.boundary().matrix()).cwiseAbs().maxCoeff());
  }
  o.require(unit <= kSMatrixTol, "unitarity");
  o.require(ha <= kSMatrixTol, "hermitian analyticity");
  o.require(at_lambda <= kSMatrixTol, "S(lambda) = U");
  o.note("200 couplings x 50 momenta; max |SS^+ - I| " + sci(unit) + ", max |S(k)^+ - S(-k)| " + sci(ha) +
         ", max |S(lambda) - U| " + sci(at_lambda));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  std::mt19937_64 rng(2002);
  int bad_s = 0, bad_d = 0;
  for (int t = 0; t < 100; ++t) {
    const SchrodingerSystem sys = random_schrodinger(rng, t);
    const bool ok = kirchhoff_vec(steady_current(sys)) && kirchhoff_vec(heat_current(sys)) &&
                    kirchhoff_cols(conductance(sys)) && kirchhoff_both(noise_zero_freq(sys));
    if (!ok) ++bad_s;
  }
  for (int t = 0; t < 100; ++t) {
    const DiracSystem sys = random_dirac(rng);
    const bool ok = kirchhoff_vec(dirac_current(sys)) && kirchhoff_vec(dirac_heat_current(sys)) &&
                    kirchhoff_cols(dirac_conductance(sys)) && kirchhoff_both(dirac_noise_zero_freq(sys));
    if (!ok) ++bad_d;
  }
  o.require(bad_s == 0, std::to_string(bad_s) + " Schrodinger systems violate a sum rule");
  o.require(bad_d == 0, std::to_string(bad_d) + " Dirac systems violate a sum rule");
  o.note("sum_i J_i, sum_i heat_i, sum_i G_ij, sum_i P_ij, sum_j P_ij over 100 + 100 random systems");
  return o;
}

Outcome criterion_3() {
  Outcome o;
  std::mt19937_64 rng(3003);
  double j = 0.0, h = 0.0, rho = 0.0, p = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    std::uniform_real_distribution<double> b(0.3, 5.0), m(0.1, 2.0), lam(-3.0, -0.3);
    const double beta = b(rng), mu = m(rng);
    const auto sys = vertex(random_admissible_boundary(n, rng), lam(rng), std::vector<double>(n, beta),
                            std::vector<double>(n, mu));
    j = worst(j, max_abs(steady_current(sys).values));
    h = worst(h, max_abs(heat_current(sys).values));
    for (double x : {0.3, 1.7}) rho = worst(rho, std::abs(charge_density_profile(sys, 0, x).non_equilibrium));
  }
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    std::uniform_real_distribution<double> phase(0.0, 0.49 * pi), lam(-3.0, -0.3);
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) u(i, i) = std::polar(1.0, 2.0 * phase(rng));
    const auto sys = vertex(u, lam(rng), uniform(n, 0.3, 5.0, rng), uniform(n, 0.1, 2.0, rng));
    p = worst(p, noise_zero_freq(sys).values.cwiseAbs().maxCoeff());
  }
  o.require(j <= kEquilibriumTol, "current at equilibrium");
  o.require(h <= kEquilibriumTol, "heat current at equilibrium");
  o.require(rho <= kEquilibriumTol, "non-equilibrium density shift at equilibrium");
  o.require(p <= kEquilibriumTol, "noise of isolated leads");
  o.note("equal reservoirs, 20 couplings: max|J| " + sci(j) + ", max|heat| " + sci(h) + ", max|rho_neq| " + sci(rho) +
         "; isolated leads, 20 couplings: max|P| " + sci(p));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  std::mt19937_64 rng(4004);
  double dj = 0.0, dh = 0.0, de = 0.0, dp = 0.0;
  std::uniform_real_distribution<double> b(0.5, 4.0);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 3;
    const double beta = b(rng);
    const ComplexMatrix u = oracle::haar_unitary(n, rng);
    const auto sys = critical(u, std::vector<double>(n, beta), uniform(n, -0.5, 2.0, rng));
    dj = worst(dj, max_rel_diff(steady_current(sys).values, steady_current(sys, quadrature_only()).values));
    dh = worst(dh, max_rel_diff(heat_current(sys).values, heat_current(sys, quadrature_only()).values));
    dp = worst(dp, max_rel_diff(noise_zero_freq(sys).values, noise_zero_freq(sys, quadrature_only()).values));
    const LeadVector sb = stefan_boltzmann_closed_form(UnitaryMatrix(u), sys.bank(), 1.0);
    for (int i = 0; i < n; ++i) de = worst(de, rel_diff(sb[i], energy_density_profile(sys, i, 1.0).stefan_boltzmann));
  }
  o.require(dj <= kClosedFormRel, "current closed form vs quadrature");
  o.require(dh <= kClosedFormRel, "heat closed form vs quadrature");
  o.require(de <= kClosedFormRel, "Stefan-Boltzmann closed form vs quadrature");
  o.require(dp <= kClosedFormRel, "noise closed form vs quadrature");
  o.note("50 critical systems, max relative differences: current " + sci(dj) + ", heat " + sci(dh) +
         ", energy density " + sci(de) + ", noise " + sci(dp));
  return o;
}

Outcome criterion_5() {
  Outcome o;
  std::mt19937_64 rng(5005);
  double half = 0.0, dirac_lim = 0.0, shot = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    const UnitaryMatrix u(oracle::haar_unitary(n, rng));
    const auto lim = steady_current_limits(u, uniform(n, -1.0, 3.0, rng));
    for (int i = 0; i < n; ++i) {
      if (lim.zero_temperature[i] != 0.0) {
        half = worst(half, std::abs(lim.high_temperature[i] / lim.zero_temperature[i] - 0.5));
      }
    }
    const int m = 2 + t % 3;
    const ComplexMatrix ud = oracle::haar_unitary(m, rng);
    const DiracSystem d(1.0, UnitaryMatrix(ud),
                        DiracReservoirBank(std::vector<double>(m, 1e4), uniform(m, 0.2, 2.0, rng), uniform(m, 0.2, 2.0, rng)));
    dirac_lim = worst(dirac_lim, max_rel_diff(dirac_current(d).values, dirac_current_limits(d).zero_temperature.values));

    // Adjacent potentials 200 apart at beta = 100; the O(T) thermal remainder is then small
    // next to the shot noise even for weakly transmitting draws.
    std::vector<double> mu(n);
    for (int i = 0; i < n; ++i) mu[i] = 200.0 * i;
    std::shuffle(mu.begin(), mu.end(), rng);
    const LeadMatrix closed = noise_critical_closed_form(u, ReservoirBank(std::vector<double>(n, 100.0), mu));
    // Measured against the largest entry: the thermal correction is additive, O(T), and
    // off-diagonal entries can sit near zero.
    shot = worst(shot, rel_floor(closed.values, shot_noise(u, mu, Statistics::fermi).values, 0.0));
  }
  o.require(half == 0.0, "J(0,mu) = J(inf,mu)/2");
  o.require(dirac_lim <= kLimitRel, "Dirac current at beta = 1e4 vs zero-temperature limit");
  o.require(shot <= kLimitRel, "closed-form noise at beta = 100 vs shot noise (relative to max entry)");
  o.note("max |J(0)/J(inf) - 1/2| " + sci(half) + ", Dirac limit " + sci(dirac_lim) + ", shot-noise limit " + sci(shot));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  // Zero temperature, e = 1, U = I on one lead, 2m mu = 1.
  const auto sys = critical(ComplexMatrix::Identity(1, 1), {kZeroTemperature}, {0.5});
  const UnitaryMatrix id = UnitaryMatrix::identity(1);
  double diff = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = k == 0 ? pi / 4.0 : 0.15 + 0.61 * k;
    const double closed = friedel_oscillation_closed_form(id, 0, 0.5, 1.0, 1.0, x);
    diff = worst(diff, std::abs(charge_density_profile(sys, 0, x).oscillating - closed));
  }
  o.require(diff <= kFriedelTol, "closed form vs quadrature at 20 distances");
  const double worked = charge_density_profile(sys, 0, pi / 4.0).oscillating;
  const double quoted = 4.0 / (pi * pi);
  o.require(std::abs(worked - quoted) <= kFriedelTol, "worked point rho_osc(pi/4) = 4/pi^2");
  // Envelope: x times the peak amplitude per period over x in [5, 50] periods (period pi/k_F, k_F = 1).
  double lo = 1e300, hi = 0.0;
  for (int period = 5; period <= 50; ++period) {
    double peak = 0.0;
    for (int s = 0; s < 64; ++s) {
      const double x = (period + s / 64.0) * pi;
      peak = std::max(peak, std::abs(charge_density_profile(sys, 0, x).oscillating) * x);
    }
    lo = std::min(lo, peak);
    hi = std::max(hi, peak);
  }
  o.require((hi - lo) / hi <= kEnvelopeRel, "1/x envelope");
  o.note("max |closed - quadrature| " + sci(diff) + "; rho_osc(pi/4) = " + sci(worked) + " vs quoted 4/pi^2 = " +
         sci(quoted) + " (exact integral gives 2/pi^2 = " + sci(2.0 / (pi * pi)) + "); x*amplitude spread " +
         sci((hi - lo) / hi));
  return o;
}

Outcome criterion_7() {
  Outcome o;
  std::mt19937_64 rng(7007);
  double asym = 0.0, neg = 0.0, bf = 0.0;
  for (int t = 0; t < 30; ++t) {
    const SchrodingerSystem sys = random_schrodinger(rng, t);
    const LeadMatrix p = noise_zero_freq(sys);
    asym = worst(asym, p.asymmetry() / std::max(1e-14, p.values.cwiseAbs().maxCoeff()));
    for (int i = 0; i < p.size(); ++i) neg = std::min(neg, p(i, i));
    const DiracSystem d = random_dirac(rng);
    const LeadMatrix pd = dirac_noise_zero_freq(d);
    asym = worst(asym, pd.asymmetry() / std::max(1e-14, pd.values.cwiseAbs().maxCoeff()));
    const int n = 2 + t % 3;
    const UnitaryMatrix u(oracle::haar_unitary(n, rng));
    const auto mu = uniform(n, -2.0, 2.0, rng);
    const LeadMatrix f = shot_noise(u, mu, Statistics::fermi);
    const LeadMatrix b = shot_noise(u, mu, Statistics::bose);
    bf = worst(bf, (f.values + b.values).cwiseAbs().maxCoeff());
  }
  ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
  perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = 1.0;
  const double perm_max = shot_noise(UnitaryMatrix(perm), {0.1, 0.9, 1.7, 3.0}, Statistics::fermi).values.cwiseAbs().maxCoeff();
  o.require(asym <= kSymmetryTol, "noise symmetry");
  o.require(neg >= 0.0, "Fermi diagonal noise non-negative");
  o.require(bf <= kBoseFermiTol, "Bose shot noise = -Fermi shot noise");
  o.require(perm_max == 0.0, "permutation shot noise exactly zero");
  o.note("relative asymmetry " + sci(asym) + ", min diagonal " + sci(neg) + ", |Bose + Fermi| " + sci(bf) +
         ", permutation " + sci(perm_max));
  return o;
}

Outcome criterion_8() {
  Outcome o;
  std::mt19937_64 rng(8008);
  std::uniform_real_distribution<double> beta_d(-1.0, 1.0), eta_d(-3.0, -0.2), theta_d(0.1, pi - 0.1);
  int outside_quoted = 0, outside_valid = 0;
  double worst_ratio = 1e300;
  for (int t = 0; t < 30; ++t) {
    const double beta = std::pow(10.0, beta_d(rng));
    const TwoLeadParams p{eta_d(rng), 0.0, theta_d(rng), 0.0};
    const ThermalNoiseBounds b = thermal_noise_bounds_two_lead(p, 1.0, 1.0, beta);
    if (b.value < b.quoted_lower || b.value > b.upper) ++outside_quoted;
    if (b.value < b.lower || b.value > b.upper) ++outside_valid;
    worst_ratio = std::min(worst_ratio, b.value / b.quoted_lower);
  }
  const TwoLeadParams p{-1.0, 0.0, 1.2, 0.0};
  const double scale = 0.5;  // eta^2/2m
  auto value_at = [&](double t) { return thermal_noise_bounds_two_lead(p, 1.0, 1.0, 1.0 / t).value; };
  const double low1 = value_at(1e-3 * scale) / (1e-3 * scale);
  const double low2 = value_at(1e-2 * scale) / (1e-2 * scale);
  const double low_spread = std::abs(low1 - low2) / std::max(low1, low2);
  double hmin = 1e300, hmax = 0.0;
  for (double f : {1e2, 1e3, 1e4}) {
    const double r = value_at(f * scale) / std::log(f);
    hmin = std::min(hmin, r);
    hmax = std::max(hmax, r);
  }
  const double high_spread = (hmax - hmin) / hmax;
  o.require(outside_quoted == 0, std::to_string(outside_quoted) + "/30 values below the quoted lower bound C*I/2");
  o.require(outside_valid == 0, "value outside [C*I/4, C*I]");
  o.require(low_spread <= kLowTRel, "value/T at low T");
  o.require(high_spread <= kHighTRel, "value/ln T at high T");
  o.note("min value/(C*I/2) " + sci(worst_ratio) + "; all 30 inside [C*I/4, C*I]: " + (outside_valid == 0 ? "yes" : "no") +
         "; value/T spread " + sci(low_spread) + "; value/ln(T/(eta^2/2m)) spread " + sci(high_spread));
  return o;
}

Outcome criterion_9() {
  Outcome o;
  std::mt19937_64 rng(9009);
  std::uniform_real_distribution<double> b(0.3, 5.0);
  double corr = 0.0, jn = 0.0, quad = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    const ComplexMatrix u = oracle::haar_unitary(n, rng);
    const double beta = b(rng);
    const std::vector<double> betas(n, beta);
    const auto mu = uniform(n, -1.0, 2.0, rng);
    const DiracSystem d(1.0, UnitaryMatrix(u), DiracReservoirBank(betas, mu, std::vector<double>(n, 0.0)));
    const LeadVector jd = dirac_current(d);
    const LeadVector js = steady_current(critical(u, betas, mu));
    for (int i = 0; i < n; ++i) corr = worst(corr, std::abs(jd[i] - js[i]));
    const DiracSystem z(1.0, UnitaryMatrix(u),
                        DiracReservoirBank(betas, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)));
    const LeadMatrix pz = dirac_noise_zero_freq(z);
    jn = worst(jn, (pz.values - johnson_nyquist_noise(UnitaryMatrix(u), beta).values).cwiseAbs().maxCoeff());
    quad = worst(quad, max_rel_diff(pz.values, dirac_noise_zero_freq(z, quadrature_only()).values));
  }
  o.require(corr <= kCorrespondenceTol, "mu_tilde = 0 Dirac current vs Schrodinger critical current");
  o.require(jn <= kCorrespondenceTol, "Dirac noise at mu = mu_tilde = 0 vs Johnson-Nyquist formula");
  o.require(quad <= kClosedFormRel, "Dirac noise closed form vs quadrature");
  o.note("common beta, 20 systems: max |J_D - J_S| " + sci(corr) + ", max |P_D - P_JN| " + sci(jn) +
         ", closed vs quadrature " + sci(quad));
  return o;
}

Outcome criterion_10() {
  Outcome o;
  std::mt19937_64 rng(10010);
  std::uniform_real_distribution<double> ph(-pi, pi), lam(-3.0, -0.3);
  double dev = 0.0;
  auto gauge = [&](int n) {
    GaugePhases g;
    for (int i = 0; i < n; ++i) g.alpha.push_back(ph(rng));
    return g;
  };
  // Floor 1e-3 keeps roundoff on near-zero entries from reading as a relative change.
  constexpr double floor = 1e-3;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 3;
    const ComplexMatrix u = random_admissible_boundary(n, rng);
    const ReservoirBank bank(uniform(n, 0.3, 5.0, rng), uniform(n, 0.1, 2.0, rng));
    const VertexCoupling vc(UnitaryMatrix(u), lam(rng));
    const SchrodingerSystem a(1.0, 1.0, ScatteringModel(vc), bank);
    const SchrodingerSystem g(1.0, 1.0, ScatteringModel(vc, gauge(n)), bank);
    dev = worst(dev, rel_floor(steady_current(a).values, steady_current(g).values, floor));
    dev = worst(dev, rel_floor(heat_current(a).values, heat_current(g).values, floor));
    dev = worst(dev, rel_floor(conductance(a).values, conductance(g).values, floor));
    dev = worst(dev, rel_floor(noise_zero_freq(a).values, noise_zero_freq(g).values, floor));
    const ChargeDensity ca = charge_density_profile(a, 0, 0.7), cg = charge_density_profile(g, 0, 0.7);
    dev = worst(dev, rel_floor(std::vector<double>{ca.total, ca.oscillating, ca.non_equilibrium}, std::vector<double>{cg.total, cg.oscillating, cg.non_equilibrium}, floor));
    const EnergyDensity ea = energy_density_profile(a, 0, 0.7), eg = energy_density_profile(g, 0, 0.7);
    dev = worst(dev, rel_floor(std::vector<double>{ea.total, ea.oscillating, ea.non_equilibrium}, std::vector<double>{eg.total, eg.oscillating, eg.non_equilibrium}, floor));

    const ComplexMatrix uc = oracle::haar_unitary(n, rng);
    const SchrodingerSystem c(1.0, 1.0, ScatteringModel(CriticalCoupling{UnitaryMatrix(uc)}), bank);
    const SchrodingerSystem cgs(1.0, 1.0, ScatteringModel(CriticalCoupling{UnitaryMatrix(uc)}, gauge(n)), bank);
    dev = worst(dev, rel_floor(steady_current(c).values, steady_current(cgs).values, floor));
    dev = worst(dev, rel_floor(noise_zero_freq(c).values, noise_zero_freq(cgs).values, floor));

    const DiracReservoirBank db(uniform(n, 0.3, 5.0, rng), uniform(n, -2.0, 2.0, rng), uniform(n, -2.0, 2.0, rng));
    const DiracSystem da(1.0, UnitaryMatrix(uc), db);
    const DiracSystem dg(1.0, UnitaryMatrix(uc), db, gauge(n));
    dev = worst(dev, rel_floor(dirac_current(da).values, dirac_current(dg).values, floor));
    dev = worst(dev, rel_floor(dirac_heat_current(da).values, dirac_heat_current(dg).values, floor));
    dev = worst(dev, rel_floor(dirac_conductance(da).values, dirac_conductance(dg).values, floor));
    dev = worst(dev, rel_floor(dirac_densities(da).charge.values, dirac_densities(dg).charge.values, floor));
    dev = worst(dev, rel_floor(dirac_densities(da).energy.values, dirac_densities(dg).energy.values, floor));
    dev = worst(dev, rel_floor(dirac_noise_zero_freq(da).values, dirac_noise_zero_freq(dg).values, floor));
  }
  o.require(dev <= kGaugeTol, "gauge invariance");
  o.note("current, heat, conductance, noise, densities for vertex, critical and Dirac systems: max relative change " +
         sci(dev));
  return o;
}

Outcome criterion_11() {
  Outcome o;
  const double li2 = polylog(2.0, -1.0);
  const double li2_series = -oracle::alternating_eta(2.0);
  const double li32 = polylog(1.5, -1.0);
  const double li32_series = -oracle::alternating_eta(1.5);
  const double ee1 = std::exp(1.0) * exp_integral_e1(1.0);
  const double ee1_series = std::exp(1.0) * oracle::e1_series(1.0);
  o.require(std::abs(li2 - li2_series) <= kSpecialTol && std::abs(li2 + pi * pi / 12.0) <= kSpecialTol, "Li_2(-1)");
  o.require(std::abs(li32 - li32_series) <= kSpecialTol && std::abs(li32 + 0.7651470) <= 1e-7, "Li_3/2(-1)");
  o.require(std::abs(ee1 - ee1_series) <= kSpecialTol && std::abs(ee1 - 0.596347) <= 1e-6, "e*E1(1)");
  char buf[200];
  std::snprintf(buf, sizeof buf, "Li_2(-1) = %.12f, Li_3/2(-1) = %.12f, e*E1(1) = %.12f", li2, li32, ee1);
  o.note(buf);
  return o;
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  FILE* pipe = popen((std::string(QJ_CLI_PATH) + " " + args).c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Outcome criterion_12() {
  Outcome o;
  const std::string cfg = std::string(QJ_CONFIG_DIR) + "/figures/current_vs_mu2.json";
  const CliRun a = run_cli("sweep --workers 1 --config " + cfg);
  const CliRun b = run_cli("sweep --config " + cfg);
  const CliRun c = run_cli("sweep --workers 3 --config " + cfg);
  o.require(a.status == 0 && b.status == 0 && c.status == 0, "sweep exit status");
  o.require(a.out == b.out && b.out == c.out && !a.out.empty(), "byte-identical reruns");
  // mu_1 = 1: J_1 > 0 below, < 0 above, ~0 at mu_2 = mu_1.
  std::istringstream in(a.out);
  std::string line;
  bool header = true, sign_ok = true, hit = false;
  double at_cross = 1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    ++rows;
    const double mu2 = std::stod(line.substr(0, line.find(',')));
    const std::string rest = line.substr(line.find(',') + 1);
    const double j1 = std::stod(rest.substr(0, rest.find(',')));
    if (mu2 < 1.0 && !(j1 > 0.0)) sign_ok = false;
    if (mu2 > 1.0 && !(j1 < 0.0)) sign_ok = false;
    if (mu2 == 1.0) {
      hit = true;
      at_cross = std::abs(j1);
    }
  }
  o.require(rows == 41, "41 sweep rows");
  o.require(sign_ok, "J_1 changes sign only at mu_2 = mu_1");
  o.require(hit && at_cross <= kZeroCrossingTol, "J_1 vanishes at mu_2 = mu_1");
  o.note(std::to_string(rows) + " rows, |J_1(mu_2 = mu_1)| = " + sci(at_cross) + ", reruns identical: " +
         (a.out == b.out && b.out == c.out ? "yes" : "no"));
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::array<Criterion, 12> criteria = {{
      {"S-matrix laws", criterion_1},
      {"Kirchhoff suite", criterion_2},
      {"Equilibrium null", criterion_3},
      {"Critical closed forms vs quadrature", criterion_4},
      {"Limit identities", criterion_5},
      {"Friedel oscillations", criterion_6},
      {"Noise structure", criterion_7},
      {"Two-lead thermal noise", criterion_8},
      {"Dirac correspondences", criterion_9},
      {"Gauge invariance", criterion_10},
      {"Special functions", criterion_11},
      {"CLI determinism and figure data", criterion_12},
  }};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: qj_acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion must be 1.." << criteria.size() << '\n';
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[error] " << e.what();
    }
    std::string detail = o.detail.str();
    if (detail.size() >= 2 && detail.substr(detail.size() - 2) == "; ") detail.resize(detail.size() - 2);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  #" << (i + 1) << " " << criteria[i].name << ": " << detail << '\n';
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
