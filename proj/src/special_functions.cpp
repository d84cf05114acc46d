#include <cmath>
#include <numbers>
#include <sstream>

#include "qjunction/errors.hpp"
#include "qjunction/numerics.hpp"

namespace qjunction {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double gamma_of(double s) {
  if (s == 1.0 || s == 2.0) return 1.0;
  if (s == 1.5) return 0.5 * std::sqrt(std::numbers::pi);
  if (s == 0.5) return std::sqrt(std::numbers::pi);
  return std::tgamma(s);
}

double polylog_series(double s, double x) {
  double sum = 0.0;
  double power = 1.0;
  for (int j = 1; j < 400; ++j) {
    power *= x;
    const double term = power / std::pow(static_cast<double>(j), s);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Complete Fermi–Dirac integral ∫_0^∞ t^{s-1}/(e^{t-a}+1) dt after t = u².
double fermi_dirac(double s, double a) {
  auto occupancy = [a](double u) {
    const double y = u * u - a;
    if (y > 0.0) {
      const double e = std::exp(-y);
      return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(y));
  };
  const VectorIntegrand f = [&](double u, Eigen::VectorXd& out) {
    out[0] = 2.0 * std::pow(u, 2.0 * s - 1.0) * occupancy(u);
  };
  std::vector<double> nodes{0.0};
  const double edge = std::max(a, 0.0);
  if (edge > 40.0) nodes.push_back(std::sqrt(edge - 40.0));
  if (edge > 0.0) nodes.push_back(std::sqrt(edge));
  nodes.push_back(std::sqrt(edge + 40.0));
  QuadratureSettings settings;
  settings.rel_tol = 1e-14;
  settings.abs_tol = 1e-300;
  settings.max_subdivisions = 200;
  settings.tail_decay_scale = 0.5;
  const auto r = integrate_panels(f, 1, nodes, true, settings);
  return r.value[0];
}

// Continued fraction for e^a E1(a), a > 1 (modified Lentz).
double e1_scaled_cf(double a) {
  constexpr double tiny = 1e-300;
  double b = a + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw NumericalError("exponential integral continued fraction did not converge");
}

double e1_series(double a) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -a / static_cast<double>(k);
    const double add = term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(a) - sum;
}

void require_positive(double a, const char* what) {
  if (!(a > 0.0) || std::isnan(a)) {
    std::ostringstream msg;
    msg << what << " requires a > 0, got " << a;
    throw DomainError(msg.str());
  }
}

}  // namespace

double softplus(double a) {
  if (a > 0.0) return a + std::log1p(std::exp(-a));
  return std::log1p(std::exp(a));
}

double polylog(double s, double x) {
  if (!(s > 0.0)) throw DomainError("polylog order must be > 0");
  if (x > 0.0 || std::isnan(x)) throw DomainError("polylog is only implemented for x <= 0");
  if (x == 0.0) return 0.0;
  if (x >= -0.5) return polylog_series(s, x);
  // Li_s(-e^a) = -F_{s-1}(a) / Γ(s)
  return -fermi_dirac(s, std::log(-x)) / gamma_of(s);
}

double exp_integral_e1(double a) {
  require_positive(a, "E1");
  if (a <= 1.0) return e1_series(a);
  return e1_scaled_cf(a) * std::exp(-a);
}

double exp_integral_Ia(double a) {
  require_positive(a, "I(a)");
  if (a <= 1.0) return std::exp(a) * e1_series(a);
  return e1_scaled_cf(a);
}

double fermi_integral(double order, double beta, double mu) {
  if (!(order == 0.0 || order == 0.5 || order == 1.0)) throw DomainError("fermi_integral order must be 0, 1/2 or 1");
  if (!(beta > 0.0)) throw DomainError("fermi_integral requires beta > 0");
  if (std::isinf(beta)) {
    const double m = std::max(mu, 0.0);
    return std::pow(m, order + 1.0) / (order + 1.0);
  }
  if (order == 0.0) return softplus(beta * mu) / beta;
  const double a = beta * mu;
  // ∫ ω^p f dω = β^{-(p+1)} F_p(βμ)
  return fermi_dirac(order + 1.0, a) / std::pow(beta, order + 1.0);
}

}  // namespace qjunction
