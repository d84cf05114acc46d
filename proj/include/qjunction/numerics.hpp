#pragma once

// Adaptive Gauss–Kronrod quadrature and the special functions used by the
// closed-form observables.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace qjunction {

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// Bisection budget per initial panel.
  int max_subdivisions = 60;
  /// Length scale s of the tail map k = k0 - s·ln(u), u ∈ (0, 1].
  double tail_decay_scale = 1.0;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct VectorQuadratureResult {
  Eigen::VectorXd value;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

using ScalarIntegrand = std::function<double(double)>;
/// Writes the integrand at the abscissa into `out` (already sized).
using VectorIntegrand = std::function<void(double, Eigen::VectorXd& out)>;

/// ∫_a^b f. Interior breakpoints split the range into independent initial panels.
QuadratureResult integrate_finite(const ScalarIntegrand& f, double a, double b,
                                  const QuadratureSettings& settings = {},
                                  std::span<const double> breakpoints = {});

/// ∫_0^∞ f for integrands with at least exponential decay.
QuadratureResult integrate_semi_infinite(const ScalarIntegrand& f, const QuadratureSettings& settings = {});

/// Vector-valued composite rule over panels [nodes_0, nodes_1], ..., plus the tail
/// [nodes.back(), ∞) when `with_tail` is set. Error control uses the max norm over
/// components, so every component shares the same abscissae.
VectorQuadratureResult integrate_panels(const VectorIntegrand& f, int dim, std::span<const double> nodes,
                                        bool with_tail, const QuadratureSettings& settings);

/// Half-period splitting points k = jπ/(2x) strictly inside (a, b), capped at `max_points`.
std::vector<double> half_period_breakpoints(double a, double b, double x, std::size_t max_points = 20000);

/// ln(1 + e^a) without overflow.
double softplus(double a);

/// Polylogarithm Li_s(x) for x ≤ 0 and s > 0.
double polylog(double s, double x);

/// E1(a) = ∫_1^∞ e^{-a t}/t dt for a > 0.
double exp_integral_e1(double a);

/// I(a) = ∫_0^1 dξ / (a - ln ξ) = e^a E1(a) = -e^a Ei(-a), a > 0.
double exp_integral_Ia(double a);

/// ∫_0^∞ ω^p / (e^{β(ω-μ)} + 1) dω for p ∈ {0, 1/2, 1}; β = ∞ gives (μ⁺)^{p+1}/(p+1).
double fermi_integral(double order, double beta, double mu);

}  // namespace qjunction
