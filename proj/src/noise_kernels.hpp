#pragma once

// Closed-form pieces of the critical noise: for occupation exponents a = βμ,
//   g(a)    = e^a/(1 ± e^a)
//   K(a, b) = coth((a−b)/2)·(F(a) − F(b)),   K(a, a) = 2 g(a)
// with F(a) = ±ln(1 ± e^a), the upper sign for Fermi statistics.

#include <cmath>

#include "qjunction/numerics.hpp"
#include "qjunction/reservoirs.hpp"

namespace qjunction::detail {

inline double sigmoid(double a) {
  if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

inline double occupation_weight(Statistics s, double a) {
  if (s == Statistics::fermi) return sigmoid(a);
  return 1.0 / std::expm1(-a);
}

inline double log_partition(Statistics s, double a) {
  if (s == Statistics::fermi) return softplus(a);
  return -std::log1p(-std::exp(a));
}

inline double pair_kernel(Statistics s, double a, double b) {
  const double delta = a - b;
  if (std::abs(delta) < 1e-4) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * delta;
    const double g = occupation_weight(s, c);
    const double third = s == Statistics::fermi ? g * (1.0 - g) * (1.0 - 2.0 * g) : g * (1.0 + g) * (1.0 + 2.0 * g);
    const double divided = g + third * delta * delta / 24.0;
    const double hcoth = 1.0 + h * h / 3.0 - h * h * h * h / 45.0;
    return 2.0 * hcoth * divided;
  }
  return (log_partition(s, a) - log_partition(s, b)) / std::tanh(0.5 * delta);
}

}  // namespace qjunction::detail
