#pragma once

// Result containers and evaluation options shared by the Schrödinger and Dirac
// observable modules.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "qjunction/numerics.hpp"

namespace qjunction {

/// Absolute floor below which a Kirchhoff sum counts as zero.
inline constexpr double kKirchhoffFloor = 1e-14;
inline constexpr double kKirchhoffRelative = 1e-9;

enum class Method { automatic, quadrature, closed_form };

const char* to_string(Method m);

struct EvalOptions {
  QuadratureSettings quadrature;
  Method method = Method::automatic;
};

/// Per-lead observable values.
struct LeadVector {
  std::string observable;
  std::string units;
  std::vector<double> values;
  /// "closed-form" or "quadrature".
  std::string method;
  bool converged = true;
  double error_estimate = 0.0;
  std::vector<std::string> notes;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
  /// |Σ_i v_i|
  double kirchhoff_residual() const;
  /// Residual within max(1e-9·max|v|, 1e-14).
  bool kirchhoff_ok() const;
};

/// Pairwise observable values (conductance, noise).
struct LeadMatrix {
  std::string observable;
  std::string units;
  Eigen::MatrixXd values;
  std::string method;
  bool converged = true;
  double error_estimate = 0.0;
  std::vector<std::string> notes;
  /// Noise sums to zero over both indices; conductance only over i.
  bool row_sums_vanish = false;

  int size() const { return static_cast<int>(values.rows()); }
  double operator()(int i, int j) const { return values(i, j); }
  /// max_j |Σ_i v_ij|
  double column_residual() const;
  /// max_i |Σ_j v_ij|
  double row_residual() const;
  /// max_ij |v_ij - v_ji|
  double asymmetry() const;
  bool kirchhoff_ok() const;
};

/// True when |sum| ≤ max(1e-9·scale, 1e-14).
bool kirchhoff_within(double residual, double scale);

}  // namespace qjunction
