#include "qjunction/observables.hpp"

#include <algorithm>
#include <cmath>

namespace qjunction {

const char* to_string(Method m) {
  switch (m) {
    case Method::automatic:
      return "automatic";
    case Method::quadrature:
      return "quadrature";
    case Method::closed_form:
      return "closed-form";
  }
  return "?";
}

bool kirchhoff_within(double residual, double scale) {
  return residual <= std::max(kKirchhoffRelative * scale, kKirchhoffFloor);
}

double LeadVector::kirchhoff_residual() const {
  double s = 0.0;
  for (double v : values) s += v;
  return std::abs(s);
}

bool LeadVector::kirchhoff_ok() const {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  return kirchhoff_within(kirchhoff_residual(), scale);
}

double LeadMatrix::column_residual() const {
  if (values.size() == 0) return 0.0;
  return values.colwise().sum().cwiseAbs().maxCoeff();
}

double LeadMatrix::row_residual() const {
  if (values.size() == 0) return 0.0;
  return values.rowwise().sum().cwiseAbs().maxCoeff();
}

double LeadMatrix::asymmetry() const {
  if (values.size() == 0) return 0.0;
  return (values - values.transpose()).cwiseAbs().maxCoeff();
}

bool LeadMatrix::kirchhoff_ok() const {
  const double scale = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  if (!kirchhoff_within(column_residual(), scale)) return false;
  return !row_sums_vanish || kirchhoff_within(row_residual(), scale);
}

}  // namespace qjunction
