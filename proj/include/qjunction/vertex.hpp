#pragma once

// Vertex scattering matrices for point-like interactions on an n-edge star graph.
//
// A self-adjoint vertex coupling is fixed by a unitary boundary matrix U and a
// scale λ. Its scattering matrix is diagonal in the eigenbasis of U for every
// momentum, with channel entries (k + iη)/(k - iη), η = λ tan α and e^{2iα}
// the eigenvalues of U. Dirichlet channels (α = ±π/2) scatter with -1.

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qjunction {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kDerivedTolerance = 1e-10;

/// Square complex matrix together with the outcome of its unitarity check.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kUnitarityTolerance);

  /// Throws ValidationError naming the worst entry of U U† - I when the check failed.
  static UnitaryMatrix checked(ComplexMatrix m, double tolerance = kUnitarityTolerance);

  static UnitaryMatrix identity(int n);

  const ComplexMatrix& matrix() const { return m_; }
  int size() const { return static_cast<int>(m_.rows()); }
  bool valid() const { return valid_; }
  /// max_ij |(U U† - I)_ij|
  double residual() const { return residual_; }
  void require_valid() const;

  UnitaryMatrix inverse() const;

 private:
  ComplexMatrix m_;
  double residual_ = 0.0;
  int worst_row_ = 0;
  int worst_col_ = 0;
  bool valid_ = true;
};

/// Eigenphases α_i ∈ [-π/2, π/2] and the rotation 𝒰 with 𝒰† U 𝒰 = diag(e^{2iα_i}).
struct SpectralData {
  std::vector<double> alpha;
  std::vector<bool> dirichlet;
  ComplexMatrix rotation;
};

SpectralData diagonalize_vertex(const UnitaryMatrix& u);

/// (U, λ) boundary condition with its spectral decomposition.
class VertexCoupling {
 public:
  VertexCoupling(UnitaryMatrix u, double lambda);

  const UnitaryMatrix& boundary() const { return u_; }
  double lambda() const { return lambda_; }
  const SpectralData& spectral() const { return spectral_; }
  int leads() const { return u_.size(); }

  /// η_i = λ tan α_i; Dirichlet channels report +infinity.
  const std::vector<double>& etas() const { return etas_; }
  bool is_dirichlet(int channel) const { return spectral_.dirichlet[channel]; }

  /// No pole of (k + iη)/(k - iη) in the upper half plane.
  bool bound_state_free() const;

  /// Every channel is η = 0 or Dirichlet, so S(k) is constant for k > 0.
  bool scale_invariant() const;

 private:
  UnitaryMatrix u_;
  double lambda_;
  SpectralData spectral_;
  std::vector<double> etas_;
};

ComplexMatrix smatrix(const VertexCoupling& coupling, double k);

/// θ(k) U + θ(-k) U^{-1}; k = 0 is a DomainError.
ComplexMatrix critical_smatrix(const UnitaryMatrix& u, double k);

/// General two-lead scattering matrix parametrized by (η1, η2, θ, φ).
struct TwoLeadParams {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  bool bound_state_free() const { return eta1 <= 0.0 && eta2 <= 0.0; }
  /// Checks unitarity and S(k)† = S(-k) on a log-spaced probe grid.
  void validate() const;
};

ComplexMatrix two_lead_smatrix(const TwoLeadParams& p, double k);

/// Boundary matrix U whose coupling reproduces the two-lead family at scale λ.
///
/// U = 𝒰 diag(e^{2iα_1}, e^{2iα_2}) 𝒰† with α_i = atan(η_i/λ) and
/// 𝒰 = diag(e^{iφ/2}, e^{-iφ/2}) · R(θ/2).
UnitaryMatrix two_lead_boundary(const TwoLeadParams& p, double lambda);

/// Static line integrals α_i = α(0, i) of the vector potential along each lead.
struct GaugePhases {
  std::vector<double> alpha;
};

/// S_ij -> e^{-i q α_i} S_ij e^{i q α_j}, q the particle charge.
ComplexMatrix gauge_dress(const ComplexMatrix& s, const GaugePhases& phases, double charge = 1.0);
UnitaryMatrix gauge_dress(const UnitaryMatrix& u, const GaugePhases& phases, double charge = 1.0);

/// Scale-invariant coupling: S(k) = U for every k > 0.
struct CriticalCoupling {
  UnitaryMatrix u;
};

/// Whatever produces S(k) for k > 0 in an observable system.
class ScatteringModel {
 public:
  using Source = std::variant<VertexCoupling, TwoLeadParams, CriticalCoupling>;

  explicit ScatteringModel(Source source, std::optional<GaugePhases> gauge = std::nullopt,
                           double charge = 1.0);

  int leads() const { return leads_; }
  const Source& source() const { return source_; }
  const std::optional<GaugePhases>& gauge() const { return gauge_; }

  /// Gauge-dressed S(k). k must be nonzero.
  ComplexMatrix at(double k) const;

  bool is_critical() const { return critical_.has_value(); }
  /// Gauge-dressed S for k > 0 of a scale-invariant coupling.
  const UnitaryMatrix& critical_matrix() const;

  bool bound_state_free() const;
  /// Finite |η| values, used as quadrature breakpoints.
  std::vector<double> momentum_scales() const;

  ScatteringModel with_gauge(GaugePhases phases, double charge) const;

 private:
  Source source_;
  std::optional<GaugePhases> gauge_;
  double charge_;
  int leads_;
  std::optional<UnitaryMatrix> critical_;
};

/// max_ij |(S S† - I)_ij|
double unitarity_residual(const ComplexMatrix& s);

}  // namespace qjunction
