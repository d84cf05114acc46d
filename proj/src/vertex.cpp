#include "qjunction/vertex.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qjunction/errors.hpp"

namespace qjunction {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kDirichletTolerance = 1e-12;
constexpr double kZeroPhase = 1e-14;

ComplexMatrix phase_diagonal(const std::vector<double>& alpha, double charge, double sign) {
  const auto n = static_cast<Eigen::Index>(alpha.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = std::polar(1.0, sign * charge * alpha[static_cast<std::size_t>(i)]);
  }
  return d;
}

std::vector<double> probe_grid() {
  std::vector<double> ks;
  constexpr int kPoints = 41;
  for (int i = 0; i < kPoints; ++i) {
    ks.push_back(std::pow(10.0, -2.0 + 4.0 * i / (kPoints - 1)));
  }
  return ks;
}

}  // namespace

double unitarity_residual(const ComplexMatrix& s) {
  const ComplexMatrix r = s * s.adjoint() - ComplexMatrix::Identity(s.rows(), s.cols());
  return r.cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    valid_ = false;
    residual_ = std::numeric_limits<double>::infinity();
    return;
  }
  if (!m_.allFinite()) {
    valid_ = false;
    residual_ = std::numeric_limits<double>::infinity();
    return;
  }
  const ComplexMatrix r = m_ * m_.adjoint() - ComplexMatrix::Identity(m_.rows(), m_.cols());
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  residual_ = r.cwiseAbs().maxCoeff(&row, &col);
  worst_row_ = static_cast<int>(row);
  worst_col_ = static_cast<int>(col);
  valid_ = residual_ <= tolerance;
}

UnitaryMatrix UnitaryMatrix::checked(ComplexMatrix m, double tolerance) {
  UnitaryMatrix u(std::move(m), tolerance);
  u.require_valid();
  return u;
}

UnitaryMatrix UnitaryMatrix::identity(int n) { return UnitaryMatrix(ComplexMatrix::Identity(n, n)); }

void UnitaryMatrix::require_valid() const {
  if (valid_) return;
  std::ostringstream msg;
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    msg << "boundary matrix must be square and non-empty, got " << m_.rows() << "x" << m_.cols();
  } else if (!m_.allFinite()) {
    msg << "boundary matrix has non-finite entries";
  } else {
    msg << "matrix is not unitary: |(U U^dagger - I)(" << worst_row_ + 1 << "," << worst_col_ + 1
        << ")| = " << residual_ << " (row " << worst_row_ + 1 << ")";
  }
  throw ValidationError(msg.str());
}

UnitaryMatrix UnitaryMatrix::inverse() const { return UnitaryMatrix(m_.adjoint()); }

SpectralData diagonalize_vertex(const UnitaryMatrix& u) {
  u.require_valid();
  const int n = u.size();
  // U is normal, so its Schur form is diagonal and the Schur vectors are an
  // orthonormal eigenbasis even inside degenerate eigenspaces.
  Eigen::ComplexSchur<ComplexMatrix> schur(u.matrix());
  SpectralData out;
  out.rotation = schur.matrixU();
  out.alpha.resize(static_cast<std::size_t>(n));
  out.dirichlet.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex ev = schur.matrixT()(i, i);
    ev /= std::abs(ev);
    const auto idx = static_cast<std::size_t>(i);
    if (std::abs(ev + 1.0) <= kDirichletTolerance) {
      out.dirichlet[idx] = true;
      out.alpha[idx] = std::numbers::pi / 2.0;
      continue;
    }
    double a = std::arg(ev) / 2.0;
    if (std::abs(a) < kZeroPhase) a = 0.0;
    out.dirichlet[idx] = false;
    out.alpha[idx] = a;
  }

  ComplexMatrix diag = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    diag(i, i) = std::polar(1.0, 2.0 * out.alpha[static_cast<std::size_t>(i)]);
  }
  const double recon = (out.rotation * diag * out.rotation.adjoint() - u.matrix()).cwiseAbs().maxCoeff();
  if (recon > kDerivedTolerance) {
    std::ostringstream msg;
    msg << "eigendecomposition of the boundary matrix failed to reconstruct it (residual " << recon << ")";
    throw InvariantError(msg.str());
  }
  return out;
}

VertexCoupling::VertexCoupling(UnitaryMatrix u, double lambda)
    : u_(std::move(u)), lambda_(lambda), spectral_(diagonalize_vertex(u_)) {
  if (!std::isfinite(lambda_)) throw ValidationError("vertex scale lambda must be finite");
  etas_.reserve(spectral_.alpha.size());
  for (std::size_t i = 0; i < spectral_.alpha.size(); ++i) {
    if (spectral_.dirichlet[i]) {
      etas_.push_back(std::numeric_limits<double>::infinity());
    } else {
      etas_.push_back(lambda_ * std::tan(spectral_.alpha[i]));
    }
  }
}

bool VertexCoupling::bound_state_free() const {
  const double floor = 1e-12 * std::max(std::abs(lambda_), 1.0);
  for (std::size_t i = 0; i < etas_.size(); ++i) {
    if (!spectral_.dirichlet[i] && etas_[i] > floor) return false;
  }
  return true;
}

bool VertexCoupling::scale_invariant() const {
  for (std::size_t i = 0; i < etas_.size(); ++i) {
    if (!spectral_.dirichlet[i] && etas_[i] != 0.0) return false;
  }
  return true;
}

ComplexMatrix smatrix(const VertexCoupling& coupling, double k) {
  const auto& spec = coupling.spectral();
  const int n = coupling.leads();
  Eigen::VectorXcd channel(n);
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double eta = coupling.etas()[idx];
    if (spec.dirichlet[idx]) {
      channel(i) = -1.0;
    } else if (eta == 0.0) {
      channel(i) = 1.0;
    } else {
      channel(i) = (k + kI * eta) / (k - kI * eta);
    }
  }
  ComplexMatrix s = spec.rotation * channel.asDiagonal() * spec.rotation.adjoint();
  if (!s.allFinite()) throw NumericalError("scattering matrix has non-finite entries");
  return s;
}

ComplexMatrix critical_smatrix(const UnitaryMatrix& u, double k) {
  if (k == 0.0) throw DomainError("critical scattering matrix is undefined at k = 0");
  if (k > 0.0) return u.matrix();
  return u.matrix().adjoint();
}

ComplexMatrix two_lead_smatrix(const TwoLeadParams& p, double k) {
  const double d_eta = p.eta1 - p.eta2;
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const Complex up = std::polar(1.0, p.phi);
  const Complex down = std::conj(up);
  ComplexMatrix out(2, 2);
  if (p.eta1 * p.eta2 == 0.0) {
    // One channel has η = 0; the common factor k cancels, which keeps k = 0 finite.
    const double eta = p.eta1 + p.eta2;
    const Complex den = k - kI * eta;
    out(0, 0) = (k + kI * d_eta * c) / den;
    out(1, 1) = (k - kI * d_eta * c) / den;
    out(0, 1) = -kI * up * d_eta * s / den;
    out(1, 0) = -kI * down * d_eta * s / den;
  } else {
    const Complex den = (k - kI * p.eta1) * (k - kI * p.eta2);
    const double base = k * k + p.eta1 * p.eta2;
    out(0, 0) = (base + kI * k * d_eta * c) / den;
    out(1, 1) = (base - kI * k * d_eta * c) / den;
    out(0, 1) = -kI * up * k * d_eta * s / den;
    out(1, 0) = -kI * down * k * d_eta * s / den;
  }
  if (!out.allFinite()) throw NumericalError("two-lead scattering matrix has non-finite entries");
  return out;
}

void TwoLeadParams::validate() const {
  for (double v : {eta1, eta2, theta, phi}) {
    if (!std::isfinite(v)) throw ValidationError("two-lead parameters must be finite");
  }
  for (double k : probe_grid()) {
    const ComplexMatrix sp = two_lead_smatrix(*this, k);
    const ComplexMatrix sm = two_lead_smatrix(*this, -k);
    const double unit = unitarity_residual(sp);
    const double ha = (sp.adjoint() - sm).cwiseAbs().maxCoeff();
    if (unit > kDerivedTolerance || ha > kDerivedTolerance) {
      std::ostringstream msg;
      msg << "two-lead scattering matrix fails unitarity/hermitian analyticity at k = " << k
          << " (residuals " << unit << ", " << ha << ")";
      throw ValidationError(msg.str());
    }
  }
}

UnitaryMatrix two_lead_boundary(const TwoLeadParams& p, double lambda) {
  if (lambda == 0.0) throw DomainError("two-lead boundary matrix needs a nonzero scale lambda");
  const double half = p.theta / 2.0;
  ComplexMatrix rot(2, 2);
  rot << std::cos(half), std::sin(half), -std::sin(half), std::cos(half);
  ComplexMatrix phase = ComplexMatrix::Zero(2, 2);
  phase(0, 0) = std::polar(1.0, p.phi / 2.0);
  phase(1, 1) = std::polar(1.0, -p.phi / 2.0);
  const ComplexMatrix basis = phase * rot;
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = std::polar(1.0, 2.0 * std::atan(p.eta1 / lambda));
  diag(1, 1) = std::polar(1.0, 2.0 * std::atan(p.eta2 / lambda));
  return UnitaryMatrix::checked(basis * diag * basis.adjoint());
}

ComplexMatrix gauge_dress(const ComplexMatrix& s, const GaugePhases& phases, double charge) {
  if (static_cast<Eigen::Index>(phases.alpha.size()) != s.rows()) {
    throw ValidationError("gauge phase count does not match the number of leads");
  }
  for (double a : phases.alpha) {
    if (!std::isfinite(a)) throw ValidationError("gauge phases must be finite");
  }
  return phase_diagonal(phases.alpha, charge, -1.0) * s * phase_diagonal(phases.alpha, charge, 1.0);
}

UnitaryMatrix gauge_dress(const UnitaryMatrix& u, const GaugePhases& phases, double charge) {
  return UnitaryMatrix(gauge_dress(u.matrix(), phases, charge));
}

ScatteringModel::ScatteringModel(Source source, std::optional<GaugePhases> gauge, double charge)
    : source_(std::move(source)), gauge_(std::move(gauge)), charge_(charge) {
  std::optional<ComplexMatrix> constant;
  if (const auto* v = std::get_if<VertexCoupling>(&source_)) {
    leads_ = v->leads();
    if (v->scale_invariant()) constant = smatrix(*v, 1.0);
  } else if (const auto* t = std::get_if<TwoLeadParams>(&source_)) {
    t->validate();
    leads_ = 2;
    if (t->eta1 == 0.0 && t->eta2 == 0.0) constant = ComplexMatrix::Identity(2, 2);
  } else {
    const auto& c = std::get<CriticalCoupling>(source_);
    c.u.require_valid();
    leads_ = c.u.size();
    constant = c.u.matrix();
  }
  if (gauge_ && static_cast<int>(gauge_->alpha.size()) != leads_) {
    throw ValidationError("gauge phase count does not match the number of leads");
  }
  if (constant) {
    critical_ = UnitaryMatrix(gauge_ ? gauge_dress(*constant, *gauge_, charge_) : *constant);
  }
}

ComplexMatrix ScatteringModel::at(double k) const {
  ComplexMatrix s;
  if (const auto* v = std::get_if<VertexCoupling>(&source_)) {
    s = smatrix(*v, k);
  } else if (const auto* t = std::get_if<TwoLeadParams>(&source_)) {
    s = two_lead_smatrix(*t, k);
  } else {
    s = critical_smatrix(std::get<CriticalCoupling>(source_).u, k);
  }
  return gauge_ ? gauge_dress(s, *gauge_, charge_) : s;
}

const UnitaryMatrix& ScatteringModel::critical_matrix() const {
  if (!critical_) throw DomainError("coupling is not scale invariant");
  return *critical_;
}

bool ScatteringModel::bound_state_free() const {
  if (const auto* v = std::get_if<VertexCoupling>(&source_)) return v->bound_state_free();
  if (const auto* t = std::get_if<TwoLeadParams>(&source_)) return t->bound_state_free();
  return true;
}

std::vector<double> ScatteringModel::momentum_scales() const {
  std::vector<double> out;
  if (const auto* v = std::get_if<VertexCoupling>(&source_)) {
    for (double eta : v->etas()) {
      if (std::isfinite(eta) && eta != 0.0) out.push_back(std::abs(eta));
    }
  } else if (const auto* t = std::get_if<TwoLeadParams>(&source_)) {
    for (double eta : {t->eta1, t->eta2}) {
      if (eta != 0.0) out.push_back(std::abs(eta));
    }
  }
  return out;
}

ScatteringModel ScatteringModel::with_gauge(GaugePhases phases, double charge) const {
  return ScatteringModel(source_, std::move(phases), charge);
}

}  // namespace qjunction
