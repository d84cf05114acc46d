#pragma once

// Massless Dirac junction (ω = |k|) with scale-invariant boundary matrix U and
// separate particle (μ) and antiparticle (μ̃) chemical potentials.

#include <optional>

#include "qjunction/observables.hpp"
#include "qjunction/reservoirs.hpp"
#include "qjunction/vertex.hpp"

namespace qjunction {

class DiracSystem {
 public:
  DiracSystem(double charge, UnitaryMatrix u, DiracReservoirBank bank, std::optional<GaugePhases> gauge = std::nullopt);

  double charge() const { return charge_; }
  /// Gauge-dressed boundary matrix.
  const UnitaryMatrix& boundary() const { return u_; }
  const DiracReservoirBank& bank() const { return bank_; }
  const std::optional<GaugePhases>& gauge() const { return gauge_; }
  int leads() const { return bank_.size(); }

  /// conj(U) = −U and μ_i = −μ̃_i for every lead.
  bool charge_conjugation_symmetric() const;

  DiracSystem with_bank(DiracReservoirBank bank) const;

 private:
  double charge_;
  UnitaryMatrix bare_;
  UnitaryMatrix u_;
  DiracReservoirBank bank_;
  std::optional<GaugePhases> gauge_;
};

/// J_i = (e/2π) Σ_j (δ_ij − |U_ij|²) β_j^{-1} ln[(1 + e^{β_j μ_j}) / (1 + e^{−β_j μ̃_j})].
LeadVector dirac_current(const DiracSystem& sys, const EvalOptions& opts = {});

struct DiracCurrentLimits {
  LeadVector high_temperature;
  LeadVector zero_temperature;
};

DiracCurrentLimits dirac_current_limits(const DiracSystem& sys);

/// G_ij = (e²/2π)(δ_ij − |U_ij|²)(β_j μ_j)^{-1} ln[(1 + e^{β_j μ_j}) / (1 + e^{−β_j μ̃_j})].
LeadMatrix dirac_conductance(const DiracSystem& sys);

/// 𝒯_i = (1/2π) Σ_j (|U_ij|² − δ_ij) β_j^{-2} [Li_2(−e^{β_j μ_j}) + Li_2(−e^{−β_j μ̃_j})].
LeadVector dirac_heat_current(const DiracSystem& sys, const EvalOptions& opts = {});

struct DiracDensities {
  LeadVector charge;
  LeadVector energy;
};

/// Homogeneous charge and energy densities: the flow formulas with δ_ij − |U_ij|² → δ_ij + |U_ij|².
DiracDensities dirac_densities(const DiracSystem& sys, const EvalOptions& opts = {});

/// Zero-frequency noise; exact at a common β, quadrature otherwise.
LeadMatrix dirac_noise_zero_freq(const DiracSystem& sys, const EvalOptions& opts = {});

}  // namespace qjunction
