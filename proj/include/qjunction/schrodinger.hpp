#pragma once

// Non-equilibrium steady-state observables of a Schrödinger junction with
// dispersion ω(k) = k²/2m. Units: ħ = k_B = 1, temperatures are energies and
// positions are inverse momenta.

#include <utility>

#include "qjunction/observables.hpp"
#include "qjunction/reservoirs.hpp"
#include "qjunction/vertex.hpp"

namespace qjunction {

class SchrodingerSystem {
 public:
  SchrodingerSystem(double mass, double charge, ScatteringModel model, ReservoirBank bank,
                    bool override_bound_states = false);

  double mass() const { return mass_; }
  double charge() const { return charge_; }
  const ScatteringModel& model() const { return model_; }
  const ReservoirBank& bank() const { return bank_; }
  int leads() const { return bank_.size(); }
  bool override_bound_states() const { return override_; }
  bool bound_state_free() const { return model_.bound_state_free(); }

  double dispersion(double k) const { return k * k / (2.0 * mass_); }

  /// Throws BoundStateError unless the coupling is bound-state free or overridden.
  void require_density_admissible() const;

  SchrodingerSystem with_bank(ReservoirBank bank) const;
  SchrodingerSystem with_model(ScatteringModel model) const;

 private:
  double mass_;
  double charge_;
  ScatteringModel model_;
  ReservoirBank bank_;
  bool override_;
};

/// J_i = (e/m)∫dk/2π k Σ_j (δ_ij − |S_ij|²) d_j.
LeadVector steady_current(const SchrodingerSystem& sys, const EvalOptions& opts = {});

struct CurrentLimits {
  LeadVector high_temperature;  // β → 0
  LeadVector zero_temperature;  // β → ∞
};

/// Temperature limits of the critical current; high = zero/2 componentwise.
CurrentLimits steady_current_limits(const UnitaryMatrix& u, const std::vector<double>& mu, double charge = 1.0);

/// G_ij = (e²/m)∫dk/2π (k/μ_j)(δ_ij − |S_ij|²) d_j. Any μ_j = 0 is a DomainError.
LeadMatrix conductance(const SchrodingerSystem& sys, const EvalOptions& opts = {});

struct ChargeDensity {
  double total = 0.0;
  double oscillating = 0.0;
  double equilibrium = 0.0;
  double non_equilibrium = 0.0;
  bool converged = true;
  double error_estimate = 0.0;
  std::vector<std::string> notes;
};

/// Charge density on lead `lead` (0-based) at distance x > 0 from the vertex.
ChargeDensity charge_density_profile(const SchrodingerSystem& sys, int lead, double x, const EvalOptions& opts = {});

struct EnergyDensity {
  double total = 0.0;
  double oscillating = 0.0;
  double stefan_boltzmann = 0.0;
  double equilibrium = 0.0;
  double non_equilibrium = 0.0;
  bool converged = true;
  double error_estimate = 0.0;
  std::vector<std::string> notes;
};

/// Energy density ∫dk/2π ω{[2Re(S_ii e^{-2ikx}) + 1] d_i + Σ_j |S_ij|² d_j}.
EnergyDensity energy_density_profile(const SchrodingerSystem& sys, int lead, double x, const EvalOptions& opts = {});

/// x-independent energy density at criticality, −¼√(m/2π) Σ_j (δ_ij + |U_ij|²) β_j^{-3/2} Li_{3/2}(−e^{β_j μ_j}).
LeadVector stefan_boltzmann_closed_form(const UnitaryMatrix& u, const ReservoirBank& bank, double mass);

/// Zero-temperature oscillating charge density for a critical coupling with real U_ii:
/// e U_ii sin(2x k_F)/(2πx), k_F = √(2mμ).
double friedel_oscillation_closed_form(const UnitaryMatrix& u, int lead, double mu, double mass, double charge,
                                       double x);

/// 𝒯_i = (1/m)∫dk/2π k ω Σ_j (δ_ij − |S_ij|²) d_j.
LeadVector heat_current(const SchrodingerSystem& sys, const EvalOptions& opts = {});

/// Zero-frequency noise P_ij in the manifestly symmetric form.
LeadMatrix noise_zero_freq(const SchrodingerSystem& sys, const EvalOptions& opts = {});

/// Closed-form noise of a critical coupling at a common β (finite, or zero temperature for Fermi).
LeadMatrix noise_critical_closed_form(const UnitaryMatrix& u, const ReservoirBank& bank, double charge = 1.0);

/// ±(e²/4π) Σ_{l≠m} conj(U_il) U_jl conj(U_jm) U_im |μ_l − μ_m|, + for Fermi, − for Bose.
LeadMatrix shot_noise(const UnitaryMatrix& u, const std::vector<double>& mu, Statistics statistics,
                      double charge = 1.0);

/// (e²/2πβ)(2δ_ij − |U_ij|² − |U_ji|²).
LeadMatrix johnson_nyquist_noise(const UnitaryMatrix& u, double beta, double charge = 1.0);

struct ThermalNoiseBounds {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// The lower bound C·I(a)/2 in the form usually quoted; see README.
  double quoted_lower = 0.0;
  bool converged = true;
  std::vector<std::string> notes;
};

/// P_11 of the two-lead family at μ = (0, 0), common β and η2 = 0, with
/// bounds C·I(a)/4 ≤ P_11 ≤ C·I(a), C = [eη sinθ]²/(2πm), a = βη²/2m.
ThermalNoiseBounds thermal_noise_bounds_two_lead(const TwoLeadParams& p, double mass, double charge, double beta,
                                                 const QuadratureSettings& settings = {});

}  // namespace qjunction
