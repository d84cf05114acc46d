#pragma once

// Thermal reservoirs attached to the far end of each lead.
//
// Zero temperature is represented by β = +infinity (see kZeroTemperature).
// Finite β with β·max(|μ|, 1) above kZeroTemperatureThreshold is also treated
// as zero temperature for Fermi statistics, where the occupation is a step to
// double precision anyway.

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qjunction {

inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();
inline constexpr double kZeroTemperatureThreshold = 700.0;

enum class Statistics { fermi, bose };

const char* to_string(Statistics s);

class ReservoirBank {
 public:
  ReservoirBank(std::vector<double> beta, std::vector<double> mu,
                Statistics statistics = Statistics::fermi);

  int size() const { return static_cast<int>(beta_.size()); }
  Statistics statistics() const { return statistics_; }
  const std::vector<double>& beta() const { return beta_; }
  const std::vector<double>& mu() const { return mu_; }
  double beta(int i) const { return beta_[static_cast<std::size_t>(i)]; }
  double mu(int i) const { return mu_[static_cast<std::size_t>(i)]; }

  /// True for β = ∞ and for Fermi leads beyond the overflow threshold.
  bool zero_temperature(int lead) const;
  bool all_zero_temperature() const;
  /// All β_i equal (including all infinite).
  bool common_temperature() const;
  /// All (β_i, μ_i) identical.
  bool equilibrium() const;

  /// Non-fatal remarks, e.g. negative μ in a Fermi bank.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<double> beta_;
  std::vector<double> mu_;
  Statistics statistics_;
  std::vector<std::string> warnings_;
};

/// Fermi reservoirs carrying separate particle (μ) and antiparticle (μ̃) potentials.
class DiracReservoirBank {
 public:
  DiracReservoirBank(std::vector<double> beta, std::vector<double> mu, std::vector<double> mu_tilde);

  int size() const { return particles_.size(); }
  const ReservoirBank& particles() const { return particles_; }
  double beta(int i) const { return particles_.beta(i); }
  double mu(int i) const { return particles_.mu(i); }
  double mu_tilde(int i) const { return mu_tilde_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& mu_tilde() const { return mu_tilde_; }
  bool common_temperature() const { return particles_.common_temperature(); }

 private:
  ReservoirBank particles_;
  std::vector<double> mu_tilde_;
};

/// d^±_i(ω) = e^{-β(ω-μ)} / (1 ± e^{-β(ω-μ)}); the zero-temperature step is 1/2 at ω = μ.
double occupation_d(const ReservoirBank& bank, int lead, double omega);

/// c^±_i(ω) = 1 / (1 ± e^{-β(ω-μ)}).
double complement_c(const ReservoirBank& bank, int lead, double omega);

/// Particle and antiparticle distributions (f_i(k), f̃_i(k)) at energy |k|.
std::pair<double, double> dirac_occupations(const DiracReservoirBank& bank, int lead, double k);

/// Fermi function 1/(1 + e^{β(ω-μ)}) with the zero-temperature convention above.
double fermi(double beta, double mu, double omega);

}  // namespace qjunction
