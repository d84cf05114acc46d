#include "qjunction/reservoirs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qjunction/errors.hpp"

namespace qjunction {

namespace {

double step(double mu, double omega) {
  if (omega < mu) return 1.0;
  if (omega > mu) return 0.0;
  return 0.5;
}

void check_lead(int lead, int n) {
  if (lead < 0 || lead >= n) {
    std::ostringstream msg;
    msg << "lead index " << lead << " out of range for " << n << " leads";
    throw DomainError(msg.str());
  }
}

}  // namespace

const char* to_string(Statistics s) { return s == Statistics::fermi ? "fermi" : "bose"; }

ReservoirBank::ReservoirBank(std::vector<double> beta, std::vector<double> mu, Statistics statistics)
    : beta_(std::move(beta)), mu_(std::move(mu)), statistics_(statistics) {
  if (beta_.empty()) throw ValidationError("reservoir bank needs at least one lead");
  if (beta_.size() != mu_.size()) {
    throw ValidationError("reservoir bank: beta and mu have different lengths");
  }
  for (std::size_t i = 0; i < beta_.size(); ++i) {
    std::ostringstream where;
    where << "reservoir " << i + 1 << ": ";
    if (!(beta_[i] > 0.0)) throw ValidationError(where.str() + "inverse temperature must be > 0");
    if (!std::isfinite(mu_[i])) throw ValidationError(where.str() + "chemical potential must be finite");
    if (statistics_ == Statistics::bose) {
      if (!(mu_[i] < 0.0)) {
        throw ValidationError(where.str() +
                              "Bose statistics requires mu < 0 (occupancy is not integrable at mu >= 0)");
      }
      if (std::isinf(beta_[i])) {
        throw ValidationError(where.str() + "zero temperature is not supported for Bose statistics");
      }
    } else if (mu_[i] < 0.0) {
      warnings_.push_back(where.str() + "negative chemical potential in a Fermi bank");
    }
  }
}

bool ReservoirBank::zero_temperature(int lead) const {
  check_lead(lead, size());
  const double b = beta(lead);
  if (std::isinf(b)) return true;
  if (statistics_ == Statistics::bose) return false;
  return b * std::max(std::abs(mu(lead)), 1.0) > kZeroTemperatureThreshold;
}

bool ReservoirBank::all_zero_temperature() const {
  for (int i = 0; i < size(); ++i) {
    if (!zero_temperature(i)) return false;
  }
  return true;
}

bool ReservoirBank::common_temperature() const {
  return std::all_of(beta_.begin(), beta_.end(), [&](double b) { return b == beta_.front(); });
}

bool ReservoirBank::equilibrium() const {
  return common_temperature() &&
         std::all_of(mu_.begin(), mu_.end(), [&](double m) { return m == mu_.front(); });
}

DiracReservoirBank::DiracReservoirBank(std::vector<double> beta, std::vector<double> mu,
                                       std::vector<double> mu_tilde)
    : particles_(std::move(beta), std::move(mu), Statistics::fermi), mu_tilde_(std::move(mu_tilde)) {
  if (mu_tilde_.size() != static_cast<std::size_t>(particles_.size())) {
    throw ValidationError("reservoir bank: mu_tilde has a different length than beta");
  }
  for (std::size_t i = 0; i < mu_tilde_.size(); ++i) {
    if (!std::isfinite(mu_tilde_[i])) {
      std::ostringstream msg;
      msg << "reservoir " << i + 1 << ": antiparticle chemical potential must be finite";
      throw ValidationError(msg.str());
    }
  }
}

double fermi(double beta, double mu, double omega) {
  if (std::isinf(beta)) return step(mu, omega);
  const double x = beta * (omega - mu);
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double occupation_d(const ReservoirBank& bank, int lead, double omega) {
  check_lead(lead, bank.size());
  if (omega < 0.0) throw DomainError("occupation requested at negative energy");
  if (bank.statistics() == Statistics::bose) {
    return 1.0 / std::expm1(bank.beta(lead) * (omega - bank.mu(lead)));
  }
  if (bank.zero_temperature(lead)) return step(bank.mu(lead), omega);
  return fermi(bank.beta(lead), bank.mu(lead), omega);
}

double complement_c(const ReservoirBank& bank, int lead, double omega) {
  check_lead(lead, bank.size());
  if (omega < 0.0) throw DomainError("occupation requested at negative energy");
  if (bank.statistics() == Statistics::bose) {
    return -1.0 / std::expm1(-bank.beta(lead) * (omega - bank.mu(lead)));
  }
  if (bank.zero_temperature(lead)) return 1.0 - step(bank.mu(lead), omega);
  const double x = bank.beta(lead) * (omega - bank.mu(lead));
  if (x > 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::pair<double, double> dirac_occupations(const DiracReservoirBank& bank, int lead, double k) {
  check_lead(lead, bank.size());
  const double omega = std::abs(k);
  const double b = bank.beta(lead);
  const double scale = std::max({std::abs(bank.mu(lead)), std::abs(bank.mu_tilde(lead)), 1.0});
  const double beta = b * scale > kZeroTemperatureThreshold ? kZeroTemperature : b;
  return {fermi(beta, bank.mu(lead), omega), fermi(beta, -bank.mu_tilde(lead), omega)};
}

}  // namespace qjunction
