#pragma once

// Run configuration for the command-line driver. The document is JSON; lead
// indices in parameter paths are 1-based (reservoirs.2.mu).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qjunction/dirac.hpp"
#include "qjunction/errors.hpp"
#include "qjunction/numerics.hpp"
#include "qjunction/reservoirs.hpp"
#include "qjunction/schrodinger.hpp"
#include "qjunction/vertex.hpp"

namespace qjunction {

enum class Dynamics { schrodinger, dirac };

const char* to_string(Dynamics d);

/// Every problem found while reading a config, not only the first.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct ReservoirSpec {
  double beta = 1.0;
  double mu = 0.0;
  double mu_tilde = 0.0;
};

struct CouplingSpec {
  enum class Kind { matrix, two_lead };
  Kind kind = Kind::matrix;
  ComplexMatrix u;
  bool critical = false;
  TwoLeadParams two_lead;
};

struct SweepAxis {
  std::string parameter;
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  bool log_spacing = false;

  std::vector<double> values() const;
};

struct SweepPlan {
  std::vector<SweepAxis> axes;
};

struct RunConfig {
  Dynamics dynamics = Dynamics::schrodinger;
  Statistics statistics = Statistics::fermi;
  double mass = 1.0;
  double charge = 1.0;
  double lambda = -1.0;
  CouplingSpec coupling;
  std::vector<ReservoirSpec> reservoirs;
  std::optional<std::vector<double>> gauge;
  QuadratureSettings quadrature;
  std::vector<std::string> observables;
  /// 1-based lead for density profiles.
  int lead = 1;
  std::vector<double> positions;
  std::optional<SweepPlan> sweep;
  bool override_bound_states = false;
  /// Compact re-serialization of the parsed document, used for the digest.
  std::string canonical;

  int leads() const { return static_cast<int>(reservoirs.size()); }
};

/// Observables the driver knows, per dynamics.
const std::vector<std::string>& known_observables(Dynamics d);

/// Strict parse: unknown keys, missing keys and cross-field mismatches are all collected into one ConfigError.
RunConfig parse_config(std::string_view text);

/// Sets a swept parameter by dotted path; throws ValidationError for unknown paths.
void apply_parameter(RunConfig& cfg, const std::string& path, double value);

/// Re-checks what a sweep may have changed (reservoir rules, two-lead family).
void revalidate(const RunConfig& cfg);

ScatteringModel make_model(const RunConfig& cfg);
ReservoirBank make_bank(const RunConfig& cfg);
SchrodingerSystem make_schrodinger(const RunConfig& cfg);
DiracSystem make_dirac(const RunConfig& cfg);

/// 64-bit FNV-1a of the canonical document, as 16 hex digits.
std::string config_digest(const RunConfig& cfg);

}  // namespace qjunction
