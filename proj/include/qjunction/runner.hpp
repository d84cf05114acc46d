#pragma once

// Evaluation driver behind the command-line tool: single points, parameter
// sweeps and the property check suite, all producing delimiter-separated tables.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qjunction/config.hpp"

namespace qjunction {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNonConvergence = 3,
  kExitInvariant = 4,
};

struct Field {
  std::string name;
  double value = 0.0;
};

/// One observable evaluated at one parameter point.
struct Evaluation {
  std::string observable;
  std::string units;
  std::string method;
  bool converged = true;
  double error_estimate = 0.0;
  /// Kirchhoff residual, when the observable obeys a sum rule.
  std::optional<double> kirchhoff_residual;
  bool kirchhoff_ok = true;
  std::vector<Field> fields;
  std::vector<std::string> notes;
};

/// Density profile along one lead: one row per distance x.
struct Profile {
  std::string observable;
  int lead = 1;
  std::vector<std::string> columns;  // without the leading x
  std::vector<double> x;
  std::vector<std::vector<double>> rows;
  bool converged = true;
  double error_estimate = 0.0;
  std::vector<std::string> notes;
};

struct PointResult {
  std::vector<Evaluation> evaluations;
  std::vector<Profile> profiles;
  bool bound_state_free = true;
};

/// Evaluates every requested observable of a fully specified config.
PointResult evaluate(const RunConfig& cfg);

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// '#'-prefixed metadata followed by comma-separated tables.
struct OutputDocument {
  std::vector<std::string> metadata;
  std::vector<Table> tables;

  void write(std::ostream& out) const;
  std::string str() const;
};

struct RunReport {
  OutputDocument document;
  bool validation_failure = false;
  bool nonconverged = false;
  bool invariant_violation = false;

  int exit_code() const;
};

/// Fixed 12-significant-digit decimal formatting used for every table value.
std::string format_value(double v);

RunReport run_point(const RunConfig& cfg);
/// workers <= 0 means the available hardware parallelism.
RunReport run_sweep(const RunConfig& cfg, int workers);
RunReport run_check(const RunConfig& cfg);

}  // namespace qjunction
