// Command-line driver: point evaluation, parameter sweeps and the property check.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qjunction/config.hpp"
#include "qjunction/runner.hpp"

using namespace qjunction;

namespace {

struct Options {
  std::string config;
  std::string out;
  int workers = 0;
  bool override_bound_states = false;
  double tol = 0.0;
};

RunConfig load(const Options& o) {
  std::ifstream in(o.config);
  if (!in) throw ConfigError({o.config + ": cannot open config file"});
  std::stringstream text;
  text << in.rdbuf();
  RunConfig cfg = parse_config(text.str());
  if (o.override_bound_states) cfg.override_bound_states = true;
  if (o.tol != 0.0) {
    cfg.quadrature.rel_tol = o.tol;
    cfg.quadrature.validate();
  }
  return cfg;
}

int emit(const RunReport& report, const Options& o) {
  if (o.out.empty() || o.out == "-") {
    report.document.write(std::cout);
    std::cout.flush();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "qjunction: cannot write " << o.out << '\n';
      return kExitValidation;
    }
    report.document.write(f);
  }
  const int code = report.exit_code();
  if (code == kExitNonConvergence) std::cerr << "qjunction: quadrature did not converge for some results\n";
  if (code == kExitInvariant) std::cerr << "qjunction: invariant check failed (see output)\n";
  if (code == kExitValidation) std::cerr << "qjunction: some sweep points were rejected (see error column)\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state transport and noise in quantum wire junctions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output file (default: standard output)");
    sub->add_option("--workers", o.workers, "sweep worker threads (default: hardware parallelism)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--override-bound-states", o.override_bound_states,
                  "evaluate densities even when the coupling has bound states");
    sub->add_option("--tol", o.tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
  };
  CLI::App* point = app.add_subcommand("point", "evaluate the requested observables at one parameter point");
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate over a 1- or 2-axis parameter grid");
  CLI::App* check = app.add_subcommand("check", "run the property suite on a configuration");
  for (CLI::App* sub : {point, sweep, check}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const RunConfig cfg = load(o);
    if (point->parsed()) return emit(run_point(cfg), o);
    if (sweep->parsed()) return emit(run_sweep(cfg, o.workers), o);
    return emit(run_check(cfg), o);
  } catch (const ValidationError& e) {
    std::cerr << "qjunction: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "qjunction: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "qjunction: numerical failure: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const InvariantError& e) {
    std::cerr << "qjunction: invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "qjunction: internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
