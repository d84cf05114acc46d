#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "qjunction/config.hpp"
#include "qjunction/runner.hpp"

using namespace qjunction;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string output;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(QJ_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string config_path(const std::string& rel) { return std::string(QJ_CONFIG_DIR) + "/" + rel; }

std::string scratch(const std::string& name, const std::string& content) {
  const fs::path dir = fs::path(QJ_SCRATCH_DIR);
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Rows of the first table, split on commas; skips metadata and the header.
std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("qjunction:", 0) == 0) continue;  // metadata, diagnostics
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

const char* kSwap = R"({
  "dynamics": "schrodinger",
  "coupling": {"type": "matrix", "critical": true, "U": [[[0,0],[1,0]],[[1,0],[0,0]]]},
  "reservoirs": [{"beta": 1.0, "mu": 1.0}, {"beta": 1.0, "mu": 0.0}],
  "observables": ["current"]
})";

}  // namespace

TEST(Cli, PointCriticalSwap) {
  const CliRun r = run_cli("point --config " + scratch("swap.json", kSwap));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("current,J_1,0.0986942890654,"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("# bound_state_free: true"), std::string::npos);
  EXPECT_NE(r.output.find("# config_digest: fnv1a64:"), std::string::npos);
}

TEST(Cli, EqualReservoirsGiveZeroCurrent) {
  const CliRun r = run_cli("point --config " + config_path("examples/vertex_equilibrium.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  for (const auto& row : rows(r.output)) {
    if (row[0] == "current") {
      EXPECT_LE(std::abs(std::stod(row[2])), 1e-10);
      EXPECT_LE(std::stod(row[7]), 1e-10);
    }
  }
}

TEST(Cli, DensityProfileHasOneRowPerPosition) {
  const CliRun r = run_cli("point --config " + config_path("examples/friedel_profile.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("x,total,oscillating,equilibrium,non_equilibrium,converged"), std::string::npos);
  const auto table = rows(r.output);
  ASSERT_EQ(table.size(), 7u);
  // x = π/4 with 2mμ = 1 sits on the sine maximum: 2/π².
  EXPECT_NEAR(std::stod(table[2][2]), 2.0 / (M_PI * M_PI), 1e-10);
}

TEST(Cli, NonUnitaryMatrixCitesRow) {
  const CliRun r = run_cli("point --config " + scratch("bad_u.json", R"({
    "dynamics": "schrodinger",
    "coupling": {"type": "matrix", "critical": true, "U": [[[1.1,0],[0,0]],[[0,0],[1,0]]]},
    "reservoirs": [{"beta": 1.0, "mu": 1.0}, {"beta": 1.0, "mu": 0.0}],
    "observables": ["current"]
  })"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("row 1"), std::string::npos) << r.output;
}

TEST(Cli, BoseRuleAndEveryProblemReported) {
  const CliRun r = run_cli("point --config " + scratch("bose.json", R"({
    "dynamics": "schrodinger",
    "statistics": "bose",
    "colour": "blue",
    "coupling": {"type": "two_lead", "eta1": -1.0, "eta2": -0.2, "theta": 0.5},
    "reservoirs": [{"beta": 1.0, "mu": 0.0}, {"beta": 1.0, "mu": -0.5}],
    "observables": ["current", "flux"]
  })"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("colour: unknown key"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("unknown observable 'flux'"), std::string::npos) << r.output;
}

TEST(Cli, BoseZeroChemicalPotentialRejected) {
  const CliRun r = run_cli("point --config " + scratch("bose0.json", R"({
    "dynamics": "schrodinger",
    "statistics": "bose",
    "coupling": {"type": "two_lead", "eta1": -1.0, "eta2": -0.2, "theta": 0.5},
    "reservoirs": [{"beta": 1.0, "mu": 0.0}, {"beta": 1.0, "mu": -0.5}],
    "observables": ["current"]
  })"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("reservoirs.1.mu: Bose statistics requires mu < 0"), std::string::npos) << r.output;
}

TEST(Cli, MissingKeyNamed) {
  const CliRun r = run_cli("point --config " + scratch("missing.json", R"({"dynamics": "schrodinger",
    "reservoirs": [{"beta": 1.0, "mu": 1.0}], "observables": ["current"]})"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("coupling: missing required key"), std::string::npos) << r.output;
}

TEST(Cli, NonConvergenceExitCode) {
  const CliRun r = run_cli("point --tol 1e-15 --config " + scratch("tight.json", R"({
    "dynamics": "schrodinger",
    "coupling": {"type": "two_lead", "eta1": -3.0, "eta2": -0.01, "theta": 1.0},
    "reservoirs": [{"beta": 50.0, "mu": 2.0}, {"beta": 0.05, "mu": 0.1}],
    "quadrature": {"max_subdivisions": 1, "abs_tol": 1e-300},
    "observables": ["noise"]
  })"));
  EXPECT_EQ(r.status, 3) << r.output;
  EXPECT_NE(r.output.find(",false,"), std::string::npos);
}

TEST(Cli, TolFlagAndOutFile) {
  const std::string out = (fs::path(QJ_SCRATCH_DIR) / "out.csv").string();
  const CliRun r = run_cli("point --tol 1e-8 --out " + out + " --config " + scratch("swap2.json", kSwap));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(slurp(out).find("rel_tol=1e-08"), std::string::npos);
}

TEST(Cli, CheckPassesOnExamples) {
  for (const char* f : {"examples/critical_swap.json", "examples/dirac_swap.json", "examples/bose_two_lead.json"}) {
    const CliRun r = run_cli("check --config " + config_path(f));
    EXPECT_EQ(r.status, 0) << f << "\n" << r.output;
    EXPECT_EQ(r.output.find(",FAIL,"), std::string::npos) << r.output;
  }
}

TEST(Cli, SweepIsByteIdenticalAcrossRunsAndWorkers) {
  const std::string cfg = config_path("figures/current_mu_plane.json");
  const CliRun a = run_cli("sweep --workers 1 --config " + cfg);
  const CliRun b = run_cli("sweep --workers 4 --config " + cfg);
  const CliRun c = run_cli("sweep --workers 4 --config " + cfg);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(b.output, c.output);
  EXPECT_EQ(rows(a.output).size(), 625u);
}

TEST(Cli, CurrentCrossesZeroAtEqualPotentials) {
  const CliRun r = run_cli("sweep --config " + config_path("figures/current_vs_mu2.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  const auto table = rows(r.output);
  ASSERT_EQ(table.size(), 41u);
  for (const auto& row : table) {
    const double mu2 = std::stod(row[0]);
    const double j1 = std::stod(row[1]);
    if (mu2 < 1.0) EXPECT_GT(j1, 0.0) << mu2;
    if (mu2 > 1.0) EXPECT_LT(j1, 0.0) << mu2;
    if (mu2 == 1.0) EXPECT_LE(std::abs(j1), 1e-12);
  }
}

TEST(Cli, SweepPointFailuresLandInErrorColumn) {
  const CliRun r = run_cli("sweep --config " + scratch("bose_sweep.json", R"({
    "dynamics": "schrodinger",
    "statistics": "bose",
    "coupling": {"type": "two_lead", "eta1": -1.0, "eta2": -0.2, "theta": 0.5},
    "reservoirs": [{"beta": 1.0, "mu": -0.5}, {"beta": 1.0, "mu": -0.2}],
    "observables": ["current"],
    "sweep": {"axes": [{"parameter": "reservoirs.1.mu", "min": -1.0, "max": 0.5, "points": 4}]}
  })"));
  EXPECT_EQ(r.status, 2);
  const auto table = rows(r.output);
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[0].back().empty(), true);
  EXPECT_NE(table[3].back().find("Bose"), std::string::npos);
  EXPECT_EQ(table[3][1], "nan");
}

TEST(Runner, SweepRowsRoundTripThroughPoint) {
  RunConfig cfg = parse_config(slurp(config_path("figures/current_vs_eta2.json")));
  cfg.sweep->axes[0].points = 7;
  const RunReport sweep = run_sweep(cfg, 2);
  const auto table = rows(sweep.document.str());
  const std::vector<double> grid = cfg.sweep->axes[0].values();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RunConfig point = cfg;
    point.sweep.reset();
    apply_parameter(point, "coupling.eta2", grid[i]);
    const PointResult r = evaluate(point);
    EXPECT_EQ(format_value(r.evaluations[0].fields[0].value), table[i][1]);
  }
}

TEST(Runner, EtaPlaneAntisymmetryUnderRelabeling) {
  RunConfig cfg = parse_config(slurp(config_path("figures/current_eta_plane.json")));
  cfg.sweep.reset();
  for (auto [a, b] : {std::pair{-2.0, -0.4}, std::pair{-0.7, -1.9}, std::pair{-1.2, -0.15}}) {
    RunConfig x = cfg, y = cfg;
    x.coupling.two_lead.eta1 = a;
    x.coupling.two_lead.eta2 = b;
    y.coupling.two_lead.eta1 = b;
    y.coupling.two_lead.eta2 = a;
    std::swap(y.reservoirs[0], y.reservoirs[1]);
    const double jx = evaluate(x).evaluations[0].fields[0].value;
    const double jy = evaluate(y).evaluations[0].fields[0].value;
    EXPECT_NEAR(jx, -jy, 1e-12 * std::max(1.0, std::abs(jx)));
  }
}

TEST(Runner, ThermalNoiseTemperatureSweepFlattens) {
  RunConfig cfg = parse_config(slurp(config_path("figures/thermal_noise_vs_temperature.json")));
  const RunReport r = run_sweep(cfg, 0);
  EXPECT_EQ(r.exit_code(), 0);
  const auto table = rows(r.document.str());
  // value/ln(T/(η²/2m)) at the top of the range.
  std::vector<double> ratio;
  for (const auto& row : table) {
    const double t = std::stod(row[0]);
    if (t >= 50.0) ratio.push_back(std::stod(row[1]) / std::log(t / 0.5));
  }
  ASSERT_GE(ratio.size(), 4u);
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  EXPECT_LT((*hi - *lo) / *hi, 0.10);
}
