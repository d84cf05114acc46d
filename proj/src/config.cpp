#include "qjunction/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qjunction {

using nlohmann::json;

namespace {

const char* kind_name(const json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return "boolean";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  return "object";
}

// Collects problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& path, const std::string& what) { problems.push_back(path + ": " + what); }

  bool expect_object(const json& v, const std::string& path) {
    if (v.is_object()) return true;
    fail(path, std::string("expected an object, got ") + kind_name(v));
    return false;
  }

  void strict_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
      if (!allowed.count(item.key())) fail(join(path, item.key()), "unknown key");
    }
  }

  std::optional<double> number(const json& obj, const std::string& path, const std::string& key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(join(path, key), "missing required key");
      return std::nullopt;
    }
    return as_number(*it, join(path, key));
  }

  std::optional<double> as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, std::string("expected a number, got ") + kind_name(v));
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::string> string(const json& obj, const std::string& path, const std::string& key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(join(path, key), "missing required key");
      return std::nullopt;
    }
    if (!it->is_string()) {
      fail(join(path, key), std::string("expected a string, got ") + kind_name(*it));
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  std::optional<bool> boolean(const json& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_boolean()) {
      fail(join(path, key), std::string("expected true or false, got ") + kind_name(*it));
      return std::nullopt;
    }
    return it->get<bool>();
  }

  std::optional<Complex> complex_entry(const json& v, const std::string& path) {
    if (v.is_number()) {
      const auto x = as_number(v, path);
      return x ? std::optional<Complex>(Complex(*x, 0.0)) : std::nullopt;
    }
    if (!v.is_array() || v.size() != 2) {
      fail(path, "complex entries are [re, im] pairs");
      return std::nullopt;
    }
    const auto re = as_number(v[0], path + ".re");
    const auto im = as_number(v[1], path + ".im");
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string join(const std::string& path, std::size_t index) {
    return join(path, std::to_string(index + 1));
  }
};

void read_coupling(Reader& r, const json& c, RunConfig& cfg) {
  const std::string path = "coupling";
  if (!r.expect_object(c, path)) return;
  const auto type = r.string(c, path, "type", true);
  if (!type) return;
  if (*type == "two_lead") {
    r.strict_keys(c, path, {"type", "eta1", "eta2", "theta", "phi"});
    cfg.coupling.kind = CouplingSpec::Kind::two_lead;
    auto& p = cfg.coupling.two_lead;
    if (auto v = r.number(c, path, "eta1", true)) p.eta1 = *v;
    if (auto v = r.number(c, path, "eta2", true)) p.eta2 = *v;
    if (auto v = r.number(c, path, "theta", true)) p.theta = *v;
    if (auto v = r.number(c, path, "phi", false)) p.phi = *v;
    return;
  }
  if (*type != "matrix") {
    r.fail(path + ".type", "expected \"matrix\" or \"two_lead\", got \"" + *type + "\"");
    return;
  }
  r.strict_keys(c, path, {"type", "U", "critical"});
  cfg.coupling.kind = CouplingSpec::Kind::matrix;
  if (auto v = r.boolean(c, path, "critical")) cfg.coupling.critical = *v;
  const auto it = c.find("U");
  if (it == c.end()) {
    r.fail(path + ".U", "missing required key");
    return;
  }
  if (!it->is_array() || it->empty()) {
    r.fail(path + ".U", "expected a non-empty array of rows");
    return;
  }
  const std::size_t n = it->size();
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = (*it)[i];
    const std::string rp = Reader::join(path + ".U", i);
    if (!row.is_array() || row.size() != n) {
      r.fail(rp, "row must have " + std::to_string(n) + " entries");
      ok = false;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = r.complex_entry(row[j], Reader::join(rp, j));
      if (z) {
        u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = *z;
      } else {
        ok = false;
      }
    }
  }
  if (!ok) return;
  const UnitaryMatrix checked(u);
  if (!checked.valid()) {
    try {
      checked.require_valid();
    } catch (const ValidationError& e) {
      r.fail(path + ".U", e.what());
    }
  }
  cfg.coupling.u = u;
}

void read_reservoirs(Reader& r, const json& arr, RunConfig& cfg) {
  const std::string path = "reservoirs";
  if (!arr.is_array() || arr.empty()) {
    r.fail(path, "expected a non-empty array of reservoirs");
    return;
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string rp = Reader::join(path, i);
    const json& res = arr[i];
    ReservoirSpec spec;
    if (!r.expect_object(res, rp)) {
      cfg.reservoirs.push_back(spec);
      continue;
    }
    r.strict_keys(res, rp, {"beta", "mu", "mu_tilde"});
    const auto b = res.find("beta");
    if (b == res.end()) {
      r.fail(rp + ".beta", "missing required key");
    } else if (b->is_string()) {
      if (b->get<std::string>() == "zero-temperature") {
        spec.beta = kZeroTemperature;
      } else {
        r.fail(rp + ".beta", "expected a number or \"zero-temperature\"");
      }
    } else if (auto v = r.as_number(*b, rp + ".beta")) {
      if (*v > 0.0) {
        spec.beta = *v;
      } else {
        r.fail(rp + ".beta", "inverse temperature must be > 0");
      }
    }
    if (auto v = r.number(res, rp, "mu", true)) spec.mu = *v;
    if (res.contains("mu_tilde")) {
      if (cfg.dynamics != Dynamics::dirac) {
        r.fail(rp + ".mu_tilde", "antiparticle potential only applies to dirac dynamics");
      } else if (auto v = r.number(res, rp, "mu_tilde", false)) {
        spec.mu_tilde = *v;
      }
    }
    cfg.reservoirs.push_back(spec);
  }
}

void read_quadrature(Reader& r, const json& q, QuadratureSettings& s) {
  const std::string path = "quadrature";
  if (!r.expect_object(q, path)) return;
  r.strict_keys(q, path, {"rel_tol", "abs_tol", "max_subdivisions", "tail_decay_scale"});
  if (auto v = r.number(q, path, "rel_tol", false)) s.rel_tol = *v;
  if (auto v = r.number(q, path, "abs_tol", false)) s.abs_tol = *v;
  if (auto v = r.number(q, path, "max_subdivisions", false)) {
    if (*v != std::floor(*v) || *v < 1 || *v > 1e6) {
      r.fail(path + ".max_subdivisions", "expected an integer in [1, 1e6]");
    } else {
      s.max_subdivisions = static_cast<int>(*v);
    }
  }
  if (auto v = r.number(q, path, "tail_decay_scale", false)) s.tail_decay_scale = *v;
  try {
    s.validate();
  } catch (const ValidationError& e) {
    r.fail(path, e.what());
  }
}

void read_sweep(Reader& r, const json& sw, RunConfig& cfg) {
  const std::string path = "sweep";
  if (!r.expect_object(sw, path)) return;
  r.strict_keys(sw, path, {"axes"});
  const auto it = sw.find("axes");
  if (it == sw.end() || !it->is_array() || it->empty() || it->size() > 2) {
    r.fail(path + ".axes", "expected 1 or 2 axes");
    return;
  }
  SweepPlan plan;
  for (std::size_t a = 0; a < it->size(); ++a) {
    const std::string ap = Reader::join(path + ".axes", a);
    const json& ax = (*it)[a];
    if (!r.expect_object(ax, ap)) continue;
    r.strict_keys(ax, ap, {"parameter", "min", "max", "points", "spacing"});
    SweepAxis axis;
    if (auto v = r.string(ax, ap, "parameter", true)) axis.parameter = *v;
    if (auto v = r.number(ax, ap, "min", true)) axis.min = *v;
    if (auto v = r.number(ax, ap, "max", true)) axis.max = *v;
    if (auto v = r.number(ax, ap, "points", true)) {
      if (*v != std::floor(*v) || *v < 2 || *v > 1e6) {
        r.fail(ap + ".points", "expected an integer >= 2");
      } else {
        axis.points = static_cast<int>(*v);
      }
    }
    if (auto v = r.string(ax, ap, "spacing", false)) {
      if (*v == "log") {
        axis.log_spacing = true;
      } else if (*v != "linear") {
        r.fail(ap + ".spacing", "expected \"linear\" or \"log\"");
      }
    }
    if (!(axis.min < axis.max)) r.fail(ap, "min must be < max");
    if (axis.log_spacing && !(axis.min > 0.0)) r.fail(ap, "log spacing needs min > 0");
    plan.axes.push_back(axis);
  }
  if (plan.axes.size() == 2 && plan.axes[0].parameter == plan.axes[1].parameter) {
    r.fail(path + ".axes", "the two axes sweep the same parameter");
  }
  cfg.sweep = plan;
}

void cross_checks(Reader& r, RunConfig& cfg) {
  const int n = cfg.leads();
  if (n == 0) return;
  if (cfg.coupling.kind == CouplingSpec::Kind::matrix && cfg.coupling.u.rows() != 0 && cfg.coupling.u.rows() != n) {
    r.fail("coupling.U", "has " + std::to_string(cfg.coupling.u.rows()) + " leads but reservoirs lists " +
                             std::to_string(n));
  }
  if (cfg.coupling.kind == CouplingSpec::Kind::two_lead) {
    if (n != 2) r.fail("reservoirs", "the two-lead family needs exactly 2 reservoirs");
    if (cfg.dynamics == Dynamics::dirac) r.fail("coupling.type", "dirac dynamics needs an explicit matrix U");
  }
  if (cfg.dynamics == Dynamics::dirac && cfg.coupling.kind == CouplingSpec::Kind::matrix && !cfg.coupling.critical) {
    // The Dirac boundary matrix is always scale invariant.
    cfg.coupling.critical = true;
  }
  if (cfg.gauge && static_cast<int>(cfg.gauge->size()) != n) {
    r.fail("gauge", "has " + std::to_string(cfg.gauge->size()) + " phases but reservoirs lists " + std::to_string(n));
  }
  if (cfg.lead < 1 || cfg.lead > n) r.fail("lead", "must be between 1 and " + std::to_string(n));
  for (std::size_t i = 0; i < cfg.reservoirs.size(); ++i) {
    const ReservoirSpec& s = cfg.reservoirs[i];
    const std::string rp = Reader::join("reservoirs", i);
    if (cfg.statistics == Statistics::bose) {
      if (!(s.mu < 0.0)) r.fail(rp + ".mu", "Bose statistics requires mu < 0 (occupancy is not integrable at mu >= 0)");
      if (std::isinf(s.beta)) r.fail(rp + ".beta", "zero temperature is not supported for Bose statistics");
    }
  }
  if (cfg.sweep) {
    for (std::size_t a = 0; a < cfg.sweep->axes.size(); ++a) {
      RunConfig probe = cfg;
      try {
        apply_parameter(probe, cfg.sweep->axes[a].parameter, cfg.sweep->axes[a].min);
      } catch (const ValidationError& e) {
        r.fail(Reader::join("sweep.axes", a) + ".parameter", e.what());
      }
    }
  }
}

bool parse_index(const std::string& s, int n, int& out) {
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return false;
  }
  out = std::stoi(s);
  return out >= 1 && out <= n;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

void set_reservoir(ReservoirSpec& s, const std::string& field, double value, Dynamics d, const std::string& path) {
  if (field == "beta") {
    s.beta = value;
  } else if (field == "T") {
    s.beta = 1.0 / value;
  } else if (field == "mu") {
    s.mu = value;
  } else if (field == "mu_tilde" && d == Dynamics::dirac) {
    s.mu_tilde = value;
  } else {
    throw ValidationError("unknown parameter path '" + path + "'");
  }
}

}  // namespace

const char* to_string(Dynamics d) { return d == Dynamics::schrodinger ? "schrodinger" : "dirac"; }

ConfigError::ConfigError(std::vector<std::string> problems)
    : ValidationError([&] {
        std::string msg = "invalid config (" + std::to_string(problems.size()) + " problem" +
                          (problems.size() == 1 ? "" : "s") + ")";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    if (log_spacing) {
      out[static_cast<std::size_t>(i)] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    } else {
      out[static_cast<std::size_t>(i)] = min + t * (max - min);
    }
  }
  out.front() = min;
  out.back() = max;
  return out;
}

const std::vector<std::string>& known_observables(Dynamics d) {
  static const std::vector<std::string> schrodinger = {
      "current",      "current_limits", "conductance",      "heat_current",   "noise",
      "shot_noise",   "johnson_nyquist", "stefan_boltzmann", "charge_density", "energy_density",
      "thermal_noise"};
  static const std::vector<std::string> dirac = {"current", "current_limits", "conductance",
                                                 "heat_current", "densities", "noise"};
  return d == Dynamics::schrodinger ? schrodinger : dirac;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  Reader r;
  RunConfig cfg;
  if (!r.expect_object(doc, "config")) throw ConfigError(r.problems);
  r.strict_keys(doc, "", {"dynamics", "statistics", "m", "e", "lambda", "coupling", "reservoirs", "gauge",
                          "quadrature", "observables", "lead", "positions", "sweep", "override_bound_states"});

  if (auto d = r.string(doc, "", "dynamics", true)) {
    if (*d == "schrodinger") {
      cfg.dynamics = Dynamics::schrodinger;
    } else if (*d == "dirac") {
      cfg.dynamics = Dynamics::dirac;
    } else {
      r.fail("dynamics", "expected \"schrodinger\" or \"dirac\", got \"" + *d + "\"");
    }
  }
  if (auto s = r.string(doc, "", "statistics", false)) {
    if (*s == "fermi") {
      cfg.statistics = Statistics::fermi;
    } else if (*s == "bose" && cfg.dynamics == Dynamics::schrodinger) {
      cfg.statistics = Statistics::bose;
    } else if (*s == "bose") {
      r.fail("statistics", "dirac dynamics is fermionic");
    } else {
      r.fail("statistics", "expected \"fermi\" or \"bose\", got \"" + *s + "\"");
    }
  }
  if (auto v = r.number(doc, "", "m", false)) {
    if (cfg.dynamics == Dynamics::dirac) {
      r.fail("m", "the massless dirac junction has no mass parameter");
    } else if (!(*v > 0.0)) {
      r.fail("m", "mass must be > 0");
    } else {
      cfg.mass = *v;
    }
  }
  if (auto v = r.number(doc, "", "e", false)) cfg.charge = *v;
  if (auto v = r.number(doc, "", "lambda", false)) {
    if (*v == 0.0) {
      r.fail("lambda", "scale must be nonzero");
    } else {
      cfg.lambda = *v;
    }
  }
  if (doc.contains("reservoirs")) {
    read_reservoirs(r, doc["reservoirs"], cfg);
  } else {
    r.fail("reservoirs", "missing required key");
  }
  if (doc.contains("coupling")) {
    read_coupling(r, doc["coupling"], cfg);
  } else {
    r.fail("coupling", "missing required key");
  }
  if (doc.contains("gauge")) {
    const json& g = doc["gauge"];
    if (!g.is_array()) {
      r.fail("gauge", "expected an array of phases");
    } else {
      std::vector<double> phases;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (auto v = r.as_number(g[i], Reader::join("gauge", i))) phases.push_back(*v);
      }
      cfg.gauge = phases;
    }
  }
  if (doc.contains("quadrature")) read_quadrature(r, doc["quadrature"], cfg.quadrature);
  const auto obs = doc.find("observables");
  if (obs == doc.end()) {
    r.fail("observables", "missing required key");
  } else if (!obs->is_array() || obs->empty()) {
    r.fail("observables", "expected a non-empty array of names");
  } else {
    const auto& known = known_observables(cfg.dynamics);
    for (std::size_t i = 0; i < obs->size(); ++i) {
      const json& o = (*obs)[i];
      const std::string op = Reader::join("observables", i);
      if (!o.is_string()) {
        r.fail(op, "expected a string");
        continue;
      }
      const std::string name = o.get<std::string>();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        r.fail(op, "unknown observable '" + name + "' for " + to_string(cfg.dynamics) + " dynamics");
      } else if (std::find(cfg.observables.begin(), cfg.observables.end(), name) != cfg.observables.end()) {
        r.fail(op, "observable '" + name + "' listed twice");
      } else {
        cfg.observables.push_back(name);
      }
    }
  }
  if (auto v = r.number(doc, "", "lead", false)) {
    if (*v != std::floor(*v)) {
      r.fail("lead", "expected an integer");
    } else {
      cfg.lead = static_cast<int>(*v);
    }
  }
  if (doc.contains("positions")) {
    const json& p = doc["positions"];
    if (!p.is_array() || p.empty()) {
      r.fail("positions", "expected a non-empty array of distances");
    } else {
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (auto v = r.as_number(p[i], Reader::join("positions", i))) {
          if (*v > 0.0) {
            cfg.positions.push_back(*v);
          } else {
            r.fail(Reader::join("positions", i), "distance from the vertex must be > 0");
          }
        }
      }
    }
  }
  const bool wants_profile =
      std::find_if(cfg.observables.begin(), cfg.observables.end(), [](const std::string& o) {
        return o == "charge_density" || o == "energy_density";
      }) != cfg.observables.end();
  if (wants_profile && !doc.contains("positions")) r.fail("positions", "density profiles need a list of distances");
  if (auto v = r.boolean(doc, "", "override_bound_states")) cfg.override_bound_states = *v;
  if (doc.contains("sweep")) read_sweep(r, doc["sweep"], cfg);

  if (r.problems.empty()) cross_checks(r, cfg);
  if (!r.problems.empty()) throw ConfigError(r.problems);
  cfg.canonical = doc.dump();
  return cfg;
}

void apply_parameter(RunConfig& cfg, const std::string& path, double value) {
  if (!std::isfinite(value)) throw ValidationError("parameter '" + path + "' must be finite");
  const auto parts = split_path(path);
  const auto unknown = [&] { return ValidationError("unknown parameter path '" + path + "'"); };
  if (parts.size() == 1) {
    if (parts[0] == "m" && cfg.dynamics == Dynamics::schrodinger) {
      cfg.mass = value;
    } else if (parts[0] == "e") {
      cfg.charge = value;
    } else if (parts[0] == "lambda" && cfg.coupling.kind == CouplingSpec::Kind::matrix && !cfg.coupling.critical) {
      cfg.lambda = value;
    } else {
      throw unknown();
    }
    return;
  }
  if (parts.size() == 2 && parts[0] == "coupling") {
    if (cfg.coupling.kind != CouplingSpec::Kind::two_lead) {
      throw ValidationError("parameter '" + path + "': only the two-lead family (eta1, eta2, theta, phi) can be swept");
    }
    auto& p = cfg.coupling.two_lead;
    if (parts[1] == "eta1") {
      p.eta1 = value;
    } else if (parts[1] == "eta2") {
      p.eta2 = value;
    } else if (parts[1] == "theta") {
      p.theta = value;
    } else if (parts[1] == "phi") {
      p.phi = value;
    } else {
      throw unknown();
    }
    return;
  }
  if (parts.size() == 3 && parts[0] == "reservoirs") {
    if (parts[1] == "all") {
      for (auto& s : cfg.reservoirs) set_reservoir(s, parts[2], value, cfg.dynamics, path);
      return;
    }
    int index = 0;
    if (!parse_index(parts[1], cfg.leads(), index)) {
      throw ValidationError("parameter '" + path + "': lead index must be 1.." + std::to_string(cfg.leads()));
    }
    set_reservoir(cfg.reservoirs[static_cast<std::size_t>(index - 1)], parts[2], value, cfg.dynamics, path);
    return;
  }
  if (parts.size() == 2 && parts[0] == "gauge" && cfg.gauge) {
    int index = 0;
    if (!parse_index(parts[1], cfg.leads(), index)) throw unknown();
    (*cfg.gauge)[static_cast<std::size_t>(index - 1)] = value;
    return;
  }
  throw unknown();
}

void revalidate(const RunConfig& cfg) {
  if (cfg.dynamics == Dynamics::schrodinger && !(cfg.mass > 0.0)) throw ValidationError("m: mass must be > 0");
  if (cfg.coupling.kind == CouplingSpec::Kind::two_lead) cfg.coupling.two_lead.validate();
  if (cfg.dynamics == Dynamics::dirac) {
    make_dirac(cfg);
  } else {
    make_bank(cfg);
  }
}

ScatteringModel make_model(const RunConfig& cfg) {
  std::optional<GaugePhases> gauge;
  if (cfg.gauge) gauge = GaugePhases{*cfg.gauge};
  if (cfg.coupling.kind == CouplingSpec::Kind::two_lead) {
    cfg.coupling.two_lead.validate();
    return ScatteringModel(cfg.coupling.two_lead, gauge, cfg.charge);
  }
  UnitaryMatrix u = UnitaryMatrix::checked(cfg.coupling.u);
  if (cfg.coupling.critical) return ScatteringModel(CriticalCoupling{std::move(u)}, gauge, cfg.charge);
  return ScatteringModel(VertexCoupling(std::move(u), cfg.lambda), gauge, cfg.charge);
}

ReservoirBank make_bank(const RunConfig& cfg) {
  std::vector<double> beta, mu;
  for (const auto& s : cfg.reservoirs) {
    beta.push_back(s.beta);
    mu.push_back(s.mu);
  }
  return ReservoirBank(std::move(beta), std::move(mu), cfg.statistics);
}

SchrodingerSystem make_schrodinger(const RunConfig& cfg) {
  return SchrodingerSystem(cfg.mass, cfg.charge, make_model(cfg), make_bank(cfg), cfg.override_bound_states);
}

DiracSystem make_dirac(const RunConfig& cfg) {
  std::vector<double> beta, mu, mut;
  for (const auto& s : cfg.reservoirs) {
    beta.push_back(s.beta);
    mu.push_back(s.mu);
    mut.push_back(s.mu_tilde);
  }
  std::optional<GaugePhases> gauge;
  if (cfg.gauge) gauge = GaugePhases{*cfg.gauge};
  return DiracSystem(cfg.charge, UnitaryMatrix::checked(cfg.coupling.u),
                     DiracReservoirBank(std::move(beta), std::move(mu), std::move(mut)), gauge);
}

std::string config_digest(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : cfg.canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qjunction
