#include "dws/scenario_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace dws {

namespace {

std::string join(const std::vector<std::string>& errs) {
  std::string out = "scenario config invalid:";
  for (const auto& e : errs) out += "\n  " + e;
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(trim(item)));
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error(join(errs)), errors(std::move(errs)) {}

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return std::stod(s);
  double coeff = 1.0;
  const std::string before = trim(s.substr(0, pos));
  if (!before.empty()) coeff = std::stod(before);
  double denom = 1.0;
  std::string after = trim(s.substr(pos + 2));
  if (!after.empty()) {
    if (after.front() != '/') throw std::invalid_argument("bad angle token: " + text);
    denom = std::stod(trim(after.substr(1)));
  }
  return coeff * std::numbers::pi / denom;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});

  std::map<std::string, std::pair<std::string, size_t>> kv;  // key -> (value, line)
  std::vector<std::string> errors;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(path + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key)) {
      errors.push_back(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
      continue;
    }
    kv[key] = {trim(line.substr(eq + 1)), lineno};
  }

  ScenarioConfig cfg;
  cfg.source_path = path;
  cfg.damp_hi = std::numbers::pi;
  cfg.delay_hi = std::numbers::pi;

  const auto fail = [&](const std::string& key, const std::string& why) {
    size_t ln = kv.count(key) ? kv[key].second : 0;
    errors.push_back(path + ":" + std::to_string(ln) + ": " + key + ": " + why);
  };
  const auto take = [&](const std::string& key, auto&& apply) {
    const auto it = kv.find(key);
    if (it == kv.end()) return false;
    try {
      apply(it->second.first);
    } catch (const std::exception& e) {
      fail(key, std::string("cannot parse '") + it->second.first + "' (" + e.what() + ")");
    }
    kv.erase(it);
    return true;
  };

  take("preset", [&](const std::string& v) {
    if (v == "wave") cfg.preset = PresetKind::Wave;
    else if (v == "plate") cfg.preset = PresetKind::Plate;
    else if (v == "custom") cfg.preset = PresetKind::Custom;
    else throw std::invalid_argument("must be wave, plate or custom");
  });
  take("n", [&](const std::string& v) { cfg.n = std::stoi(v); });
  take("a", [&](const std::string& v) { cfg.a = std::stod(v); });
  take("damp_lo", [&](const std::string& v) { cfg.damp_lo = parse_angle(v); });
  take("damp_hi", [&](const std::string& v) { cfg.damp_hi = parse_angle(v); });
  take("delay_lo", [&](const std::string& v) { cfg.delay_lo = parse_angle(v); });
  take("delay_hi", [&](const std::string& v) { cfg.delay_hi = parse_angle(v); });
  take("lambdas", [&](const std::string& v) { cfg.lambdas = parse_list(v); });
  take("damping_diag", [&](const std::string& v) { cfg.damping_diag = parse_list(v); });
  take("delay_diag", [&](const std::string& v) { cfg.delay_diag = parse_list(v); });
  take("b", [&](const std::string& v) { cfg.b = std::stod(v); });
  take("beta", [&](const std::string& v) { cfg.beta = std::stod(v); });
  take("c_h", [&](const std::string& v) { cfg.c_h = std::stod(v); });
  cfg.has_k_constant = take("k_constant", [&](const std::string& v) { cfg.k_constant = std::stod(v); });
  take("k_csv", [&](const std::string& v) { cfg.k_csv = v; });
  take("tau", [&](const std::string& v) { cfg.tau = std::stod(v); });
  take("dt", [&](const std::string& v) { cfg.dt = std::stod(v); });
  take("t_end", [&](const std::string& v) { cfg.t_end = std::stod(v); });
  take("u0", [&](const std::string& v) { cfg.u0 = parse_list(v); });
  take("v0", [&](const std::string& v) { cfg.v0 = parse_list(v); });
  take("history", [&](const std::string& v) {
    if (v != "zero" && v != "constant" && v != "sinusoid") {
      throw std::invalid_argument("must be zero, constant or sinusoid");
    }
    cfg.history = v;
  });
  take("history_freq", [&](const std::string& v) { cfg.history_freq = std::stod(v); });
  take("scale", [&](const std::string& v) { cfg.scale = std::stod(v); });
  take("ceiling", [&](const std::string& v) { cfg.ceiling = std::stod(v); });
  take("horizon", [&](const std::string& v) { cfg.horizon = std::stod(v); });
  take("envelope_tol", [&](const std::string& v) { cfg.envelope_tol = std::stod(v); });
  take("energy_tol", [&](const std::string& v) { cfg.energy_tol = std::stod(v); });
  take("omega_grid", [&](const std::string& v) { cfg.omega_grid = std::stoi(v); });
  take("time_grid", [&](const std::string& v) { cfg.time_grid = std::stoi(v); });
  take("out_trajectory", [&](const std::string& v) { cfg.out_trajectory = v; });
  take("out_certificate", [&](const std::string& v) { cfg.out_certificate = v; });
  take("out_envelope", [&](const std::string& v) { cfg.out_envelope = v; });
  take("out_sweep", [&](const std::string& v) { cfg.out_sweep = v; });

  for (const auto& [key, val] : kv) {
    errors.push_back(path + ":" + std::to_string(val.second) + ": unknown key '" + key + "'");
  }

  // cross-field validation, collecting every problem
  if (cfg.n < 1) fail("n", "mode count must be >= 1");
  if (cfg.preset != PresetKind::Custom && !(cfg.a > 0.0)) fail("a", "damping amplitude must be positive");
  if (cfg.preset == PresetKind::Custom && cfg.lambdas.empty()) fail("lambdas", "custom preset requires lambdas");
  if (!(cfg.tau > 0.0)) fail("tau", "delay must be positive");
  if (!(cfg.dt > 0.0)) fail("dt", "step size must be positive");
  if (cfg.tau > 0.0 && cfg.dt > 0.0) {
    const double ratio = cfg.tau / cfg.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
      fail("dt", "tau/dt must be a positive integer (tau = " + std::to_string(cfg.tau) +
                     ", dt = " + std::to_string(cfg.dt) + ")");
    }
  }
  if (cfg.t_end < 0.0) fail("t_end", "must be >= 0");
  if (cfg.beta < 0.0) fail("beta", "must be >= 0 (0 selects the zero nonlinearity)");
  if (cfg.has_k_constant && !cfg.k_csv.empty()) fail("k_constant", "give either k_constant or k_csv, not both");
  if (!cfg.has_k_constant && cfg.k_csv.empty()) fail("k_constant", "one of k_constant or k_csv is required");
  if (cfg.history == "zero") {
    for (double v : cfg.v0) {
      if (v != 0.0) {
        fail("history", "zero history requires v0 = 0");
        break;
      }
    }
  }
  if (!(cfg.scale >= 0.0)) fail("scale", "must be >= 0");
  if ((int)cfg.u0.size() > cfg.n) fail("u0", "more entries than modes");
  if ((int)cfg.v0.size() > cfg.n) fail("v0", "more entries than modes");

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

}  // namespace dws
