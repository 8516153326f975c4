#pragma once

// Flat key=value scenario files: strict parsing (unknown keys are fatal),
// every validation error collected before reporting.

#include <stdexcept>
#include <string>
#include <vector>

namespace dws {

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> errs);
  std::vector<std::string> errors;
};

enum class PresetKind { Wave, Plate, Custom };

struct ScenarioConfig {
  PresetKind preset = PresetKind::Wave;
  int n = 1;
  double a = 1.0;
  double damp_lo = 0.0, damp_hi = 0.0;    // defaults to (0, pi)
  double delay_lo = 0.0, delay_hi = 0.0;  // defaults to (0, pi)

  // custom preset only
  std::vector<double> lambdas;
  std::vector<double> damping_diag;
  std::vector<double> delay_diag;
  double b = 1.0;

  double beta = 0.0;  // 0 selects the zero nonlinearity
  double c_h = 0.0;   // 0 requests sampling calibration

  double k_constant = 0.0;
  bool has_k_constant = false;
  std::string k_csv;

  double tau = 0.0;
  double dt = 0.0;
  double t_end = 0.0;

  std::vector<double> u0;  // padded with zeros to n modes
  std::vector<double> v0;
  std::string history = "constant";  // zero | constant | sinusoid
  double history_freq = 1.0;
  double scale = 1.0;

  double ceiling = 1e8;
  double horizon = 0.0;  // 0: max(t_end, 10 tau) + tau
  double envelope_tol = 0.05;
  double energy_tol = 0.01;
  int omega_grid = 512;
  int time_grid = 2048;

  std::string out_trajectory;
  std::string out_certificate;
  std::string out_envelope;
  std::string out_sweep;

  std::string source_path;
};

/// Accepts plain numbers plus "pi", "pi/4", "0.5pi" style tokens.
double parse_angle(const std::string& text);

ScenarioConfig parse_config(const std::string& path);

}  // namespace dws
