#pragma once

// Wiring of the full pipeline behind the CLI subcommands:
// estimate_decay -> fit_gamma_omega -> smallness_program -> simulate -> checks.

#include <iosfwd>
#include <string>
#include <vector>

#include "dws/energy.hpp"
#include "dws/integrator.hpp"
#include "dws/scenario_config.hpp"
#include "dws/semigroup.hpp"

namespace dws {

// exit-code contract: 0 all enabled checks pass, 1 input error, 2 check failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCheckFailure = 2;

struct CertifyResult {
  DecayEstimate decay;
  AdmissibilityFit fit;
  StabilityCertificate cert;
};

/// Builds the spectral system, k and nonlinearity from a config.
SpectralSystem build_system(const ScenarioConfig& cfg);
DelayCoefficient build_k(const ScenarioConfig& cfg);
Scenario build_scenario(const ScenarioConfig& cfg);

double effective_horizon(const ScenarioConfig& cfg);

/// Certificate pipeline without simulation. Throws ConfigError /
/// std::runtime_error on input problems.
CertifyResult certify(const ScenarioConfig& cfg);

/// Well-posedness load ||U0||_W^2 + int_0^tau |k(s)| ||f(s-tau)||_W^2 ds of
/// the scenario's initial data.
double initial_data_load(const Scenario& scn);

int run_command(const ScenarioConfig& cfg, std::ostream& log);
int certify_command(const ScenarioConfig& cfg, std::ostream& log);
int sweep_command(const ScenarioConfig& cfg, const std::vector<double>& scales, std::ostream& log);

/// Atomic text file write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace dws
