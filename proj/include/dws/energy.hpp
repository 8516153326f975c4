#pragma once

// Energy functional, Gronwall growth factor, trajectory checks, decay
// envelopes, and the smallness program that assembles the full stability
// certificate.

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dws/delay_coefficient.hpp"
#include "dws/history_buffer.hpp"
#include "dws/integrator.hpp"
#include "dws/nonlinearity.hpp"
#include "dws/spectral_system.hpp"

namespace dws {

/// int_{t-tau}^t |k(s+tau)| <BB* v(s), v(s)> ds, trapezoid on the buffer grid.
double history_energy_integral(const SpectralSystem& sys, const DelayCoefficient& k,
                               const HistoryBuffer& hist, double t);

/// E(t) = 1/2 ||v||^2 + 1/2 ||A^{1/2}u||^2 - psi(u) + 1/2 * history integral.
double energy(const SpectralSystem& sys, const Nonlinearity& nl, const DelayCoefficient& k,
              const State& st, const HistoryBuffer& hist, double t);

/// Gronwall factor exp(2 b^2 int_0^t (|k(s)| + |k(s+tau)|) ds).
double cbar(const DelayCoefficient& k, double b, double t);

struct CheckReport {
  bool passed = true;
  double worst_margin = 0.0;          // min over time of (bound - value); negative on failure
  double first_violation_time = -1.0;
  bool hypothesis_ok = true;          // E(t) >= 1/4 ||v||^2 precondition
  double hypothesis_violation_time = -1.0;
};

/// E(t) <= cbar(t) E(0) (1 + tol) pointwise, after checking the hypothesis
/// E(t) >= 1/4 ||v(t)||^2.
CheckReport check_energy_growth(const TrajectoryRecord& traj, const DelayCoefficient& k, double b,
                                double tol = 0.01);

/// E(t) > 1/4||v||^2 + 1/4||A^{1/2}u||^2 + 1/4 * history integral, and
/// E(t) > 1/4 ||U||_W^2; a failure flags departure from the small-data regime.
CheckReport check_lower_bound(const SpectralSystem& sys, const TrajectoryRecord& traj);

struct CheckResult {
  std::string name;
  bool passed = false;
  double margin = 0.0;
};

struct StabilityCertificate {
  double M = 1.0;
  double omega = 0.0;
  double b = 0.0;
  double K = 0.0;
  double gamma = 0.0;
  double omega_prime = 0.0;
  double tau = 0.0;
  int N = 1;
  double C_N = 0.0;
  double cbar_Ntau = 1.0;
  double rho = 0.0;                 // certified radius (conservative reading)
  double rho_sqrt_reading = 0.0;    // alternative with cbar^{1/2}(N tau)
  bool rho_unconstrained = false;   // zero nonlinearity: no h constraint
  double C_rho = 0.0;
  double L_C_rho = 0.0;
  double decay_rate = 0.0;          // (omega - omega') / 2
  bool valid = false;
  std::vector<CheckResult> checks;
};

/// Fixes the smallest N with C_N <= 1, derives rho from h^{-1}(1/2) and the
/// Gronwall factor at N tau, then halves rho until L(C_rho) < (omega-omega')/(2M).
StabilityCertificate smallness_program(double M, double omega, double gamma, double omega_prime,
                                       double K, double b, double tau, const DelayCoefficient& k,
                                       const Nonlinearity& nl);

struct DecayEnvelope {
  double prefactor = 0.0;   // M e^gamma (||U0|| + int_0^tau e^{omega s}|k(s)| ||f(s-tau)|| ds)
  double rate_full = 0.0;   // omega - omega' - M L(C_rho)
  double rate_half = 0.0;   // (omega - omega') / 2

  double eval_full(double t) const;
  double eval_half(double t) const;
};

/// f_wnorm(s) = ||f(s - tau)||_W for s in [0, tau]; the prefactor integral is
/// Gauss-Legendre per piece between kinks of k.
DecayEnvelope decay_envelope(const StabilityCertificate& cert, double u0_wnorm,
                             const DelayCoefficient& k,
                             const std::function<double(double)>& f_wnorm);

/// Flat `name = value` report, margins included, 17 significant digits.
void write_certificate_report(std::ostream& os, const StabilityCertificate& cert);

}  // namespace dws
