#pragma once

// Piecewise-linear representation of the delay feedback coefficient k(.)
// together with the exact |k| quadratures that feed the sliding-window
// budget K, the shifted cumulative integral, and the (gamma, omega')
// admissibility fit.

#include <string>
#include <utility>
#include <vector>

namespace dws {

class DelayCoefficient {
 public:
  // Breakpoints start at 0 and increase strictly; linear interpolation
  // between them, constant extrapolation after the last one.
  DelayCoefficient(std::vector<double> breakpoints, std::vector<double> values, double tau);

  static DelayCoefficient constant(double c, double tau);
  /// Two-column CSV (time, value); optional header row; times strictly increasing from 0.
  static DelayCoefficient from_csv(const std::string& path, double tau);

  double tau() const { return tau_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  double value(double t) const;

  /// Exact integral of |k| over [a, b], split at breakpoints and zero crossings.
  double abs_integral(double a, double b) const;

  /// Certified sliding-window budget: max over t in [tau, horizon] of
  /// int_{t-tau}^t |k(s)| ds, evaluated on a dense grid plus every
  /// kink-aligned candidate and every interior stationary point.
  double window_bound_K(double horizon, int grid_size = 2048) const;

  /// int_0^t |k(s+tau)| ds
  double shifted_cumulative(double t) const;

  /// Breakpoints plus zero crossings of the linear pieces, sorted.
  std::vector<double> kink_times() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double tau_;
};

struct AdmissibilityFit {
  bool feasible = false;
  double gamma = 0.0;
  double omega_prime = 0.0;
  // min over the tested times of (gamma + omega' t) - M b^2 e^{omega tau} int_0^t |k(s+tau)| ds
  double achieved_margin = 0.0;
  // The whole feasible frontier (omega' candidate, minimal gamma) for reporting.
  std::vector<std::pair<double, double>> frontier;
};

/// Fits constants gamma >= 0, omega' in [0, omega) with
///   M b^2 e^{omega tau} int_0^t |k(s+tau)| ds <= gamma + omega' t
/// on [0, horizon], preferring the smallest omega' whose gamma stays finite
/// beyond the horizon (the tail of k is constant, so the cumulative integral
/// is asymptotically linear and candidates below its slope are rejected).
AdmissibilityFit fit_gamma_omega(const DelayCoefficient& k, double M, double omega, double b,
                                 double horizon, int omega_grid_size = 512,
                                 int time_grid_size = 2048);

}  // namespace dws
