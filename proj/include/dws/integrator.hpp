#pragma once

// Method-of-steps integration of U' = AU - k(t) B U(t - tau) + F(U): classical
// RK4 with the delayed term read from a uniform history buffer, so that on
// each delay interval the delayed velocity acts as a known forcing.

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dws/delay_coefficient.hpp"
#include "dws/history_buffer.hpp"
#include "dws/nonlinearity.hpp"
#include "dws/spectral_system.hpp"

namespace dws {

enum class HistoryKind { Zero, Constant, Sinusoid };

/// Initial velocity history on [-tau, 0]; the modal profile is the scenario's
/// v0, so v(0) always matches the initial state.
///   Zero:      v(s) = 0            (requires v0 = 0)
///   Constant:  v(s) = v0
///   Sinusoid:  v(s) = v0 cos(freq s)
struct HistoryDescriptor {
  HistoryKind kind = HistoryKind::Constant;
  double freq = 1.0;
};

struct Scenario {
  SpectralSystem sys;
  DelayCoefficient k;
  std::shared_ptr<const Nonlinearity> nl;
  Eigen::VectorXd u0;
  Eigen::VectorXd v0;
  HistoryDescriptor history;
  double dt = 1e-3;
  double t_end = 1.0;
  double blowup_ceiling = 1e8;
};

struct TrajectoryRecord {
  enum class Status { Completed, Diverged };

  std::vector<double> times;
  std::vector<State> states;
  std::vector<double> energy;
  std::vector<double> w_norms;
  std::vector<double> delayed_forcing_norms;   // ||k(t) B U(t - tau)||_W
  std::vector<double> history_integrals;       // int_{t-tau}^t |k(s+tau)| ||B* v(s)||^2 ds
  Status status = Status::Completed;
  double diverged_at = 0.0;
};

/// dt-stability guideline violations and similar soft issues; empty when clean.
std::vector<std::string> validate_scenario(const Scenario& scn);

Eigen::VectorXd history_value(const Scenario& scn, double s);

HistoryBuffer initial_history(const Scenario& scn);

/// One RK4 step of size scn.dt from time t; the history buffer must cover
/// [t - tau, t].
State step(const Scenario& scn, const State& st, const HistoryBuffer& hist, double t);

TrajectoryRecord simulate(const Scenario& scn);

/// Columns time, E, w_norm, delayed_forcing_norm, u_1..u_n, v_1..v_n at 17
/// significant digits.
void write_trajectory_csv(std::ostream& os, const Scenario& scn, const TrajectoryRecord& traj);

}  // namespace dws
