#include "dws/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "dws/energy.hpp"

namespace dws {

namespace {

long delay_steps(const Scenario& scn) {
  const double ratio = scn.k.tau() / scn.dt;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - double(steps)) > 1e-9 * ratio) {
    throw std::invalid_argument("Scenario: dt must divide tau exactly");
  }
  return steps;
}

struct Rhs {
  const Scenario& scn;

  State operator()(double t, const State& st, const Eigen::VectorXd& v_delayed) const {
    State d;
    d.u = st.v;
    d.v = -(scn.sys.lambdas().array() * st.u.array()).matrix() - scn.sys.damping() * st.v -
          scn.k.value(t) * (scn.sys.delay_op() * v_delayed) +
          scn.nl->grad_psi(scn.sys, st.u);
    return d;
  }
};

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& scn) {
  std::vector<std::string> warnings;
  const double dt_guideline = 2.8 / std::sqrt(scn.sys.lambdas().maxCoeff());
  if (scn.dt > dt_guideline) {
    warnings.push_back("dt = " + std::to_string(scn.dt) + " exceeds the RK4 stability guideline " +
                       std::to_string(dt_guideline) + " = 2.8/sqrt(max lambda)");
  }
  return warnings;
}

Eigen::VectorXd history_value(const Scenario& scn, double s) {
  switch (scn.history.kind) {
    case HistoryKind::Zero:
      return Eigen::VectorXd::Zero(scn.sys.n());
    case HistoryKind::Constant:
      return scn.v0;
    case HistoryKind::Sinusoid:
      return scn.v0 * std::cos(scn.history.freq * s);
  }
  throw std::logic_error("history_value: unknown descriptor");
}

namespace {

Eigen::VectorXd history_derivative(const Scenario& scn, double s) {
  switch (scn.history.kind) {
    case HistoryKind::Zero:
    case HistoryKind::Constant:
      return Eigen::VectorXd::Zero(scn.sys.n());
    case HistoryKind::Sinusoid:
      return -scn.history.freq * std::sin(scn.history.freq * s) * scn.v0;
  }
  throw std::logic_error("history_derivative: unknown descriptor");
}

}  // namespace

HistoryBuffer initial_history(const Scenario& scn) {
  if (scn.u0.size() != scn.sys.n() || scn.v0.size() != scn.sys.n()) {
    throw std::invalid_argument("Scenario: initial data dimension mismatch");
  }
  const long m = delay_steps(scn);
  if ((history_value(scn, 0.0) - scn.v0).norm() > 1e-10) {
    throw std::invalid_argument("Scenario: history descriptor at s=0 is incompatible with v0");
  }
  std::vector<Eigen::VectorXd> samples, derivs;
  samples.reserve(static_cast<size_t>(m) + 1);
  derivs.reserve(static_cast<size_t>(m) + 1);
  for (long i = 0; i <= m; ++i) {
    const double s = -scn.k.tau() + double(i) * scn.dt;
    samples.push_back(history_value(scn, s));
    derivs.push_back(history_derivative(scn, s));
  }
  samples.back() = scn.v0;  // exact compatibility at s = 0
  // the sample at s = 0 is only ever an interpolation endpoint from the right,
  // so store the one-sided derivative given by the equation, not the history's
  derivs.back() = Rhs{scn}(0.0, {scn.u0, scn.v0}, history_value(scn, -scn.k.tau())).v;
  return HistoryBuffer(scn.k.tau(), scn.dt, std::move(samples), std::move(derivs), 0.0);
}

State step(const Scenario& scn, const State& st, const HistoryBuffer& hist, double t) {
  if (std::abs(hist.t_head() - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw std::invalid_argument("step: history buffer does not end at the current time");
  }
  const Rhs rhs{scn};
  const double dt = scn.dt;
  const double tau = scn.k.tau();
  // delayed arguments: t - tau and t + dt - tau are grid samples; the half
  // stage falls inside the oldest buffer cell, or in the prescribed history
  // while t < tau (evaluate that analytically to avoid interpolating across
  // the kink at time zero)
  const double sh = t + 0.5 * dt - tau;
  const Eigen::VectorXd& vd0 = hist.sample(0);
  const Eigen::VectorXd vdh = sh < 0.0 ? history_value(scn, sh) : hist.value_at(sh);
  const Eigen::VectorXd& vd1 = hist.sample(1);

  const State k1 = rhs(t, st, vd0);
  const State k2 = rhs(t + 0.5 * dt, {st.u + 0.5 * dt * k1.u, st.v + 0.5 * dt * k1.v}, vdh);
  const State k3 = rhs(t + 0.5 * dt, {st.u + 0.5 * dt * k2.u, st.v + 0.5 * dt * k2.v}, vdh);
  const State k4 = rhs(t + dt, {st.u + dt * k3.u, st.v + dt * k3.v}, vd1);
  return {st.u + dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          st.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

TrajectoryRecord simulate(const Scenario& scn) {
  if (scn.t_end < 0.0) throw std::invalid_argument("Scenario: t_end must be >= 0");
  HistoryBuffer hist = initial_history(scn);
  State st{scn.u0, scn.v0};
  const long nsteps = std::lround(std::ceil(scn.t_end / scn.dt - 1e-9));

  TrajectoryRecord traj;
  const auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(st);
    traj.history_integrals.push_back(history_energy_integral(scn.sys, scn.k, hist, t));
    traj.energy.push_back(energy(scn.sys, *scn.nl, scn.k, st, hist, t));
    traj.w_norms.push_back(w_norm(scn.sys, st));
    traj.delayed_forcing_norms.push_back(
        std::abs(scn.k.value(t)) * (scn.sys.delay_op() * hist.sample(0)).norm());
  };

  record(0.0);
  for (long i = 0; i < nsteps; ++i) {
    const double t = double(i) * scn.dt;
    st = step(scn, st, hist, t);
    // derivative at the new head time t + dt; its delayed argument t + dt - tau
    // is still sample(1) of the pre-push buffer
    Eigen::VectorXd d_new = Rhs{scn}(t + scn.dt, st, hist.sample(1)).v;
    hist.push(st.v, std::move(d_new));
    record(double(i + 1) * scn.dt);
    if (traj.w_norms.back() > scn.blowup_ceiling || !std::isfinite(traj.w_norms.back())) {
      traj.status = TrajectoryRecord::Status::Diverged;
      traj.diverged_at = traj.times.back();
      break;
    }
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Scenario& scn, const TrajectoryRecord& traj) {
  const int n = scn.sys.n();
  os << "time,E,w_norm,delayed_forcing_norm";
  for (int i = 1; i <= n; ++i) os << ",u_" << i;
  for (int i = 1; i <= n; ++i) os << ",v_" << i;
  os << "\n";
  char buf[32];
  const auto put = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    os << buf;
  };
  for (size_t r = 0; r < traj.times.size(); ++r) {
    put(traj.times[r]);
    os << ',';
    put(traj.energy[r]);
    os << ',';
    put(traj.w_norms[r]);
    os << ',';
    put(traj.delayed_forcing_norms[r]);
    for (int i = 0; i < n; ++i) {
      os << ',';
      put(traj.states[r].u[i]);
    }
    for (int i = 0; i < n; ++i) {
      os << ',';
      put(traj.states[r].v[i]);
    }
    os << "\n";
  }
}

}  // namespace dws
