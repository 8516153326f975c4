#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dws {

/// Uniform ring buffer of velocity vectors covering [t_head - tau, t_head],
/// with tau an exact multiple of dt. Each sample carries the time derivative
/// at its grid point; off-grid queries use the cubic Hermite interpolant of
/// the containing cell, so stencils never straddle a cell boundary (where the
/// solution may lose smoothness at multiples of tau).
class HistoryBuffer {
 public:
  HistoryBuffer(double tau, double dt, std::vector<Eigen::VectorXd> samples,
                std::vector<Eigen::VectorXd> derivs, double t_head);

  double tau() const { return tau_; }
  double dt() const { return dt_; }
  double t_head() const { return t_head_; }
  int size() const { return static_cast<int>(samples_.size()); }

  /// sample i sits at time t_head - tau + i * dt
  const Eigen::VectorXd& sample(int i) const { return samples_[static_cast<size_t>(i)]; }
  const Eigen::VectorXd& deriv(int i) const { return derivs_[static_cast<size_t>(i)]; }

  Eigen::VectorXd value_at(double s) const;

  /// Appends the sample and derivative at t_head + dt and drops the tail.
  void push(Eigen::VectorXd v, Eigen::VectorXd d);

 private:
  double tau_;
  double dt_;
  double t_head_;
  std::vector<Eigen::VectorXd> samples_;
  std::vector<Eigen::VectorXd> derivs_;
};

}  // namespace dws
