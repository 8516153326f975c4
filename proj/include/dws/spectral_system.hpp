#pragma once

// Truncated eigenbasis representation of the abstract damped wave system:
// the operator A lives as a vector of eigenvalues, the damping and delay
// operators CC*, BB* as modal Gram matrices, and the phase space
// W = D(A^{1/2}) x H carries the norm (||A^{1/2}u||^2 + ||v||^2)^{1/2}.

#include <Eigen/Dense>

#include <utility>

namespace dws {

using Interval = std::pair<double, double>;

/// Modal projection of the indicator of (lo, hi) subset of (0, pi) onto the
/// sine basis phi_i = sqrt(2/pi) sin(i x): entry (i,j) = int_lo^hi phi_i phi_j.
/// Closed form, symmetric PSD.
Eigen::MatrixXd gram_matrix(double lo, double hi, int n);

class SpectralSystem {
 public:
  SpectralSystem(Eigen::VectorXd lambdas, Eigen::MatrixXd damping,
                 Eigen::MatrixXd delay_op, double b);

  int n() const { return static_cast<int>(lambdas_.size()); }
  const Eigen::VectorXd& lambdas() const { return lambdas_; }
  const Eigen::MatrixXd& damping() const { return damping_; }
  const Eigen::MatrixXd& delay_op() const { return delay_op_; }
  double b() const { return b_; }

 private:
  Eigen::VectorXd lambdas_;   // eigenvalues of A, positive nondecreasing
  Eigen::MatrixXd damping_;   // modal CC*
  Eigen::MatrixXd delay_op_;  // modal BB*
  double b_;                  // operator norm bound for B
};

/// 1-D wave on (0, pi) with Dirichlet conditions: lambda_i = i^2, damping
/// a * chi_(damp interval), delay feedback through chi_(delay interval).
SpectralSystem wave_preset(int n, double a, Interval damp, Interval delay);

/// Hinged 1-D plate variant: identical operators, lambda_i = i^4.
SpectralSystem plate_preset(int n, double a, Interval damp, Interval delay);

struct State {
  Eigen::VectorXd u;  // modal coefficients of u
  Eigen::VectorXd v;  // modal coefficients of u_t
};

double w_inner(const SpectralSystem& sys, const State& a, const State& b);
double w_norm(const SpectralSystem& sys, const State& st);

}  // namespace dws
