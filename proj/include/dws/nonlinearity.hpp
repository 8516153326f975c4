#pragma once

// Source-term potentials: the power family psi(u) = 1/(beta+2) int |u|^{beta+2}
// with its gradient, growth bound h and local Lipschitz bound L, plus the
// degenerate zero potential used for linear-limit oracles.

#include <Eigen/Dense>

#include <memory>

#include "dws/spectral_system.hpp"

namespace dws {

class Nonlinearity {
 public:
  virtual ~Nonlinearity() = default;

  virtual double psi(const SpectralSystem& sys, const Eigen::VectorXd& u) const = 0;
  virtual Eigen::VectorXd grad_psi(const SpectralSystem& sys, const Eigen::VectorXd& u) const = 0;

  /// h(r) with ||grad psi(u)|| <= h(||A^{1/2}u||) ||A^{1/2}u||
  virtual double h_bound(double r) const = 0;
  /// local Lipschitz bound L(r) for grad psi on the ball ||A^{1/2}.|| <= r
  virtual double lipschitz_L(double r) const = 0;
  /// inverse of h; throws std::domain_error when h has no inverse (zero case)
  virtual double h_inverse(double y) const = 0;

  virtual bool is_zero() const { return false; }
};

class ZeroNonlinearity final : public Nonlinearity {
 public:
  double psi(const SpectralSystem&, const Eigen::VectorXd&) const override { return 0.0; }
  Eigen::VectorXd grad_psi(const SpectralSystem&, const Eigen::VectorXd& u) const override {
    return Eigen::VectorXd::Zero(u.size());
  }
  double h_bound(double) const override { return 0.0; }
  double lipschitz_L(double) const override { return 0.0; }
  double h_inverse(double) const override;
  bool is_zero() const override { return true; }
};

class PowerNonlinearity final : public Nonlinearity {
 public:
  /// grid_size 0 picks max(4n, 64) Simpson intervals. c_h <= 0 requests
  /// sampling calibration: c_h = 1.2 * max over random directions of
  /// ||grad psi(u)|| / ||A^{1/2}u||^{beta+1}.
  PowerNonlinearity(const SpectralSystem& sys, double beta, double c_h = 0.0, int grid_size = 0,
                    int calibration_samples = 10000, unsigned seed = 0x5eed);

  double psi(const SpectralSystem& sys, const Eigen::VectorXd& u) const override;
  Eigen::VectorXd grad_psi(const SpectralSystem& sys, const Eigen::VectorXd& u) const override;
  double h_bound(double r) const override;
  double lipschitz_L(double r) const override;
  double h_inverse(double y) const override;

  double beta() const { return beta_; }
  double c_h() const { return c_h_; }
  int grid_size() const { return static_cast<int>(weights_.size()); }
  static constexpr double kCalibrationSafety = 1.2;

 private:
  Eigen::VectorXd synthesize(const Eigen::VectorXd& u) const;

  double beta_;
  double c_h_;
  Eigen::MatrixXd synthesis_;       // phi_i(x_j), n x grid
  Eigen::VectorXd weights_;         // composite Simpson weights on (0, pi)
};

std::shared_ptr<const Nonlinearity> make_nonlinearity(const SpectralSystem& sys, double beta,
                                                      double c_h = 0.0);

}  // namespace dws
