#include "dws/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dws {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ZeroNonlinearity::h_inverse(double) const {
  throw std::domain_error("ZeroNonlinearity: h == 0 has no inverse");
}

PowerNonlinearity::PowerNonlinearity(const SpectralSystem& sys, double beta, double c_h,
                                     int grid_size, int calibration_samples, unsigned seed)
    : beta_(beta), c_h_(c_h) {
  if (!(beta_ > 0.0)) throw std::invalid_argument("PowerNonlinearity: beta must be positive");
  const int n = sys.n();
  int intervals = grid_size > 0 ? grid_size : std::max(4 * n, 64);
  if (intervals % 2 != 0) ++intervals;  // Simpson needs an even interval count

  const int nodes = intervals + 1;
  const double dx = kPi / intervals;
  weights_.resize(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double w = (j == 0 || j == intervals) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    weights_[j] = w * dx / 3.0;
  }
  synthesis_.resize(n, nodes);
  const double scale = std::sqrt(2.0 / kPi);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < nodes; ++j) {
      synthesis_(i, j) = scale * std::sin((i + 1) * j * dx);
    }
  }

  if (c_h_ <= 0.0) {
    // The ratio ||grad psi(u)|| / ||A^{1/2}u||^{beta+1} is scale invariant,
    // so sampling random directions suffices.
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < calibration_samples; ++s) {
      Eigen::VectorXd u(n);
      for (int i = 0; i < n; ++i) u[i] = dist(rng);
      const double r = std::sqrt((sys.lambdas().array() * u.array().square()).sum());
      if (r <= 0.0) continue;
      const double g = grad_psi(sys, u).norm();
      worst = std::max(worst, g / std::pow(r, beta_ + 1.0));
    }
    c_h_ = kCalibrationSafety * worst;
    if (!(c_h_ > 0.0)) throw std::runtime_error("PowerNonlinearity: calibration failed");
  }
}

Eigen::VectorXd PowerNonlinearity::synthesize(const Eigen::VectorXd& u) const {
  return synthesis_.transpose() * u;
}

double PowerNonlinearity::psi(const SpectralSystem& sys, const Eigen::VectorXd& u) const {
  if (u.size() != sys.n() || sys.n() != synthesis_.rows()) {
    throw std::invalid_argument("PowerNonlinearity: dimension mismatch");
  }
  const Eigen::ArrayXd vals = synthesize(u).array();
  return (weights_.array() * vals.abs().pow(beta_ + 2.0)).sum() / (beta_ + 2.0);
}

Eigen::VectorXd PowerNonlinearity::grad_psi(const SpectralSystem& sys,
                                            const Eigen::VectorXd& u) const {
  if (u.size() != sys.n() || sys.n() != synthesis_.rows()) {
    throw std::invalid_argument("PowerNonlinearity: dimension mismatch");
  }
  const Eigen::ArrayXd vals = synthesize(u).array();
  const Eigen::VectorXd f = (vals.abs().pow(beta_) * vals * weights_.array()).matrix();
  return synthesis_ * f;
}

double PowerNonlinearity::h_bound(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("h_bound: r must be nonnegative");
  return c_h_ * std::pow(r, beta_);
}

double PowerNonlinearity::lipschitz_L(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("lipschitz_L: r must be nonnegative");
  return (beta_ + 1.0) * c_h_ * std::pow(r, beta_);
}

double PowerNonlinearity::h_inverse(double y) const {
  if (!(y >= 0.0)) throw std::domain_error("h_inverse: y must be nonnegative");
  return std::pow(y / c_h_, 1.0 / beta_);
}

std::shared_ptr<const Nonlinearity> make_nonlinearity(const SpectralSystem& sys, double beta,
                                                      double c_h) {
  if (beta == 0.0) return std::make_shared<ZeroNonlinearity>();
  return std::make_shared<PowerNonlinearity>(sys, beta, c_h);
}

}  // namespace dws
