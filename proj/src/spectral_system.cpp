#include "dws/spectral_system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dws {

namespace {

constexpr double kPi = std::numbers::pi;

void check_interval(const Interval& iv, const char* name) {
  if (!(iv.first >= 0.0) || !(iv.second <= kPi) || !(iv.first < iv.second)) {
    throw std::invalid_argument(std::string(name) + " interval must satisfy 0 <= lo < hi <= pi, got [" +
                                std::to_string(iv.first) + ", " + std::to_string(iv.second) + "]");
  }
}

// Antiderivative of (2/pi) sin(ix) sin(jx).
double gram_antiderivative(int i, int j, double x) {
  if (i == j) {
    return (x - std::sin(2.0 * i * x) / (2.0 * i)) / kPi;
  }
  return (std::sin((i - j) * x) / (i - j) - std::sin((i + j) * x) / (i + j)) / kPi;
}

}  // namespace

Eigen::MatrixXd gram_matrix(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("gram_matrix: n must be >= 1");
  check_interval({lo, hi}, "gram");
  Eigen::MatrixXd g(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const double val = gram_antiderivative(i, j, hi) - gram_antiderivative(i, j, lo);
      g(i - 1, j - 1) = val;
      g(j - 1, i - 1) = val;
    }
  }
  return g;
}

SpectralSystem::SpectralSystem(Eigen::VectorXd lambdas, Eigen::MatrixXd damping,
                               Eigen::MatrixXd delay_op, double b)
    : lambdas_(std::move(lambdas)),
      damping_(std::move(damping)),
      delay_op_(std::move(delay_op)),
      b_(b) {
  const int n = static_cast<int>(lambdas_.size());
  if (n < 1) throw std::invalid_argument("SpectralSystem: empty spectrum");
  for (int i = 0; i < n; ++i) {
    if (!(lambdas_[i] > 0.0) || !std::isfinite(lambdas_[i])) {
      throw std::invalid_argument("SpectralSystem: eigenvalues must be strictly positive");
    }
    if (i > 0 && lambdas_[i] < lambdas_[i - 1]) {
      throw std::invalid_argument("SpectralSystem: eigenvalues must be nondecreasing");
    }
  }
  if (damping_.rows() != n || damping_.cols() != n || delay_op_.rows() != n || delay_op_.cols() != n) {
    throw std::invalid_argument("SpectralSystem: operator dimensions must match mode count");
  }
  const auto check_sym = [n](const Eigen::MatrixXd& m, const char* name) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw std::invalid_argument(std::string("SpectralSystem: ") + name + " must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
      throw std::invalid_argument(std::string("SpectralSystem: ") + name + " must be PSD");
    }
  };
  check_sym(damping_, "damping");
  check_sym(delay_op_, "delay_op");
  if (!(b_ >= 0.0)) throw std::invalid_argument("SpectralSystem: b must be nonnegative");
  // ||BB*|| = b^2, so the modal representation may not exceed it.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(delay_op_, Eigen::EigenvaluesOnly);
  const double norm = std::max(0.0, es.eigenvalues().maxCoeff());
  if (norm > b_ * b_ * (1.0 + 1e-10) + 1e-12) {
    throw std::invalid_argument("SpectralSystem: spectral norm of delay_op exceeds b^2");
  }
}

namespace {

SpectralSystem make_preset(int n, double a, const Interval& damp, const Interval& delay, int power) {
  if (n < 1) throw std::invalid_argument("preset: n must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("preset: damping amplitude a must be positive");
  check_interval(damp, "damping");
  check_interval(delay, "delay");
  Eigen::VectorXd lambdas(n);
  for (int i = 1; i <= n; ++i) {
    lambdas[i - 1] = power == 2 ? double(i) * i : double(i) * i * i * i;
  }
  return SpectralSystem(lambdas, a * gram_matrix(damp.first, damp.second, n),
                        gram_matrix(delay.first, delay.second, n), 1.0);
}

}  // namespace

SpectralSystem wave_preset(int n, double a, Interval damp, Interval delay) {
  return make_preset(n, a, damp, delay, 2);
}

SpectralSystem plate_preset(int n, double a, Interval damp, Interval delay) {
  return make_preset(n, a, damp, delay, 4);
}

double w_inner(const SpectralSystem& sys, const State& a, const State& b) {
  if (a.u.size() != sys.n() || a.v.size() != sys.n() || b.u.size() != sys.n() || b.v.size() != sys.n()) {
    throw std::invalid_argument("w_inner: state dimension mismatch");
  }
  return (sys.lambdas().array() * a.u.array() * b.u.array()).sum() + a.v.dot(b.v);
}

double w_norm(const SpectralSystem& sys, const State& st) {
  return std::sqrt(std::max(0.0, w_inner(sys, st, st)));
}

}  // namespace dws
