#include "dws/history_buffer.hpp"

#include <cmath>
#include <stdexcept>

namespace dws {

HistoryBuffer::HistoryBuffer(double tau, double dt, std::vector<Eigen::VectorXd> samples,
                             std::vector<Eigen::VectorXd> derivs, double t_head)
    : tau_(tau), dt_(dt), t_head_(t_head), samples_(std::move(samples)),
      derivs_(std::move(derivs)) {
  if (!(tau_ > 0.0) || !(dt_ > 0.0)) {
    throw std::invalid_argument("HistoryBuffer: tau and dt must be positive");
  }
  const double ratio = tau_ / dt_;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - double(steps)) > 1e-9 * ratio) {
    throw std::invalid_argument("HistoryBuffer: dt must divide tau exactly");
  }
  if (static_cast<long>(samples_.size()) != steps + 1 || derivs_.size() != samples_.size()) {
    throw std::invalid_argument("HistoryBuffer: need exactly tau/dt + 1 samples and derivatives");
  }
}

Eigen::VectorXd HistoryBuffer::value_at(double s) const {
  const double t_tail = t_head_ - tau_;
  const double eps = 1e-9 * dt_;
  if (s < t_tail - eps || s > t_head_ + eps) {
    throw std::out_of_range("HistoryBuffer: query outside covered window");
  }
  const int m = size();
  const double x = (s - t_tail) / dt_;
  const int j = std::min(std::max(static_cast<int>(std::floor(x)), 0), m - 2);
  const double th = x - j;
  if (std::abs(th) < 1e-9) return samples_[static_cast<size_t>(j)];
  if (std::abs(th - 1.0) < 1e-9) return samples_[static_cast<size_t>(j + 1)];
  // cubic Hermite on the cell [j, j+1]
  const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
  const double h10 = th * (1.0 - th) * (1.0 - th);
  const double h01 = th * th * (3.0 - 2.0 * th);
  const double h11 = th * th * (th - 1.0);
  return h00 * samples_[static_cast<size_t>(j)] + h01 * samples_[static_cast<size_t>(j + 1)] +
         dt_ * (h10 * derivs_[static_cast<size_t>(j)] + h11 * derivs_[static_cast<size_t>(j + 1)]);
}

void HistoryBuffer::push(Eigen::VectorXd v, Eigen::VectorXd d) {
  samples_.erase(samples_.begin());
  samples_.push_back(std::move(v));
  derivs_.erase(derivs_.begin());
  derivs_.push_back(std::move(d));
  t_head_ += dt_;
}

}  // namespace dws
