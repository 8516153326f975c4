#include "dws/delay_coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dws {

DelayCoefficient::DelayCoefficient(std::vector<double> breakpoints, std::vector<double> values,
                                   double tau)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), tau_(tau) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("DelayCoefficient: need matching nonempty breakpoint/value lists");
  }
  if (breakpoints_.front() != 0.0) {
    throw std::invalid_argument("DelayCoefficient: first breakpoint must be 0");
  }
  for (size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("DelayCoefficient: entries must be finite");
    }
    if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1]) {
      throw std::invalid_argument("DelayCoefficient: breakpoints must be strictly increasing");
    }
  }
  if (!(tau_ > 0.0)) throw std::invalid_argument("DelayCoefficient: tau must be positive");
}

DelayCoefficient DelayCoefficient::constant(double c, double tau) {
  return DelayCoefficient({0.0}, {c}, tau);
}

DelayCoefficient DelayCoefficient::from_csv(const std::string& path, double tau) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("DelayCoefficient: cannot open k CSV file: " + path);
  std::vector<double> times, values;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double t, v;
    if (!(ss >> t >> v)) {
      if (lineno == 1) continue;  // header row
      throw std::runtime_error("DelayCoefficient: bad CSV line " + std::to_string(lineno) +
                               " in " + path);
    }
    times.push_back(t);
    values.push_back(v);
  }
  return DelayCoefficient(std::move(times), std::move(values), tau);
}

double DelayCoefficient::value(double t) const {
  if (t <= breakpoints_.front()) return values_.front();
  if (t >= breakpoints_.back()) return values_.back();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const size_t i = static_cast<size_t>(it - breakpoints_.begin()) - 1;
  const double w = (t - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

std::vector<double> DelayCoefficient::kink_times() const {
  std::vector<double> out = breakpoints_;
  for (size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    const double v0 = values_[i], v1 = values_[i + 1];
    if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
      out.push_back(breakpoints_[i] + v0 / (v0 - v1) * (breakpoints_[i + 1] - breakpoints_[i]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double DelayCoefficient::abs_integral(double a, double b) const {
  if (!(a >= 0.0) || a > b) {
    throw std::invalid_argument("abs_integral: need 0 <= a <= b");
  }
  std::vector<double> cuts{a, b};
  for (double c : kink_times()) {
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    // linear with constant sign on the sub-piece
    total += 0.5 * std::abs(value(cuts[i]) + value(cuts[i + 1])) * (cuts[i + 1] - cuts[i]);
  }
  return total;
}

double DelayCoefficient::window_bound_K(double horizon, int grid_size) const {
  if (horizon < tau_) throw std::invalid_argument("window_bound_K: horizon must be >= tau");
  std::vector<double> cand{tau_, horizon};
  for (double c : kink_times()) {
    for (double t : {c, c + tau_}) {
      if (t > tau_ && t < horizon) cand.push_back(t);
    }
  }
  for (int i = 1; i < grid_size; ++i) {
    cand.push_back(tau_ + (horizon - tau_) * i / grid_size);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // d/dt of the window integral is |k(t)| - |k(t-tau)|, linear between
  // adjacent candidates; add its roots as interior extremum candidates.
  const auto slope = [this](double t) { return std::abs(value(t)) - std::abs(value(t - tau_)); };
  std::vector<double> extra;
  for (size_t i = 0; i + 1 < cand.size(); ++i) {
    const double g0 = slope(cand[i]), g1 = slope(cand[i + 1]);
    if ((g0 > 0.0 && g1 < 0.0) || (g0 < 0.0 && g1 > 0.0)) {
      extra.push_back(cand[i] + g0 / (g0 - g1) * (cand[i + 1] - cand[i]));
    }
  }
  cand.insert(cand.end(), extra.begin(), extra.end());
  double best = 0.0;
  for (double t : cand) {
    best = std::max(best, abs_integral(t - tau_, t));
  }
  return best;
}

double DelayCoefficient::shifted_cumulative(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("shifted_cumulative: t must be >= 0");
  return abs_integral(tau_, t + tau_);
}

AdmissibilityFit fit_gamma_omega(const DelayCoefficient& k, double M, double omega, double b,
                                 double horizon, int omega_grid_size, int time_grid_size) {
  if (!(M >= 1.0)) throw std::invalid_argument("fit_gamma_omega: M must be >= 1");
  if (!(omega > 0.0)) throw std::invalid_argument("fit_gamma_omega: omega must be positive");
  if (horizon < k.tau()) throw std::invalid_argument("fit_gamma_omega: horizon must be >= tau");
  if (omega_grid_size < 2) throw std::invalid_argument("fit_gamma_omega: omega grid too small");

  const double factor = M * b * b * std::exp(omega * k.tau());
  const double tail_slope = factor * std::abs(k.values().back());

  // sample times: uniform grid plus every kink of |k(s+tau)|
  std::vector<double> times;
  times.reserve(static_cast<size_t>(time_grid_size) + 8);
  for (int i = 0; i <= time_grid_size; ++i) {
    times.push_back(horizon * i / time_grid_size);
  }
  for (double c : k.kink_times()) {
    const double t = c - k.tau();
    if (t > 0.0 && t < horizon) times.push_back(t);
  }
  std::vector<std::pair<double, double>> lhs;  // (t, factor * cumulative)
  lhs.reserve(times.size());
  for (double t : times) lhs.emplace_back(t, factor * k.shifted_cumulative(t));

  std::vector<double> candidates;
  for (int j = 0; j < omega_grid_size; ++j) {
    candidates.push_back(omega * j / omega_grid_size);
  }
  if (tail_slope < omega) candidates.push_back(tail_slope);
  std::sort(candidates.begin(), candidates.end());

  AdmissibilityFit fit;
  const double slope_tol = tail_slope * 1e-12 + 1e-15;
  bool have_best = false;
  for (double wp : candidates) {
    if (wp < tail_slope - slope_tol) continue;  // grows past any affine bound beyond the horizon
    double gamma = 0.0;
    for (const auto& [t, l] : lhs) gamma = std::max(gamma, l - wp * t);
    fit.frontier.emplace_back(wp, gamma);
    if (!have_best) {  // candidates sorted: first feasible omega' maximizes omega - omega'
      fit.feasible = true;
      fit.omega_prime = wp;
      fit.gamma = gamma;
      have_best = true;
    }
  }
  if (fit.feasible) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& [t, l] : lhs) {
      margin = std::min(margin, fit.gamma + fit.omega_prime * t - l);
    }
    fit.achieved_margin = margin;
  }
  return fit;
}

}  // namespace dws
