#include "dws/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dws {

namespace {

// 20-point Gauss-Legendre rule on [-1, 1], positive half.
constexpr double kGlNodes[10] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195, 0.5108670019508271,
    0.6360536807265150, 0.7463319064601508, 0.8391169718222188, 0.9122344282513259,
    0.9639719272779138, 0.9931285991850949};
constexpr double kGlWeights[10] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820, 0.1316886384491766,
    0.1181945319615184, 0.1019301198172404, 0.0832767415767048, 0.0626720483341091,
    0.0406014298003869, 0.0176140071391521};

double gauss_legendre(double a, double b, const std::function<double(double)>& f) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 10; ++i) {
    sum += kGlWeights[i] * (f(mid - half * kGlNodes[i]) + f(mid + half * kGlNodes[i]));
  }
  return half * sum;
}

double quad_split_at_kinks(double a, double b, const DelayCoefficient& k,
                           const std::function<double(double)>& f) {
  std::vector<double> cuts{a, b};
  for (double c : k.kink_times()) {
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) total += gauss_legendre(cuts[i], cuts[i + 1], f);
  return total;
}

}  // namespace

double history_energy_integral(const SpectralSystem& sys, const DelayCoefficient& k,
                               const HistoryBuffer& hist, double t) {
  if (std::abs(hist.t_head() - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw std::invalid_argument("history_energy_integral: buffer does not cover [t - tau, t]");
  }
  const int m = hist.size();
  const double dt = hist.dt();
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double s = t - hist.tau() + double(i) * dt;
    const Eigen::VectorXd& v = hist.sample(i);
    const double q = std::abs(k.value(s + k.tau())) * v.dot(sys.delay_op() * v);
    sum += (i == 0 || i == m - 1) ? 0.5 * q : q;
  }
  return sum * dt;
}

double energy(const SpectralSystem& sys, const Nonlinearity& nl, const DelayCoefficient& k,
              const State& st, const HistoryBuffer& hist, double t) {
  const double kinetic = 0.5 * st.v.squaredNorm();
  const double elastic = 0.5 * (sys.lambdas().array() * st.u.array().square()).sum();
  return kinetic + elastic - nl.psi(sys, st.u) + 0.5 * history_energy_integral(sys, k, hist, t);
}

double cbar(const DelayCoefficient& k, double b, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("cbar: t must be >= 0");
  return std::exp(2.0 * b * b * (k.abs_integral(0.0, t) + k.shifted_cumulative(t)));
}

CheckReport check_energy_growth(const TrajectoryRecord& traj, const DelayCoefficient& k, double b,
                                double tol) {
  CheckReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double e0 = traj.energy.empty() ? 0.0 : traj.energy.front();
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const double e = traj.energy[i];
    const double hyp = e - 0.25 * traj.states[i].v.squaredNorm();
    if (hyp < -1e-12 * std::max(1.0, std::abs(e)) && rep.hypothesis_ok) {
      rep.hypothesis_ok = false;
      rep.hypothesis_violation_time = t;
    }
    const double bound = cbar(k, b, t) * e0 * (1.0 + tol);
    const double margin = bound - e;
    if (margin < rep.worst_margin) rep.worst_margin = margin;
    if (margin < 0.0 && rep.passed) {
      rep.passed = false;
      rep.first_violation_time = t;
    }
  }
  if (!rep.hypothesis_ok) rep.passed = false;
  return rep;
}

CheckReport check_lower_bound(const SpectralSystem& sys, const TrajectoryRecord& traj) {
  CheckReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const State& st = traj.states[i];
    const double e = traj.energy[i];
    const double kin = 0.25 * st.v.squaredNorm();
    const double ela = 0.25 * (sys.lambdas().array() * st.u.array().square()).sum();
    const double his = 0.25 * traj.history_integrals[i];
    const double margin = e - (kin + ela + his);  // implies e > 1/4 ||U||_W^2 as well
    if (margin < rep.worst_margin) rep.worst_margin = margin;
    if (margin < -1e-12 * std::max(1.0, std::abs(e)) && rep.passed) {
      rep.passed = false;
      rep.first_violation_time = traj.times[i];
    }
  }
  return rep;
}

StabilityCertificate smallness_program(double M, double omega, double gamma, double omega_prime,
                                       double K, double b, double tau, const DelayCoefficient& k,
                                       const Nonlinearity& nl) {
  if (!(omega_prime < omega)) {
    throw std::invalid_argument("smallness_program: omega_prime must be < omega");
  }
  if (!(M >= 1.0) || !(omega > 0.0) || !(omega_prime >= 0.0) || !(K >= 0.0) || !(gamma >= 0.0)) {
    throw std::invalid_argument("smallness_program: invalid certificate inputs");
  }
  StabilityCertificate cert;
  cert.M = M;
  cert.omega = omega;
  cert.gamma = gamma;
  cert.omega_prime = omega_prime;
  cert.K = K;
  cert.b = b;
  cert.tau = tau;
  cert.decay_rate = 0.5 * (omega - omega_prime);

  const double base = 2.0 * M * M * std::exp(2.0 * gamma) *
                      (1.0 + K * std::exp(omega * tau) * b * b) *
                      (1.0 + std::exp(2.0 * omega * tau) * K);
  const double rate = (omega - omega_prime) * tau;
  cert.N = std::max(1, static_cast<int>(std::ceil(std::log(base) / rate)));
  cert.C_N = base * std::exp(-rate * cert.N);
  cert.cbar_Ntau = cbar(k, b, cert.N * tau);

  const double lipschitz_cap = (omega - omega_prime) / (2.0 * M);
  if (nl.is_zero()) {
    cert.rho_unconstrained = true;
    cert.rho = std::numeric_limits<double>::infinity();
    cert.rho_sqrt_reading = cert.rho;
    cert.C_rho = std::numeric_limits<double>::infinity();
    cert.L_C_rho = 0.0;
  } else {
    const double hinv = nl.h_inverse(0.5);
    cert.rho_sqrt_reading = hinv / (2.0 * std::sqrt(cert.cbar_Ntau));
    cert.rho = hinv / (2.0 * cert.cbar_Ntau);  // conservative reading, cbar >= 1
    cert.C_rho = 2.0 * std::sqrt(cert.cbar_Ntau) * cert.rho;
    cert.L_C_rho = nl.lipschitz_L(cert.C_rho);
    int halvings = 0;
    while (cert.L_C_rho >= lipschitz_cap && halvings < 2000) {
      cert.rho *= 0.5;
      cert.C_rho = 2.0 * std::sqrt(cert.cbar_Ntau) * cert.rho;
      cert.L_C_rho = nl.lipschitz_L(cert.C_rho);
      ++halvings;
    }
  }

  cert.checks.push_back({"C_N_le_1", cert.C_N <= 1.0, 1.0 - cert.C_N});
  cert.checks.push_back(
      {"L_C_rho_lt_rate_over_2M", cert.L_C_rho < lipschitz_cap, lipschitz_cap - cert.L_C_rho});
  cert.checks.push_back({"omega_prime_lt_omega", omega_prime < omega, omega - omega_prime});
  cert.checks.push_back({"rho_positive", cert.rho > 0.0, cert.rho});
  cert.valid = true;
  for (const auto& c : cert.checks) cert.valid = cert.valid && c.passed;
  return cert;
}

double DecayEnvelope::eval_full(double t) const { return prefactor * std::exp(-rate_full * t); }
double DecayEnvelope::eval_half(double t) const { return prefactor * std::exp(-rate_half * t); }

DecayEnvelope decay_envelope(const StabilityCertificate& cert, double u0_wnorm,
                             const DelayCoefficient& k,
                             const std::function<double(double)>& f_wnorm) {
  if (!cert.valid) throw std::invalid_argument("decay_envelope: certificate is not valid");
  const double integral = quad_split_at_kinks(0.0, cert.tau, k, [&](double s) {
    return std::exp(cert.omega * s) * std::abs(k.value(s)) * f_wnorm(s);
  });
  DecayEnvelope env;
  env.prefactor = cert.M * std::exp(cert.gamma) * (u0_wnorm + integral);
  env.rate_full = cert.omega - cert.omega_prime - cert.M * cert.L_C_rho;
  env.rate_half = cert.decay_rate;
  return env;
}

void write_certificate_report(std::ostream& os, const StabilityCertificate& cert) {
  char buf[32];
  const auto line = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << name << " = " << buf << "\n";
  };
  line("M", cert.M);
  line("omega", cert.omega);
  line("b", cert.b);
  line("K", cert.K);
  line("gamma", cert.gamma);
  line("omega_prime", cert.omega_prime);
  line("tau", cert.tau);
  os << "N = " << cert.N << "\n";
  line("C_N", cert.C_N);
  line("cbar_Ntau", cert.cbar_Ntau);
  line("rho", cert.rho);
  line("rho_sqrt_reading", cert.rho_sqrt_reading);
  os << "rho_unconstrained = " << (cert.rho_unconstrained ? "true" : "false") << "\n";
  line("C_rho", cert.C_rho);
  line("L_C_rho", cert.L_C_rho);
  line("decay_rate", cert.decay_rate);
  os << "valid = " << (cert.valid ? "true" : "false") << "\n";
  for (const auto& c : cert.checks) {
    os << "check." << c.name << " = " << (c.passed ? "pass" : "fail") << "\n";
    line(("check." + c.name + ".margin").c_str(), c.margin);
  }
}

}  // namespace dws
