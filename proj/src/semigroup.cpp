#include "dws/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "dws/spectral_system.hpp"

namespace dws {

Eigen::MatrixXd assemble_generator(const SpectralSystem& sys) {
  const int n = sys.n();
  const Eigen::VectorXd sq = sys.lambdas().array().sqrt().matrix();
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  gen.topRightCorner(n, n) = sq.asDiagonal();
  gen.bottomLeftCorner(n, n) = -Eigen::MatrixXd(sq.asDiagonal());
  gen.bottomRightCorner(n, n) = -sys.damping();
  return gen;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  // Pade-13 coefficients
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const Eigen::MatrixXd as = a / std::pow(2.0, squarings);
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = as * as;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a2 * a4;
  const Eigen::MatrixXd u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
            b[1] * ident);
  const Eigen::MatrixXd v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

double spectral_norm(const Eigen::MatrixXd& a) {
  return a.jacobiSvd().singularValues()(0);
}

double spectral_abscissa(const Eigen::MatrixXd& a) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  return es.eigenvalues().real().maxCoeff();
}

DecayEstimate estimate_decay(const Eigen::MatrixXd& gen, int n_samples, double horizon_factor) {
  if (n_samples < 2) throw std::invalid_argument("estimate_decay: need at least two samples");
  DecayEstimate est;
  est.abscissa = spectral_abscissa(gen);
  if (!(est.abscissa < 0.0)) {
    throw std::runtime_error("estimate_decay: no exponential decay (spectral abscissa >= 0)");
  }
  est.omega = 0.99 * (-est.abscissa);
  // ||e^{tG}|| e^{omega t} <= p(t) e^{-gap t} with deg p < dim, whose peak sits
  // below dim/gap; sample past it, staying log-dense near 0 for short
  // non-normal transients
  const double gap = (-est.abscissa) - est.omega;
  const double horizon = horizon_factor * double(gen.rows()) / gap;
  const double t_min = 1e-3 / (-est.abscissa);
  const double decades = std::log10(horizon / t_min);
  // evaluate ||e^{tG}|| e^{omega t} as ||e^{t(G + omega I)}||: the shifted
  // generator decays at rate gap, so neither factor under- or overflows
  const Eigen::MatrixXd shifted =
      gen + est.omega * Eigen::MatrixXd::Identity(gen.rows(), gen.cols());
  double m_best = 1.0;
  for (int i = 0; i < n_samples; ++i) {
    const double t = t_min * std::pow(10.0, decades * double(i) / (n_samples - 1));
    m_best = std::max(m_best, spectral_norm(expm(t * shifted)));
  }
  est.M = m_best * 1.001;  // inter-sample peak allowance
  return est;
}

}  // namespace dws
