#pragma once

// Numerical estimation of the semigroup constants (M, omega) with
// ||e^{tA}|| <= M e^{-omega t} for the discretized undelayed generator, in
// coordinates where the W-norm is Euclidean.

#include <Eigen/Dense>

namespace dws {
class SpectralSystem;

/// 2n x 2n generator [[0, L^{1/2}], [-L^{1/2}, -CC*]] in weighted coordinates
/// (sqrt(lambda_i) u_i, v_i), so operator norms are W-norms.
Eigen::MatrixXd assemble_generator(const SpectralSystem& sys);

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

double spectral_norm(const Eigen::MatrixXd& a);

/// max real part of the eigenvalues
double spectral_abscissa(const Eigen::MatrixXd& a);

struct DecayEstimate {
  double M = 1.0;
  double omega = 0.0;
  double abscissa = 0.0;
};

/// omega = 0.99 |abscissa|; M = sup of ||e^{tG}|| e^{omega t} over log-spaced
/// samples, clamped to >= 1 and padded by a 1e-3 factor to cover inter-sample
/// peaks. The horizon scales with dim(gen)/(|abscissa| - omega) so that the
/// slowest admissible transient peak t^p e^{-(|abscissa|-omega) t} is always
/// inside the sampled range. Throws when the abscissa is not strictly
/// negative.
DecayEstimate estimate_decay(const Eigen::MatrixXd& gen, int n_samples = 1000,
                             double horizon_factor = 10.0);

}  // namespace dws
