#include "ghmm_canon/random.hpp"

#include <cmath>

namespace ghmm_canon {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Eigen::MatrixXcd ginibre(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // QR alone is not Haar: fix the phase ambiguity with the sign of diag(R).
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0) ? d / a : 1.0;
  }
  return q;
}

Eigen::MatrixXcd random_density_matrix(int d, Rng& rng) {
  Eigen::MatrixXcd g = ginibre(d, d, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last bits of rounding noise.
  return 0.5 * (rho + rho.adjoint().eval());
}

} // namespace ghmm_canon
