#ifndef GHMM_CANON_RANDOM_HPP
#define GHMM_CANON_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ghmm_canon {

// Deterministic generator for everything stochastic in this library.
// std::mt19937_64 has a portable bit stream, and we derive uniforms and
// normals ourselves because the standard distributions are
// implementation-defined and would break bit-reproducibility across
// standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller.
  double normal();

  std::complex<double> complex_normal() { return {normal(), normal()}; }

private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Matrix with i.i.d. standard complex Gaussian entries.
Eigen::MatrixXcd ginibre(int rows, int cols, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

// Full-rank random density matrix GG†/tr(GG†).
Eigen::MatrixXcd random_density_matrix(int d, Rng& rng);

} // namespace ghmm_canon

#endif
