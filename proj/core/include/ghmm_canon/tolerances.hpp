#ifndef GHMM_CANON_TOLERANCES_HPP
#define GHMM_CANON_TOLERANCES_HPP

#include <cstddef>

namespace ghmm_canon {

// Numerical policy shared across the library. Every routine that thresholds,
// clamps or compares floating point quantities takes one of these; the
// defaults are the contract the test suite pins down.
struct Tolerances {
  // Structural identities of a model: T(x) summed over x fixing the ones
  // vector, eta0 * ones == 1, Kraus completeness, unitarity.
  double structural = 1e-9;

  // Allowed imaginary residue when a quantity is real by construction
  // (word probabilities from complex arithmetic, density matrix traces).
  double imag_residue = 1e-10;

  // Hermiticity / positivity slack for density matrices.
  double density = 1e-10;

  // Probabilities in [-prob_floor, 0) are clamped to 0 before reporting;
  // anything below -prob_floor is a hard error for models claiming to be
  // stochastic. Words with probability <= prob_floor count as zero when
  // growing wordlists.
  double prob_floor = 1e-12;

  // Relative singular value cutoff: a singular value counts towards the
  // rank iff it exceeds rank_rel * sigma_max of the stacked matrix.
  double rank_rel = 1e-9;

  // Probability comparison tolerance for equivalence verdicts and for
  // matching canonical form entries.
  double prob_compare = 1e-8;

  // Refuse to invert matrices whose condition number exceeds this.
  double condition_cap = 1e12;

  // Hard cap on the number of words any exhaustive enumeration may visit.
  std::size_t enumeration_cap = 1000000;
};

} // namespace ghmm_canon

#endif
