#ifndef GHMM_CANON_CANONICAL_HPP
#define GHMM_CANON_CANONICAL_HPP

#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/types.hpp"
#include "ghmm_canon/vectorize.hpp"
#include "ghmm_canon/wordlist.hpp"

namespace ghmm_canon {

// The canonical minimal GHMM of a process, built on its ordered minimal
// wordlists. Two models generate the same process exactly when their
// standard forms coincide. gamma0 = model.eta0() need not be a probability
// vector; the final functional is the all-ones vector.
struct StandardGhmm {
  Ghmm model;
  std::vector<Word> history_words;
  std::vector<Word> future_words;
};

// Matrix of conditional probabilities HF[i][j] = P(future_j | history_i)
// over the minimal wordlists. Invertible in exact arithmetic; refused when
// the condition number passes the cap.
Eigen::MatrixXd hf_matrix(const LinearForm& model, const MinimalWordlists& lists,
                          const Tolerances& tol = {});

// gamma0 = [P(future_j)] HF^-1 and B(x) = [h^_i op(x) f_j] HF^-1, verified
// to reproduce the source model's word probabilities up to
// min(6, 2 ell_min - 1).
StandardGhmm standard_ghmm(const LinearForm& model, const Tolerances& tol = {});
StandardGhmm standard_ghmm(const Ghmm& model, const Tolerances& tol = {});
StandardGhmm standard_ghmm(const Qhmm& model, const Tolerances& tol = {});

// Quantum memory lower bound: any QHMM generating the process needs
// dimension at least ceil(sqrt(ell_min)). Tight for some processes only.
struct DimensionBound {
  int ell_min = 0;
  int d_min_lower = 0;
};

DimensionBound dimension_bound(const MinimalWordlists& lists);

// Latent-entropy witness for unifilar + co-unifilar HMMs: when the steady
// state entropy H(pi) exceeds log2(k), the process cannot be generated with
// k latent dimensions, so the floor is ceil(2^H(pi)).
struct EntropyWitnessReport {
  double entropy_bits = 0.0;
  int dimension_floor = 1;
  // exceeds_log2[k-1] says H(pi) > log2(k), for k = 1 .. D.
  std::vector<bool> exceeds_log2;
  bool witnessed() const { return dimension_floor > 1; }
};

EntropyWitnessReport entropy_dimension_witness(const Ghmm& model,
                                               const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
