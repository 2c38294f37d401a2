#ifndef GHMM_CANON_GHMM_HPP
#define GHMM_CANON_GHMM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/types.hpp"

namespace ghmm_canon {

struct SteadyState {
  Eigen::RowVectorXd pi;
};

// Classification of a GHMM. is_hmm means entrywise nonnegative transitions
// whose sum is row-stochastic. Unifilarity: the current state and the
// emitted symbol determine the next state (at most one nonzero per row of
// each per-symbol matrix); co-unifilarity is the dual statement about the
// previous state (at most one nonzero per column).
struct HmmFlags {
  bool is_hmm = false;
  bool is_unifilar = false;
  bool is_co_unifilar = false;
};

struct ValidationReport {
  bool structure_ok = false;     // transition sum fixes ones; eta0 * ones = 1
  bool nonneg_ok = false;        // no word probability below -prob_floor
  std::optional<Word> first_violation;
  double worst_probability = 0.0;
  int max_len_checked = 0;
  bool truncated = false;        // enumeration budget ran out before max_len
  bool ok() const { return structure_ok && nonneg_ok; }
};

// Linear generator of a stochastic process: a row vector eta0, one square
// matrix per symbol, and a final functional `ones`, with
// P(w) = eta0 * T(x0) * ... * T(x_{L-1}) * ones. Entries may be negative as
// long as every word probability is nonnegative; HMMs are the flagged
// special case. The final functional is stored explicitly instead of fixing
// the all-ones gauge, because vectorized quantum models natively terminate
// in a different functional.
class Ghmm {
public:
  Ghmm(Alphabet alphabet, Eigen::RowVectorXd eta0,
       std::vector<Eigen::MatrixXd> transitions, Eigen::VectorXd ones,
       const Tolerances& tol = {});

  const Alphabet& alphabet() const { return alphabet_; }
  int dim() const { return static_cast<int>(eta0_.size()); }
  const Eigen::RowVectorXd& eta0() const { return eta0_; }
  const Eigen::MatrixXd& transition(int symbol_index) const {
    return transitions_.at(static_cast<std::size_t>(symbol_index));
  }
  const std::vector<Eigen::MatrixXd>& transitions() const { return transitions_; }
  const Eigen::VectorXd& ones() const { return ones_; }
  // Sum of the per-symbol matrices; fixes `ones` by construction.
  const Eigen::MatrixXd& total() const { return total_; }

  HmmFlags flags(const Tolerances& tol = {}) const;

  // Same dynamics, different start vector (must satisfy eta0 * ones = 1).
  Ghmm with_start(Eigen::RowVectorXd eta0, const Tolerances& tol = {}) const;

private:
  Alphabet alphabet_;
  Eigen::RowVectorXd eta0_;
  std::vector<Eigen::MatrixXd> transitions_;
  Eigen::VectorXd ones_;
  Eigen::MatrixXd total_;
};

// P(w) = eta0 * T(w) * ones, clamped to 0 when within prob_floor below zero.
double word_probability(const Ghmm& model, const Word& w, const Tolerances& tol = {});

// P(history . future) / P(history); refuses zero-probability histories.
double conditional_probability(const Ghmm& model, const Word& future,
                               const Word& history, const Tolerances& tol = {});

// Left fixed point pi with pi * total = pi and pi * ones = 1. Throws a
// DegenerateConditionError listing all unit-eigenvalue left eigenvectors
// when the unit eigenspace is not simple.
SteadyState steady_state(const Ghmm& model, const Tolerances& tol = {});

// Structural identities plus an exhaustive nonnegativity sweep of P(w) for
// |w| <= max_len, in shortlex order, reporting the first violation. This is
// a semi-decision: validity is only certified up to max_len.
ValidationReport validate(const Ghmm& model, int max_len, const Tolerances& tol = {});

// Sum of P(w) over all words of length exactly L; 1 for valid models. Falls
// back to the telescoped product eta0 * total^L * ones when the enumeration
// would exceed the word budget (the two are algebraically identical).
double normalization_check(const Ghmm& model, int L, const Tolerances& tol = {});

// Gauge change eta0 -> eta0 S^-1, T(x) -> S T(x) S^-1, ones -> S ones.
// Word probabilities are untouched. Refuses S with condition number past
// the cap.
Ghmm apply_similarity(const Ghmm& model, const Eigen::MatrixXd& S,
                      const Tolerances& tol = {});

// Draw a length-step realization from an HMM, starting from eta0 (which
// must be a probability vector). Deterministic per seed.
Word sample_hmm(const Ghmm& model, int length, std::uint64_t seed,
                const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
