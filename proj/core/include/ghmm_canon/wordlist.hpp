#ifndef GHMM_CANON_WORDLIST_HPP
#define GHMM_CANON_WORDLIST_HPP

#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/types.hpp"
#include "ghmm_canon/vectorize.hpp"

namespace ghmm_canon {

// History side: words whose induced (unnormalized) state vectors span the
// reachable row space. rows.row(i) is the vector of words[i].
struct InducedStateMatrix {
  std::vector<Word> words;
  Eigen::MatrixXcd rows;
  // Words whose vector was linearly independent but whose probability was
  // at the floor; they extend the tracked span but cannot appear in a
  // wordlist (conditioning on them is undefined).
  int zero_probability_excluded = 0;
};

// Future side: words whose induced functionals span the observable column
// space. cols.col(i) is the functional of words[i]. No probability filter
// here: a future word conditions nothing, so a zero marginal under the
// initial state is harmless (and does occur in minimal lists).
struct InducedFunctionalMatrix {
  std::vector<Word> words;
  Eigen::MatrixXcd cols;
};

struct MinimalWordlists {
  std::vector<Word> history;
  std::vector<Word> future;
  int ell_min = 0;
  // Induced vectors of the surviving words, for downstream constructions.
  Eigen::MatrixXcd history_rows;
  Eigen::MatrixXcd future_cols;
};

// Breadth-first search from the empty word: a word is kept when its induced
// state leaves the span of everything kept so far (SVD rank test with
// relative threshold rank_rel); children of kept words are enqueued in
// alphabet order. Deterministic for a fixed alphabet ordering.
InducedStateMatrix sufficient_history_wordlist(const LinearForm& model,
                                               const Tolerances& tol = {});

// Dual search over functionals; extensions prepend the symbol, since a
// future word grows towards the past-facing boundary.
InducedFunctionalMatrix sufficient_future_wordlist(const LinearForm& model,
                                                   const Tolerances& tol = {});

// Cross matrix of states against functionals, greedily pruned (in wordlist
// order) until both lists have exactly rank-many words.
MinimalWordlists minimal_wordlists(const LinearForm& model,
                                   const InducedStateMatrix& history,
                                   const InducedFunctionalMatrix& future,
                                   const Tolerances& tol = {});
MinimalWordlists minimal_wordlists(const LinearForm& model, const Tolerances& tol = {});

// The theoretical guarantees: at most d^2 (quantum) or D (classical) words,
// none longer than d^2-1 resp. D-1. A violation is an implementation bug,
// reported as a numerical-integrity error.
struct WordlistBoundsReport {
  int word_bound = 0;
  int length_bound = 0;
  int observed_words = 0;
  int observed_max_length = 0;
};

WordlistBoundsReport check_wordlist_bounds(const LinearForm& model,
                                           const MinimalWordlists& lists,
                                           const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
