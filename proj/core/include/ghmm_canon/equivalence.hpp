#ifndef GHMM_CANON_EQUIVALENCE_HPP
#define GHMM_CANON_EQUIVALENCE_HPP

#include <optional>
#include <string>

#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/types.hpp"
#include "ghmm_canon/vectorize.hpp"

namespace ghmm_canon {

enum class Verdict { equal, not_equal };
enum class EquivalenceMethod { thm1, length_bound, canonical };

struct EquivalenceReport {
  Verdict verdict = Verdict::equal;
  EquivalenceMethod method = EquivalenceMethod::thm1;
  // A concrete word on which the two processes differ, with its raw
  // probability gap. Present on every not_equal verdict.
  std::optional<Word> witness;
  double witness_delta = 0.0;
  double max_discrepancy = 0.0;
  int horizon_used = 0;
  // Alphabet the witness indices refer to. The canonical method compares
  // models over different alphabets by extending both to the union, so this
  // may be larger than either operand's own alphabet.
  Alphabet alphabet;
  bool equal() const { return verdict == Verdict::equal; }
};

// Wordlist-condition test: sufficient minimal wordlists are computed for
// both operands and the conditional/marginal agreement conditions are
// checked across the unions of the lists.
EquivalenceReport equivalent_thm1(const LinearForm& a, const LinearForm& b,
                                  const Tolerances& tol = {});

// Exhaustive finite-horizon test: the processes agree iff they agree on all
// words of length 2 * max(d_a, d_b)^2 - 1, where d is the Hilbert dimension
// for quantum operands and ceil(sqrt(D)) for classical ones. Exponential;
// refuses past the enumeration cap.
EquivalenceReport equivalent_by_length(const LinearForm& a, const LinearForm& b,
                                       const Tolerances& tol = {});

// Canonical-form comparison: both operands are reduced to their standard
// GHMMs, which coincide entrywise exactly when the processes agree.
// Mismatched alphabets are reconciled by extending both models with
// never-emitted symbols, so processes over different alphabets compare
// honestly instead of erroring.
EquivalenceReport equivalent_canonical(const LinearForm& a, const LinearForm& b,
                                       const Tolerances& tol = {});

std::string to_string(Verdict v);
std::string to_string(EquivalenceMethod m);

} // namespace ghmm_canon

#endif
