#ifndef GHMM_CANON_MODEL_ZOO_HPP
#define GHMM_CANON_MODEL_ZOO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/model_io.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/tolerances.hpp"

namespace ghmm_canon {

// No-repeat process on four symbols: from latent state i, each symbol
// x != i is emitted with probability 1/3 and the state moves to x. Needs
// all four classical states, but only a two-dimensional quantum memory.
Ghmm tight_example_hmm(const Tolerances& tol = {});

// The same process on a qubit: the four latent states embed as unit vectors
// with pairwise overlap 1/sqrt(3) (a state-space tetrahedron), one Kraus
// operator per symbol, started from the maximally mixed state.
Qhmm tight_example_qhmm(const Tolerances& tol = {});

enum class LooseStart { state_a, stationary };

// Four-state cycle A -> B -> C -> D -> A emitting 1 on every hop, except
// that A also emits 0 with probability p and stays put. Unifilar and
// co-unifilar for every p in [0, 1].
Ghmm loose_example_hmm(double p, LooseStart start = LooseStart::state_a,
                       const Tolerances& tol = {});

// Memoryless bit with P(0) = q.
Ghmm iid_bit_model(double q, const Tolerances& tol = {});

// Haar-random unitary circuit of size d * n_symbols * n_trash paired with a
// random rank-d density matrix, reduced to its Kraus operators.
// Deterministic per seed.
Qhmm random_qhmm(int d, int n_symbols, int n_trash, std::uint64_t seed,
                 const Tolerances& tol = {});

struct ZooEntry {
  std::string name;
  std::string summary;
  LoadedModel model;
};

// The built-in models under their CLI names. The first call runs a
// self-check of every documented property (stationary distributions, word
// probabilities, wordlists, the quantum/classical pair generating the same
// process) and throws NumericalIntegrityError if any fails.
const std::vector<ZooEntry>& zoo_entries();

// Look up "name" or "name@param" (e.g. "loose_hmm@0.3", "iid_bit@0.25").
// Parameterless models reject a parameter.
LoadedModel zoo_model(const std::string& ref, const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
