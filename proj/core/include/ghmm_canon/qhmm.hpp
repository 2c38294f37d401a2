#ifndef GHMM_CANON_QHMM_HPP
#define GHMM_CANON_QHMM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/types.hpp"

namespace ghmm_canon {

// Unit-trace positive semidefinite matrix, validated on construction.
class DensityMatrix {
public:
  explicit DensityMatrix(Eigen::MatrixXcd entries, const Tolerances& tol = {});

  // Promote a state vector to the rank-1 density |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const Eigen::VectorXcd& psi, const Tolerances& tol = {});

  const Eigen::MatrixXcd& entries() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }

private:
  Eigen::MatrixXcd entries_;
};

// Quantum generator: a density-matrix memory evolved per emitted symbol x by
// the subchannel A_x(rho) = sum_y K_{xy} rho K_{xy}^dag. The y index runs
// over a trashed (unobserved) alphabet; a single Kraus operator per symbol
// makes the model unifilar. Completeness sum_{x,y} K^dag K = I is enforced.
class Qhmm {
public:
  Qhmm(Alphabet alphabet, DensityMatrix sigma0,
       std::vector<std::vector<Eigen::MatrixXcd>> kraus, const Tolerances& tol = {});

  const Alphabet& alphabet() const { return alphabet_; }
  int dim() const { return sigma0_.dim(); }
  const DensityMatrix& sigma0() const { return sigma0_; }
  const std::vector<Eigen::MatrixXcd>& kraus(int symbol_index) const {
    return kraus_.at(static_cast<std::size_t>(symbol_index));
  }
  const std::vector<std::vector<Eigen::MatrixXcd>>& kraus() const { return kraus_; }
  bool is_unifilar() const;

  Qhmm with_start(DensityMatrix sigma0, const Tolerances& tol = {}) const;

private:
  Alphabet alphabet_;
  DensityMatrix sigma0_;
  std::vector<std::vector<Eigen::MatrixXcd>> kraus_;
};

// Unitary circuit description of a QHMM step: one joint unitary on
// memory x output x trash, applied to the memory together with blank
// ancillas, after which the output subsystem is read and the trash
// discarded. Basis ordering: (m, x, y) -> m * (n_output * n_trash)
// + x * n_trash + y.
class UnitarySpec {
public:
  UnitarySpec(int memory_dim, int output_dim, int trash_dim, Eigen::MatrixXcd U,
              const Tolerances& tol = {});

  int memory_dim() const { return memory_dim_; }
  int output_dim() const { return output_dim_; }
  int trash_dim() const { return trash_dim_; }
  const Eigen::MatrixXcd& U() const { return U_; }

private:
  int memory_dim_, output_dim_, trash_dim_;
  Eigen::MatrixXcd U_;
};

// A_x applied to an arbitrary Hermitian matrix (not only states).
Eigen::MatrixXcd apply_subchannel(const Qhmm& model, int symbol_index,
                                  const Eigen::MatrixXcd& rho);

// P(w) = tr[A_w(sigma0)] with the word superoperator applied left to right.
double word_probability_q(const Qhmm& model, const Word& w, const Tolerances& tol = {});

// rho / tr(rho); refuses traces at or below the probability floor.
DensityMatrix normalize_memory(const Eigen::MatrixXcd& rho, const Tolerances& tol = {});

// Memory state after observing x: N(A_x(sigma)).
DensityMatrix memory_update(const Qhmm& model, const DensityMatrix& sigma,
                            int symbol_index, const Tolerances& tol = {});

// tr[A_future(N(A_history(sigma0)))] = P(history.future)/P(history).
double conditional_probability_q(const Qhmm& model, const Word& future,
                                 const Word& history, const Tolerances& tol = {});

// Extract the Kraus operators K_{xy} = (I x <x|<y|) U (I x |0>|0>) of a
// unitary circuit spec. Completeness holds automatically by unitarity.
Qhmm kraus_from_unitary(const UnitarySpec& spec, DensityMatrix sigma0,
                        std::optional<Alphabet> alphabet = std::nullopt,
                        const Tolerances& tol = {});

// Inverse direction: embed a QHMM's Kraus set into a unitary circuit by
// orthonormal completion of the blank-ancilla columns (deterministic).
// min_trash_dim > needed pads the trash register with zero Kraus operators,
// yielding a structurally different dilation of the same channel.
UnitarySpec unitary_dilation(const Qhmm& model, int min_trash_dim = 1,
                             const Tolerances& tol = {});

// Iteratively draw x with probability tr[A_x(sigma)] and update the memory.
Word sample_qhmm(const Qhmm& model, int length, std::uint64_t seed,
                 const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
