#ifndef GHMM_CANON_VECTORIZE_HPP
#define GHMM_CANON_VECTORIZE_HPP

#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/types.hpp"

namespace ghmm_canon {

// Traceless Hermitian operator basis (generalized Gell-Mann matrices),
// rescaled so that tr(G_m G_n) = xi delta_{mn} with xi = (d-1)/d.
struct OperatorBasis {
  int d = 0;
  double xi = 0.0;
  std::vector<Eigen::MatrixXcd> gamma; // d*d - 1 elements
};

OperatorBasis build_basis(int d);

// Coordinates [c, b] of a Hermitian matrix: c = tr M, b_n = tr(M Gamma_n)/xi.
// Density matrices have c = 1 and |b| <= 1, with equality iff pure.
struct ExtendedBlochVector {
  double c = 0.0;
  Eigen::VectorXd b;
};

ExtendedBlochVector to_bloch(const Eigen::MatrixXcd& M, const OperatorBasis& basis,
                             const Tolerances& tol = {});
Eigen::MatrixXcd from_bloch(const ExtendedBlochVector& v, const OperatorBasis& basis);

// Real matrix G with row-vector action: bloch(A_x(M)) = bloch(M) * G for
// every Hermitian M. Row m is the image of the m-th basis element
// (I/d first, then the Gamma_n).
Eigen::MatrixXd subchannel_to_bloch_matrix(const Qhmm& model, int symbol_index,
                                           const OperatorBasis& basis,
                                           const Tolerances& tol = {});

// Real d^2-dimensional GHMM equivalent to the QHMM: eta0 = bloch(sigma0),
// T(x) = G(x), ones = e1 (the trace coordinate reads out the probability).
Ghmm qhmm_to_ghmm_bloch(const Qhmm& model, const Tolerances& tol = {});

// Complex-entried GHMM from column-major vectorization. Word probabilities
// are real up to the residue bound; kept separate from Ghmm because the
// shared real-matrix type cannot hold it.
struct LiouvilleGhmm {
  Alphabet alphabet;
  Eigen::RowVectorXcd eta0;
  std::vector<Eigen::MatrixXcd> transitions;
  Eigen::VectorXcd ones;
  int source_dim = 0; // Hilbert dimension d of the source model
};

LiouvilleGhmm qhmm_to_ghmm_liouville(const Qhmm& model, const Tolerances& tol = {});

double word_probability(const LiouvilleGhmm& model, const Word& w,
                        const Tolerances& tol = {});

// Similarity to the gauge where the final functional is the all-ones vector,
// via a scaled Householder reflection (orthogonal, perfectly conditioned).
Ghmm to_all_ones_gauge(const Ghmm& model, const Tolerances& tol = {});

// Uniform complex-linear presentation of any model:
// P(w) = initial * op(x0) * ... * op(x_{L-1}) * final_functional.
// Wordlist, canonical-form and equivalence machinery all run on this view.
struct LinearForm {
  enum class Source { ghmm, qhmm };

  Alphabet alphabet;
  Eigen::RowVectorXcd initial;
  std::vector<Eigen::MatrixXcd> ops;
  Eigen::VectorXcd final_functional;
  Source source = Source::ghmm;
  // D for a GHMM source, Hilbert-space d for a QHMM source; drives the
  // theoretical wordlist/horizon bounds.
  int source_dim = 0;

  int dim() const { return static_cast<int>(initial.size()); }
};

LinearForm linear_form(const Ghmm& model);
// QHMM operands are Bloch-vectorized: real, gauge-stable, d^2-dimensional.
LinearForm linear_form(const Qhmm& model, const Tolerances& tol = {});
LinearForm linear_form(const LiouvilleGhmm& model);

double word_probability(const LinearForm& model, const Word& w,
                        const Tolerances& tol = {});

// Sum of P(w) over all |w| = L (telescoped beyond the enumeration budget).
double normalization_check(const LinearForm& model, int L, const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
