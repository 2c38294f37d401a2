#include "ghmm_canon/vectorize.hpp"

#include <cmath>
#include <sstream>

#include "ghmm_canon/errors.hpp"

namespace ghmm_canon {

namespace {

double guarded_real(std::complex<double> z, double residue_bound, const char* where) {
  if (std::abs(z.imag()) > residue_bound) {
    std::ostringstream os;
    os << where << ": imaginary residue " << z.imag() << " above bound "
       << residue_bound;
    throw NumericalIntegrityError(os.str());
  }
  return z.real();
}

double clamp_probability(double p, const Tolerances& tol) {
  if (p < 0.0 && p >= -tol.prob_floor) return 0.0;
  return p;
}

} // namespace

OperatorBasis build_basis(int d) {
  if (d < 2) throw InputError("build_basis: need dimension at least 2");
  OperatorBasis basis;
  basis.d = d;
  basis.xi = static_cast<double>(d - 1) / d;
  // The standard Gell-Mann families satisfy tr(G^2) = 2; rescale to xi.
  const double scale = std::sqrt(basis.xi / 2.0);
  const std::complex<double> I(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.gamma.push_back(scale * sym);
      Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(d, d);
      asym(j, k) = -I;
      asym(k, j) = I;
      basis.gamma.push_back(scale * asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
    double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -norm * l;
    basis.gamma.push_back(scale * diag);
  }
  return basis;
}

ExtendedBlochVector to_bloch(const Eigen::MatrixXcd& M, const OperatorBasis& basis,
                             const Tolerances& tol) {
  if (M.rows() != basis.d || M.cols() != basis.d) {
    throw InputError("to_bloch: matrix does not match basis dimension");
  }
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > tol.structural) {
    throw InputError("to_bloch: matrix is not Hermitian within tolerance");
  }
  ExtendedBlochVector v;
  v.c = guarded_real(M.trace(), tol.imag_residue, "to_bloch");
  v.b.resize(static_cast<Eigen::Index>(basis.gamma.size()));
  for (std::size_t n = 0; n < basis.gamma.size(); ++n) {
    v.b(static_cast<Eigen::Index>(n)) =
        guarded_real((M * basis.gamma[n]).trace(), tol.imag_residue, "to_bloch") /
        basis.xi;
  }
  return v;
}

Eigen::MatrixXcd from_bloch(const ExtendedBlochVector& v, const OperatorBasis& basis) {
  if (v.b.size() != static_cast<Eigen::Index>(basis.gamma.size())) {
    throw InputError("from_bloch: coordinate vector does not match basis");
  }
  Eigen::MatrixXcd M =
      (v.c / basis.d) * Eigen::MatrixXcd::Identity(basis.d, basis.d);
  for (std::size_t n = 0; n < basis.gamma.size(); ++n) {
    M += v.b(static_cast<Eigen::Index>(n)) * basis.gamma[n];
  }
  return M;
}

Eigen::MatrixXd subchannel_to_bloch_matrix(const Qhmm& model, int symbol_index,
                                           const OperatorBasis& basis,
                                           const Tolerances& tol) {
  if (basis.d != model.dim()) {
    throw InputError("subchannel_to_bloch_matrix: basis dimension mismatch");
  }
  const int D = basis.d * basis.d;
  Eigen::MatrixXd G(D, D);
  // Probe with the basis elements themselves: linearity on Hermitian
  // operators makes this exact, no inversion needed.
  for (int m = 0; m < D; ++m) {
    Eigen::MatrixXcd probe =
        (m == 0) ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(basis.d, basis.d) /
                                    basis.d)
                 : basis.gamma[static_cast<std::size_t>(m - 1)];
    ExtendedBlochVector image =
        to_bloch(apply_subchannel(model, symbol_index, probe), basis, tol);
    G(m, 0) = image.c;
    G.row(m).segment(1, D - 1) = image.b.transpose();
  }
  return G;
}

Ghmm qhmm_to_ghmm_bloch(const Qhmm& model, const Tolerances& tol) {
  OperatorBasis basis = build_basis(model.dim());
  const int D = model.dim() * model.dim();
  std::vector<Eigen::MatrixXd> transitions;
  transitions.reserve(static_cast<std::size_t>(model.alphabet().size()));
  for (int x = 0; x < model.alphabet().size(); ++x) {
    transitions.push_back(subchannel_to_bloch_matrix(model, x, basis, tol));
  }
  ExtendedBlochVector s = to_bloch(model.sigma0().entries(), basis, tol);
  Eigen::RowVectorXd eta0(D);
  eta0(0) = s.c;
  eta0.segment(1, D - 1) = s.b.transpose();
  return Ghmm(model.alphabet(), eta0, std::move(transitions),
              Eigen::VectorXd::Unit(D, 0), tol);
}

namespace {

Eigen::VectorXcd vec_column_major(const Eigen::MatrixXcd& M) {
  return Eigen::Map<const Eigen::VectorXcd>(M.data(), M.size());
}

} // namespace

LiouvilleGhmm qhmm_to_ghmm_liouville(const Qhmm& model, const Tolerances& tol) {
  const int d = model.dim();
  const int D = d * d;
  LiouvilleGhmm out;
  out.alphabet = model.alphabet();
  out.source_dim = d;
  // Row-vector convention: states enter from the left, so each Kraus term
  // K . K^dag vectorizes to the transpose of K (x) conj(K).
  out.transitions.reserve(static_cast<std::size_t>(model.alphabet().size()));
  for (int x = 0; x < model.alphabet().size(); ++x) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(D, D);
    for (const auto& k : model.kraus(x)) {
      Eigen::MatrixXcd kron(D, D);
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          kron.block(a * d, b * d, d, d) = k(a, b) * k.conjugate();
        }
      }
      t += kron.transpose();
    }
    out.transitions.push_back(std::move(t));
  }
  out.eta0 = vec_column_major(model.sigma0().entries()).adjoint();
  out.ones = vec_column_major(Eigen::MatrixXcd::Identity(d, d));
  double check = std::abs(std::complex<double>(out.eta0 * out.ones) - 1.0);
  if (check > tol.structural) {
    throw NumericalIntegrityError(
        "qhmm_to_ghmm_liouville: vectorized normalization off by " +
        std::to_string(check));
  }
  return out;
}

double word_probability(const LiouvilleGhmm& model, const Word& w,
                        const Tolerances& tol) {
  Eigen::RowVectorXcd row = model.eta0;
  for (int x : w) {
    if (x < 0 || x >= model.alphabet.size()) {
      throw InputError("word_probability: symbol index out of range");
    }
    row = row * model.transitions[static_cast<std::size_t>(x)];
  }
  return clamp_probability(
      guarded_real(row * model.ones, tol.imag_residue, "word_probability(liouville)"),
      tol);
}

Ghmm to_all_ones_gauge(const Ghmm& model, const Tolerances& tol) {
  const int D = model.dim();
  double norm = model.ones().norm();
  if (norm <= tol.prob_floor) {
    throw InputError("to_all_ones_gauge: ones vector is numerically zero");
  }
  Eigen::VectorXd a = model.ones() / norm;
  Eigen::VectorXd u = Eigen::VectorXd::Constant(D, 1.0 / std::sqrt(static_cast<double>(D)));
  Eigen::VectorXd v = a - u;
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(D, D);
  double vn2 = v.squaredNorm();
  if (vn2 > 1e-24) H -= (2.0 / vn2) * (v * v.transpose());
  // H maps a to u; scale so the image of `ones` is exactly the all-ones vector.
  Eigen::MatrixXd S = (std::sqrt(static_cast<double>(D)) / norm) * H;
  return apply_similarity(model, S, tol);
}

LinearForm linear_form(const Ghmm& model) {
  LinearForm f;
  f.alphabet = model.alphabet();
  f.initial = model.eta0().cast<std::complex<double>>();
  f.ops.reserve(model.transitions().size());
  for (const auto& t : model.transitions()) f.ops.push_back(t.cast<std::complex<double>>());
  f.final_functional = model.ones().cast<std::complex<double>>();
  f.source = LinearForm::Source::ghmm;
  f.source_dim = model.dim();
  return f;
}

LinearForm linear_form(const Qhmm& model, const Tolerances& tol) {
  LinearForm f = linear_form(qhmm_to_ghmm_bloch(model, tol));
  f.source = LinearForm::Source::qhmm;
  f.source_dim = model.dim();
  return f;
}

LinearForm linear_form(const LiouvilleGhmm& model) {
  LinearForm f;
  f.alphabet = model.alphabet;
  f.initial = model.eta0;
  f.ops = model.transitions;
  f.final_functional = model.ones;
  f.source = LinearForm::Source::qhmm;
  f.source_dim = model.source_dim;
  return f;
}

double word_probability(const LinearForm& model, const Word& w,
                        const Tolerances& tol) {
  Eigen::RowVectorXcd row = model.initial;
  for (int x : w) {
    if (x < 0 || x >= model.alphabet.size()) {
      throw InputError("word_probability: symbol index out of range");
    }
    row = row * model.ops[static_cast<std::size_t>(x)];
  }
  return clamp_probability(
      guarded_real(row * model.final_functional, tol.imag_residue,
                   "word_probability(linear form)"),
      tol);
}

namespace {

double level_sum(const LinearForm& model, const Eigen::RowVectorXcd& row, int len,
                 const Tolerances& tol) {
  if (len == 0) {
    return guarded_real(row * model.final_functional, tol.imag_residue,
                        "normalization_check");
  }
  double sum = 0.0;
  for (const auto& op : model.ops) sum += level_sum(model, row * op, len - 1, tol);
  return sum;
}

} // namespace

double normalization_check(const LinearForm& model, int L, const Tolerances& tol) {
  if (L < 0) throw InputError("normalization_check: length must be nonnegative");
  double words = std::pow(static_cast<double>(model.alphabet.size()),
                          static_cast<double>(L));
  if (words > static_cast<double>(tol.enumeration_cap)) {
    Eigen::MatrixXcd total =
        Eigen::MatrixXcd::Zero(model.dim(), model.dim());
    for (const auto& op : model.ops) total += op;
    Eigen::RowVectorXcd row = model.initial;
    for (int i = 0; i < L; ++i) row = row * total;
    return guarded_real(row * model.final_functional, tol.imag_residue,
                        "normalization_check");
  }
  return level_sum(model, model.initial, L, tol);
}

} // namespace ghmm_canon
