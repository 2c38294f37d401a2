#include "ghmm_canon/qhmm.hpp"

#include <cmath>
#include <sstream>

#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/random.hpp"

namespace ghmm_canon {

namespace {

double real_trace(const Eigen::MatrixXcd& m, const Tolerances& tol,
                  const char* where) {
  std::complex<double> t = m.trace();
  if (std::abs(t.imag()) > tol.imag_residue) {
    std::ostringstream os;
    os << where << ": trace has imaginary residue " << t.imag()
       << " above tolerance " << tol.imag_residue;
    throw NumericalIntegrityError(os.str());
  }
  return t.real();
}

double clamp_probability(double p, const Tolerances& tol) {
  if (p < 0.0 && p >= -tol.prob_floor) return 0.0;
  return p;
}

} // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw InputError("density matrix must be square and nonempty");
  }
  double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.density) {
    throw InputError("density matrix is not Hermitian (deviation " +
                     std::to_string(herm) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.density) {
    throw InputError("density matrix has eigenvalue " +
                     std::to_string(es.eigenvalues().minCoeff()) + " below zero");
  }
  double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > tol.density || std::abs(entries_.trace().imag()) > tol.density) {
    throw InputError("density matrix trace is " + std::to_string(tr) +
                     ", expected 1");
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi, const Tolerances& tol) {
  double n = psi.squaredNorm();
  if (n <= tol.prob_floor) throw InputError("pure state vector is (numerically) zero");
  return DensityMatrix((psi * psi.adjoint()) / n, tol);
}

Qhmm::Qhmm(Alphabet alphabet, DensityMatrix sigma0,
           std::vector<std::vector<Eigen::MatrixXcd>> kraus, const Tolerances& tol)
    : alphabet_(std::move(alphabet)),
      sigma0_(std::move(sigma0)),
      kraus_(std::move(kraus)) {
  const int d = sigma0_.dim();
  if (static_cast<int>(kraus_.size()) != alphabet_.size()) {
    throw InputError("qhmm: need exactly one Kraus list per symbol");
  }
  Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& list : kraus_) {
    if (list.empty()) throw InputError("qhmm: empty Kraus list for a symbol");
    for (const auto& k : list) {
      if (k.rows() != d || k.cols() != d) {
        throw InputError("qhmm: Kraus operator has wrong shape");
      }
      completeness += k.adjoint() * k;
    }
  }
  double dev = (completeness - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol.structural) {
    throw InputError("qhmm: Kraus completeness violated by " + std::to_string(dev));
  }
}

bool Qhmm::is_unifilar() const {
  for (const auto& list : kraus_) {
    if (list.size() != 1) return false;
  }
  return true;
}

Qhmm Qhmm::with_start(DensityMatrix sigma0, const Tolerances& tol) const {
  return Qhmm(alphabet_, std::move(sigma0), kraus_, tol);
}

UnitarySpec::UnitarySpec(int memory_dim, int output_dim, int trash_dim,
                         Eigen::MatrixXcd U, const Tolerances& tol)
    : memory_dim_(memory_dim),
      output_dim_(output_dim),
      trash_dim_(trash_dim),
      U_(std::move(U)) {
  if (memory_dim_ < 1 || output_dim_ < 1 || trash_dim_ < 1) {
    throw InputError("unitary spec: dimensions must be positive");
  }
  const Eigen::Index n =
      static_cast<Eigen::Index>(memory_dim_) * output_dim_ * trash_dim_;
  if (U_.rows() != n || U_.cols() != n) {
    throw InputError("unitary spec: U must be square of size memory*output*trash");
  }
  double dev =
      (U_.adjoint() * U_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > tol.structural) {
    throw InputError("unitary spec: U is not unitary (deviation " +
                     std::to_string(dev) + ")");
  }
}

Eigen::MatrixXcd apply_subchannel(const Qhmm& model, int symbol_index,
                                  const Eigen::MatrixXcd& rho) {
  if (symbol_index < 0 || symbol_index >= model.alphabet().size()) {
    throw InputError("apply_subchannel: symbol index out of range");
  }
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) {
    throw InputError("apply_subchannel: state has wrong shape");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(model.dim(), model.dim());
  for (const auto& k : model.kraus(symbol_index)) out += k * rho * k.adjoint();
  return out;
}

double word_probability_q(const Qhmm& model, const Word& w, const Tolerances& tol) {
  Eigen::MatrixXcd rho = model.sigma0().entries();
  for (int x : w) rho = apply_subchannel(model, x, rho);
  return clamp_probability(real_trace(rho, tol, "word_probability_q"), tol);
}

DensityMatrix normalize_memory(const Eigen::MatrixXcd& rho, const Tolerances& tol) {
  double tr = real_trace(rho, tol, "normalize_memory");
  if (tr <= tol.prob_floor) {
    throw DegenerateConditionError("normalize_memory: trace " + std::to_string(tr) +
                                   " is numerically zero");
  }
  Eigen::MatrixXcd m = rho / tr;
  // The quotient of a PSD matrix by its trace is a density matrix up to
  // rounding; symmetrize before the constructor re-validates.
  return DensityMatrix(0.5 * (m + m.adjoint().eval()), tol);
}

DensityMatrix memory_update(const Qhmm& model, const DensityMatrix& sigma,
                            int symbol_index, const Tolerances& tol) {
  return normalize_memory(apply_subchannel(model, symbol_index, sigma.entries()), tol);
}

double conditional_probability_q(const Qhmm& model, const Word& future,
                                 const Word& history, const Tolerances& tol) {
  Eigen::MatrixXcd rho = model.sigma0().entries();
  for (int x : history) rho = apply_subchannel(model, x, rho);
  double ph = real_trace(rho, tol, "conditional_probability_q");
  if (ph <= tol.prob_floor) {
    throw DegenerateConditionError(
        "conditional_probability_q: history has probability " + std::to_string(ph));
  }
  rho /= ph;
  for (int x : future) rho = apply_subchannel(model, x, rho);
  return clamp_probability(real_trace(rho, tol, "conditional_probability_q"), tol);
}

Qhmm kraus_from_unitary(const UnitarySpec& spec, DensityMatrix sigma0,
                        std::optional<Alphabet> alphabet, const Tolerances& tol) {
  const int d = spec.memory_dim();
  const int nx = spec.output_dim();
  const int ny = spec.trash_dim();
  if (sigma0.dim() != d) {
    throw InputError("kraus_from_unitary: sigma0 dimension does not match memory");
  }
  Alphabet a = alphabet ? std::move(*alphabet) : [&] {
    std::vector<Symbol> symbols;
    for (int x = 0; x < nx; ++x) symbols.push_back(std::to_string(x));
    return Alphabet(symbols);
  }();
  if (a.size() != nx) {
    throw InputError("kraus_from_unitary: alphabet size does not match output_dim");
  }
  std::vector<std::vector<Eigen::MatrixXcd>> kraus(
      static_cast<std::size_t>(nx), std::vector<Eigen::MatrixXcd>());
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      Eigen::MatrixXcd k(d, d);
      for (int mo = 0; mo < d; ++mo) {
        for (int mi = 0; mi < d; ++mi) {
          k(mo, mi) = spec.U()(mo * nx * ny + x * ny + y, mi * nx * ny);
        }
      }
      kraus[static_cast<std::size_t>(x)].push_back(std::move(k));
    }
  }
  return Qhmm(std::move(a), std::move(sigma0), std::move(kraus), tol);
}

UnitarySpec unitary_dilation(const Qhmm& model, int min_trash_dim,
                             const Tolerances& tol) {
  if (min_trash_dim < 1) {
    throw InputError("unitary_dilation: min_trash_dim must be positive");
  }
  const int d = model.dim();
  const int nx = model.alphabet().size();
  int ny = min_trash_dim;
  for (int x = 0; x < nx; ++x) {
    ny = std::max(ny, static_cast<int>(model.kraus(x).size()));
  }
  const int n = d * nx * ny;
  // Columns with blank ancillas are fixed by the Kraus set; completeness
  // makes them orthonormal.
  Eigen::MatrixXcd fixed = Eigen::MatrixXcd::Zero(n, d);
  for (int mi = 0; mi < d; ++mi) {
    for (int x = 0; x < nx; ++x) {
      const auto& list = model.kraus(x);
      for (int y = 0; y < static_cast<int>(list.size()); ++y) {
        for (int mo = 0; mo < d; ++mo) {
          fixed(mo * nx * ny + x * ny + y, mi) = list[static_cast<std::size_t>(y)](mo, mi);
        }
      }
    }
  }
  // The remaining columns are an orthonormal basis of the complement,
  // obtained from a full SVD (deterministic, perfectly conditioned).
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(fixed, Eigen::ComputeFullU);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n, n);
  for (int mi = 0; mi < d; ++mi) U.col(mi * nx * ny) = fixed.col(mi);
  int take = d;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (c % (nx * ny) != 0) U.col(c) = svd.matrixU().col(take++);
  }
  return UnitarySpec(d, nx, ny, std::move(U), tol);
}

Word sample_qhmm(const Qhmm& model, int length, std::uint64_t seed,
                 const Tolerances& tol) {
  if (length < 0) throw InputError("sample_qhmm: length must be nonnegative");
  Rng rng(seed);
  Eigen::MatrixXcd sigma = model.sigma0().entries();
  const int nx = model.alphabet().size();
  Word w;
  w.reserve(static_cast<std::size_t>(length));
  std::vector<Eigen::MatrixXcd> branch(static_cast<std::size_t>(nx));
  for (int i = 0; i < length; ++i) {
    double total = 0.0;
    for (int x = 0; x < nx; ++x) {
      branch[static_cast<std::size_t>(x)] = apply_subchannel(model, x, sigma);
      total += std::max(0.0, real_trace(branch[static_cast<std::size_t>(x)], tol,
                                        "sample_qhmm"));
    }
    double u = rng.uniform() * total;
    double acc = 0.0;
    int pick = nx - 1;
    for (int x = 0; x < nx; ++x) {
      acc += std::max(0.0, real_trace(branch[static_cast<std::size_t>(x)], tol,
                                      "sample_qhmm"));
      if (u < acc) {
        pick = x;
        break;
      }
    }
    w.push_back(pick);
    sigma = branch[static_cast<std::size_t>(pick)];
    double tr = real_trace(sigma, tol, "sample_qhmm");
    if (tr <= tol.prob_floor) {
      throw DegenerateConditionError(
          "sample_qhmm: drew a branch of numerically zero probability");
    }
    sigma /= tr;
  }
  return w;
}

} // namespace ghmm_canon
