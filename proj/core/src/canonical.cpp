#include "ghmm_canon/canonical.hpp"

#include <cmath>
#include <sstream>

#include "ghmm_canon/errors.hpp"

namespace ghmm_canon {

namespace {

double guarded_real(std::complex<double> z, const Tolerances& tol, const char* where) {
  if (std::abs(z.imag()) > tol.imag_residue) {
    std::ostringstream os;
    os << where << ": imaginary residue " << z.imag();
    throw NumericalIntegrityError(os.str());
  }
  return z.real();
}

// Normalized history rows: each row divided by its word probability, so a
// row dotted with a future functional is a conditional probability.
Eigen::MatrixXcd normalized_history_rows(const LinearForm& model,
                                         const MinimalWordlists& lists,
                                         const Tolerances& tol) {
  Eigen::MatrixXcd rows = lists.history_rows;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    double p = guarded_real(rows.row(i) * model.final_functional, tol, "hf_matrix");
    if (std::abs(p) <= tol.prob_floor) {
      throw NumericalIntegrityError(
          "hf_matrix: a minimal history word has zero probability; the "
          "wordlist construction should have excluded it");
    }
    rows.row(i) /= p;
  }
  return rows;
}

Eigen::MatrixXd real_part_guarded(const Eigen::MatrixXcd& m, const Tolerances& tol,
                                  const char* where) {
  double residue = m.imag().cwiseAbs().maxCoeff();
  if (residue > tol.imag_residue) {
    std::ostringstream os;
    os << where << ": imaginary residue " << residue;
    throw NumericalIntegrityError(os.str());
  }
  return m.real();
}

} // namespace

Eigen::MatrixXd hf_matrix(const LinearForm& model, const MinimalWordlists& lists,
                          const Tolerances& tol) {
  Eigen::MatrixXcd rows = normalized_history_rows(model, lists, tol);
  return real_part_guarded(rows * lists.future_cols, tol, "hf_matrix");
}

namespace {

Eigen::MatrixXd inverse_with_condition_guard(const Eigen::MatrixXd& m,
                                             const Tolerances& tol,
                                             const char* where) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  double cond = (smin > 0) ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond < tol.condition_cap)) {
    std::ostringstream os;
    os << where << ": matrix is numerically singular (condition number " << cond
       << ", cap " << tol.condition_cap
       << "); this contradicts wordlist minimality";
    throw NumericalIntegrityError(os.str());
  }
  return svd.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
}

} // namespace

StandardGhmm standard_ghmm(const LinearForm& model, const Tolerances& tol) {
  MinimalWordlists lists = minimal_wordlists(model, tol);
  check_wordlist_bounds(model, lists, tol);
  const int ell = lists.ell_min;
  Eigen::MatrixXd hf = hf_matrix(model, lists, tol);
  Eigen::MatrixXd hf_inv = inverse_with_condition_guard(hf, tol, "standard_ghmm");

  Eigen::MatrixXcd norm_rows = normalized_history_rows(model, lists, tol);
  Eigen::RowVectorXd future_probs = real_part_guarded(
      (model.initial * lists.future_cols).eval(), tol, "standard_ghmm");
  Eigen::RowVectorXd gamma0 = future_probs * hf_inv;

  std::vector<Eigen::MatrixXd> b;
  b.reserve(model.ops.size());
  for (const auto& op : model.ops) {
    Eigen::MatrixXd crossed = real_part_guarded(
        (norm_rows * op * lists.future_cols).eval(), tol, "standard_ghmm");
    b.push_back(crossed * hf_inv);
  }

  StandardGhmm out{
      [&] {
        try {
          return Ghmm(model.alphabet, gamma0, std::move(b),
                      Eigen::VectorXd::Ones(ell), tol);
        } catch (const InputError& e) {
          throw NumericalIntegrityError(
              std::string("standard_ghmm: construction violated the GHMM "
                          "contracts: ") +
              e.what());
        }
      }(),
      lists.history,
      lists.future,
  };

  // The construction must reproduce the source process on short words; a
  // mismatch means the wordlists were not actually sufficient numerically.
  const int check_len = std::min(6, 2 * ell - 1);
  LinearForm rebuilt = linear_form(out.model);
  std::vector<Word> level{Word{}};
  for (int len = 0; len <= check_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : level) {
      double ps = word_probability(model, w, tol);
      double pr = word_probability(rebuilt, w, tol);
      if (std::abs(ps - pr) > tol.prob_compare) {
        std::ostringstream os;
        os << "standard_ghmm: canonical form mismatches the source by "
           << std::abs(ps - pr) << " on a length-" << w.size() << " word";
        throw NumericalIntegrityError(os.str());
      }
      if (len < check_len) {
        for (int x = 0; x < model.alphabet.size(); ++x) {
          Word child = w;
          child.push_back(x);
          next.push_back(std::move(child));
        }
      }
    }
    level = std::move(next);
    if (level.size() > tol.enumeration_cap) break;
  }
  return out;
}

StandardGhmm standard_ghmm(const Ghmm& model, const Tolerances& tol) {
  return standard_ghmm(linear_form(model), tol);
}

StandardGhmm standard_ghmm(const Qhmm& model, const Tolerances& tol) {
  return standard_ghmm(linear_form(model, tol), tol);
}

DimensionBound dimension_bound(const MinimalWordlists& lists) {
  DimensionBound bound;
  bound.ell_min = lists.ell_min;
  bound.d_min_lower =
      static_cast<int>(std::ceil(std::sqrt(static_cast<double>(lists.ell_min)) -
                                 1e-12));
  return bound;
}

EntropyWitnessReport entropy_dimension_witness(const Ghmm& model,
                                               const Tolerances& tol) {
  HmmFlags flags = model.flags(tol);
  if (!flags.is_hmm || !flags.is_unifilar || !flags.is_co_unifilar) {
    throw UnsupportedModelError(
        "entropy_dimension_witness: the latent-entropy argument needs a "
        "unifilar and co-unifilar HMM");
  }
  SteadyState steady = steady_state(model, tol);
  EntropyWitnessReport report;
  double h = 0.0;
  for (Eigen::Index i = 0; i < steady.pi.size(); ++i) {
    double p = steady.pi(i);
    if (p < -tol.structural) {
      throw NumericalIntegrityError(
          "entropy_dimension_witness: steady state has a negative entry");
    }
    if (p > 0) h -= p * std::log2(p);
  }
  report.entropy_bits = h;
  report.exceeds_log2.resize(static_cast<std::size_t>(model.dim()));
  for (int k = 1; k <= model.dim(); ++k) {
    report.exceeds_log2[static_cast<std::size_t>(k - 1)] = h > std::log2(k) + 1e-12;
  }
  report.dimension_floor = 1;
  while (report.dimension_floor < model.dim() &&
         h > std::log2(report.dimension_floor) + 1e-12) {
    ++report.dimension_floor;
  }
  return report;
}

} // namespace ghmm_canon
