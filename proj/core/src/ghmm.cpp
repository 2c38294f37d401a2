#include "ghmm_canon/ghmm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/random.hpp"

namespace ghmm_canon {

namespace {

double clamp_probability(double p, const Tolerances& tol) {
  if (p < 0.0 && p >= -tol.prob_floor) return 0.0;
  return p;
}

int count_nonzero(const Eigen::VectorXd& v, double tol) {
  int n = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > tol) ++n;
  return n;
}

} // namespace

Ghmm::Ghmm(Alphabet alphabet, Eigen::RowVectorXd eta0,
           std::vector<Eigen::MatrixXd> transitions, Eigen::VectorXd ones,
           const Tolerances& tol)
    : alphabet_(std::move(alphabet)),
      eta0_(std::move(eta0)),
      transitions_(std::move(transitions)),
      ones_(std::move(ones)) {
  const Eigen::Index d = eta0_.size();
  if (d < 1) throw InputError("ghmm: state dimension must be at least 1");
  if (static_cast<int>(transitions_.size()) != alphabet_.size()) {
    throw InputError("ghmm: need exactly one transition matrix per symbol");
  }
  if (ones_.size() != d) throw InputError("ghmm: ones vector has wrong length");
  for (const auto& t : transitions_) {
    if (t.rows() != d || t.cols() != d) {
      throw InputError("ghmm: transition matrix has wrong shape");
    }
  }
  total_ = Eigen::MatrixXd::Zero(d, d);
  for (const auto& t : transitions_) total_ += t;
  if ((total_ * ones_ - ones_).cwiseAbs().maxCoeff() > tol.structural) {
    throw InputError("ghmm: transition sum does not fix the ones vector");
  }
  double norm = eta0_ * ones_;
  if (std::abs(norm - 1.0) > tol.structural) {
    std::ostringstream os;
    os << "ghmm: eta0 * ones = " << norm << ", expected 1";
    throw InputError(os.str());
  }
}

HmmFlags Ghmm::flags(const Tolerances& tol) const {
  HmmFlags f;
  f.is_hmm = true;
  for (const auto& t : transitions_) {
    if (t.minCoeff() < -tol.structural) f.is_hmm = false;
  }
  if ((total_.rowwise().sum() - Eigen::VectorXd::Ones(dim())).cwiseAbs().maxCoeff() >
      tol.structural) {
    f.is_hmm = false;
  }
  if (!f.is_hmm) return f;
  f.is_unifilar = true;
  f.is_co_unifilar = true;
  for (const auto& t : transitions_) {
    for (int i = 0; i < dim(); ++i) {
      if (count_nonzero(t.row(i).transpose(), tol.structural) > 1) f.is_unifilar = false;
      if (count_nonzero(t.col(i), tol.structural) > 1) f.is_co_unifilar = false;
    }
  }
  return f;
}

Ghmm Ghmm::with_start(Eigen::RowVectorXd eta0, const Tolerances& tol) const {
  return Ghmm(alphabet_, std::move(eta0), transitions_, ones_, tol);
}

double word_probability(const Ghmm& model, const Word& w, const Tolerances& tol) {
  Eigen::RowVectorXd row = model.eta0();
  for (int x : w) {
    if (x < 0 || x >= model.alphabet().size()) {
      throw InputError("word_probability: symbol index out of range");
    }
    row = row * model.transition(x);
  }
  return clamp_probability(row * model.ones(), tol);
}

double conditional_probability(const Ghmm& model, const Word& future,
                               const Word& history, const Tolerances& tol) {
  double ph = word_probability(model, history, tol);
  if (ph <= tol.prob_floor) {
    throw DegenerateConditionError(
        "conditional_probability: history has probability " + std::to_string(ph) +
        ", cannot condition");
  }
  Word joint = history;
  joint.insert(joint.end(), future.begin(), future.end());
  return clamp_probability(word_probability(model, joint, tol) / ph, tol);
}

namespace {

// Cesaro-averaged power iteration; fallback when the eigensolver result is
// not accurate enough (defective or badly conditioned T).
std::optional<Eigen::RowVectorXd> steady_by_power_iteration(const Ghmm& model,
                                                            const Tolerances& tol) {
  const int d = model.dim();
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Constant(d, 1.0 / d);
  double s = v * model.ones();
  if (std::abs(s) > tol.prob_floor) v /= s;
  Eigen::RowVectorXd avg = v;
  for (int it = 0; it < 20000; ++it) {
    v = v * model.total();
    double n = v * model.ones();
    if (std::abs(n) < tol.prob_floor) return std::nullopt;
    v /= n;
    avg = 0.5 * (avg * model.total()) + 0.5 * v;
    double an = avg * model.ones();
    if (std::abs(an) < tol.prob_floor) return std::nullopt;
    avg /= an;
    if (((avg * model.total()) - avg).cwiseAbs().maxCoeff() < 1e-13) return avg;
  }
  Eigen::RowVectorXd candidate = avg;
  if (((candidate * model.total()) - candidate).cwiseAbs().maxCoeff() < 1e-10) {
    return candidate;
  }
  return std::nullopt;
}

} // namespace

SteadyState steady_state(const Ghmm& model, const Tolerances& tol) {
  const int d = model.dim();
  Eigen::EigenSolver<Eigen::MatrixXd> es(model.total().transpose());
  if (es.info() != Eigen::Success) {
    throw NumericalIntegrityError("steady_state: eigensolver failed to converge");
  }
  std::vector<int> unit;
  for (int i = 0; i < d; ++i) {
    if (std::abs(es.eigenvalues()(i) - std::complex<double>(1.0, 0.0)) < 1e-9) {
      unit.push_back(i);
    }
  }
  if (unit.empty()) {
    throw NumericalIntegrityError(
        "steady_state: no unit eigenvalue found, the model violates its own "
        "normalization contract");
  }
  if (unit.size() > 1) {
    std::ostringstream os;
    os << "steady_state: unit eigenvalue has multiplicity " << unit.size()
       << "; left eigenvectors:";
    for (int i : unit) {
      os << " [";
      for (int j = 0; j < d; ++j) {
        if (j > 0) os << ", ";
        os << es.eigenvectors()(j, i).real();
      }
      os << "]";
    }
    throw DegenerateConditionError(os.str());
  }
  Eigen::VectorXcd v = es.eigenvectors().col(unit[0]);
  double imag = v.imag().cwiseAbs().maxCoeff();
  if (imag > tol.imag_residue) {
    throw NumericalIntegrityError("steady_state: complex residue " +
                                  std::to_string(imag) + " in the unit eigenvector");
  }
  Eigen::RowVectorXd pi = v.real().transpose();
  double norm = pi * model.ones();
  if (std::abs(norm) < tol.prob_floor) {
    throw DegenerateConditionError(
        "steady_state: the unit left eigenvector is orthogonal to ones and "
        "cannot be normalized");
  }
  pi /= norm;
  if (((pi * model.total()) - pi).cwiseAbs().maxCoeff() > 1e-10) {
    auto refined = steady_by_power_iteration(model, tol);
    if (!refined) {
      throw NumericalIntegrityError(
          "steady_state: residual above 1e-10 and power iteration did not recover");
    }
    pi = *refined;
  }
  return SteadyState{pi};
}

namespace {

// Visit all words of length exactly `len` in lex order, carrying the row
// product down the tree. Returns false when the budget ran out.
template <typename Visitor>
bool visit_level(const Ghmm& model, Eigen::RowVectorXd row, Word& prefix, int len,
                 std::size_t& budget, Visitor&& visit) {
  if (len == 0) {
    if (budget == 0) return false;
    --budget;
    return visit(prefix, row);
  }
  for (int x = 0; x < model.alphabet().size(); ++x) {
    prefix.push_back(x);
    bool keep_going =
        visit_level(model, (row * model.transition(x)).eval(), prefix, len - 1,
                    budget, visit);
    prefix.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

} // namespace

ValidationReport validate(const Ghmm& model, int max_len, const Tolerances& tol) {
  if (max_len < 0) throw InputError("validate: max_len must be nonnegative");
  ValidationReport report;
  report.max_len_checked = max_len;
  report.structure_ok =
      (model.total() * model.ones() - model.ones()).cwiseAbs().maxCoeff() <=
          tol.structural &&
      std::abs(model.eta0() * model.ones() - 1.0) <= tol.structural;
  report.nonneg_ok = true;
  report.worst_probability = 1.0;
  std::size_t budget = tol.enumeration_cap;
  Word prefix;
  for (int len = 0; len <= max_len && report.nonneg_ok; ++len) {
    bool complete = visit_level(
        model, model.eta0(), prefix, len, budget,
        [&](const Word& w, const Eigen::RowVectorXd& row) {
          double p = row * model.ones();
          if (p < report.worst_probability) report.worst_probability = p;
          if (p < -tol.prob_floor) {
            report.nonneg_ok = false;
            report.first_violation = w;
            return false;
          }
          return true;
        });
    if (!complete && report.nonneg_ok) {
      report.truncated = true;
      report.max_len_checked = len - 1;
      break;
    }
  }
  return report;
}

double normalization_check(const Ghmm& model, int L, const Tolerances& tol) {
  if (L < 0) throw InputError("normalization_check: length must be nonnegative");
  double words = std::pow(static_cast<double>(model.alphabet().size()),
                          static_cast<double>(L));
  if (words > static_cast<double>(tol.enumeration_cap)) {
    // Identical by linearity of the sum over length-L words.
    Eigen::RowVectorXd row = model.eta0();
    for (int i = 0; i < L; ++i) row = row * model.total();
    return row * model.ones();
  }
  double sum = 0.0;
  std::size_t budget = tol.enumeration_cap;
  Word prefix;
  visit_level(model, model.eta0(), prefix, L, budget,
              [&](const Word&, const Eigen::RowVectorXd& row) {
                sum += row * model.ones();
                return true;
              });
  return sum;
}

Ghmm apply_similarity(const Ghmm& model, const Eigen::MatrixXd& S,
                      const Tolerances& tol) {
  if (S.rows() != model.dim() || S.cols() != model.dim()) {
    throw InputError("apply_similarity: S has wrong shape");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  double smax = svd.singularValues()(0);
  if (smin <= 0.0 || smax / smin > tol.condition_cap) {
    throw DegenerateConditionError(
        "apply_similarity: S is singular or too ill-conditioned (cond = " +
        std::to_string(smin > 0 ? smax / smin : std::numeric_limits<double>::infinity()) +
        ")");
  }
  Eigen::MatrixXd Sinv = svd.solve(Eigen::MatrixXd::Identity(model.dim(), model.dim()));
  std::vector<Eigen::MatrixXd> transitions;
  transitions.reserve(model.transitions().size());
  for (const auto& t : model.transitions()) transitions.push_back(S * t * Sinv);
  return Ghmm(model.alphabet(), model.eta0() * Sinv, std::move(transitions),
              S * model.ones(), tol);
}

Word sample_hmm(const Ghmm& model, int length, std::uint64_t seed,
                const Tolerances& tol) {
  if (length < 0) throw InputError("sample_hmm: length must be nonnegative");
  HmmFlags f = model.flags(tol);
  if (!f.is_hmm) {
    throw UnsupportedModelError(
        "sample_hmm: model is not an HMM (negative entries or non-stochastic "
        "rows); sampling is undefined");
  }
  const int d = model.dim();
  Eigen::RowVectorXd start = model.eta0();
  for (int i = 0; i < d; ++i) {
    if (start(i) < -tol.structural) {
      throw UnsupportedModelError("sample_hmm: eta0 is not a probability vector");
    }
    if (start(i) < 0) start(i) = 0;
  }
  start /= start.sum();

  Rng rng(seed);
  auto draw_index = [&](const Eigen::RowVectorXd& weights) {
    double u = rng.uniform() * weights.sum();
    double acc = 0.0;
    for (int i = 0; i < weights.size(); ++i) {
      acc += weights(i);
      if (u < acc) return i;
    }
    return static_cast<int>(weights.size()) - 1;
  };

  int state = draw_index(start);
  Word w;
  w.reserve(static_cast<std::size_t>(length));
  const int n_symbols = model.alphabet().size();
  Eigen::RowVectorXd step(n_symbols * d);
  for (int i = 0; i < length; ++i) {
    for (int x = 0; x < n_symbols; ++x) {
      step.segment(x * d, d) = model.transition(x).row(state);
    }
    int pick = draw_index(step);
    w.push_back(pick / d);
    state = pick % d;
  }
  return w;
}

} // namespace ghmm_canon
