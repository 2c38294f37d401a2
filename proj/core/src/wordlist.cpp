#include "ghmm_canon/wordlist.hpp"

#include <deque>
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

// Incrementally maintained full-row-rank stack with an SVD span test.
class NumericalSpan {
public:
  explicit NumericalSpan(Eigen::Index width, double rank_rel)
      : stack_(0, width), rank_rel_(rank_rel) {}

  // Appends v if it is numerically outside the current span.
  bool try_add(const Eigen::RowVectorXcd& v) {
    // A full span admits nothing; and with more rows than columns the SVD
    // below would no longer expose the dependent direction.
    if (stack_.rows() >= stack_.cols()) return false;
    Eigen::MatrixXcd candidate(stack_.rows() + 1, stack_.cols());
    candidate.topRows(stack_.rows()) = stack_;
    candidate.row(stack_.rows()) = v;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(candidate);
    const auto& s = svd.singularValues();
    double cutoff = rank_rel_ * s(0);
    if (s(s.size() - 1) <= cutoff) return false;
    stack_ = std::move(candidate);
    return true;
  }

  Eigen::Index size() const { return stack_.rows(); }

private:
  Eigen::MatrixXcd stack_;
  double rank_rel_;
};

int numerical_rank(const Eigen::MatrixXcd& m, double rank_rel) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  double cutoff = rank_rel * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return rank;
}

Eigen::MatrixXcd without_row(const Eigen::MatrixXcd& m, Eigen::Index r) {
  Eigen::MatrixXcd out(m.rows() - 1, m.cols());
  out.topRows(r) = m.topRows(r);
  out.bottomRows(m.rows() - 1 - r) = m.bottomRows(m.rows() - 1 - r);
  return out;
}

Eigen::MatrixXcd without_col(const Eigen::MatrixXcd& m, Eigen::Index c) {
  Eigen::MatrixXcd out(m.rows(), m.cols() - 1);
  out.leftCols(c) = m.leftCols(c);
  out.rightCols(m.cols() - 1 - c) = m.rightCols(m.cols() - 1 - c);
  return out;
}

template <typename T>
void erase_index(std::vector<T>& v, std::size_t i) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
}

} // namespace

InducedStateMatrix sufficient_history_wordlist(const LinearForm& model,
                                               const Tolerances& tol) {
  InducedStateMatrix out;
  NumericalSpan span(model.dim(), tol.rank_rel);
  std::deque<std::pair<Word, Eigen::RowVectorXcd>> queue;
  queue.emplace_back(Word{}, model.initial);
  std::vector<Eigen::RowVectorXcd> kept_rows;
  while (!queue.empty()) {
    auto [w, v] = std::move(queue.front());
    queue.pop_front();
    if (!span.try_add(v)) continue;
    double p = guarded_real(v * model.final_functional, tol,
                            "sufficient_history_wordlist");
    if (std::abs(p) <= tol.prob_floor) {
      // Independent direction, but useless as a conditioning word. Track the
      // span (children may still matter) without listing the word.
      ++out.zero_probability_excluded;
    } else {
      out.words.push_back(w);
      kept_rows.push_back(v);
    }
    for (int x = 0; x < model.alphabet.size(); ++x) {
      Word child = w;
      child.push_back(x);
      queue.emplace_back(std::move(child),
                         (v * model.ops[static_cast<std::size_t>(x)]).eval());
    }
  }
  out.rows.resize(static_cast<Eigen::Index>(kept_rows.size()), model.dim());
  for (std::size_t i = 0; i < kept_rows.size(); ++i) {
    out.rows.row(static_cast<Eigen::Index>(i)) = kept_rows[i];
  }
  return out;
}

InducedFunctionalMatrix sufficient_future_wordlist(const LinearForm& model,
                                                   const Tolerances& tol) {
  InducedFunctionalMatrix out;
  NumericalSpan span(model.dim(), tol.rank_rel);
  std::deque<std::pair<Word, Eigen::VectorXcd>> queue;
  queue.emplace_back(Word{}, model.final_functional);
  std::vector<Eigen::VectorXcd> kept_cols;
  while (!queue.empty()) {
    auto [w, f] = std::move(queue.front());
    queue.pop_front();
    if (!span.try_add(f.transpose())) continue;
    out.words.push_back(w);
    kept_cols.push_back(f);
    for (int x = 0; x < model.alphabet.size(); ++x) {
      Word child;
      child.reserve(w.size() + 1);
      child.push_back(x);
      child.insert(child.end(), w.begin(), w.end());
      queue.emplace_back(std::move(child),
                         (model.ops[static_cast<std::size_t>(x)] * f).eval());
    }
  }
  out.cols.resize(model.dim(), static_cast<Eigen::Index>(kept_cols.size()));
  for (std::size_t i = 0; i < kept_cols.size(); ++i) {
    out.cols.col(static_cast<Eigen::Index>(i)) = kept_cols[i];
  }
  return out;
}

MinimalWordlists minimal_wordlists(const LinearForm& model,
                                   const InducedStateMatrix& history,
                                   const InducedFunctionalMatrix& future,
                                   const Tolerances& tol) {
  MinimalWordlists out;
  out.history = history.words;
  out.future = future.words;
  Eigen::MatrixXcd rows = history.rows;
  Eigen::MatrixXcd cols = future.cols;
  Eigen::MatrixXcd cross = rows * cols;
  int rank = numerical_rank(cross, tol.rank_rel);
  if (rank == 0) {
    throw NumericalIntegrityError(
        "minimal_wordlists: cross matrix has rank 0; a normalized model "
        "always interacts through the empty word");
  }
  // Drop history rows whose removal keeps the rank, scanning in wordlist
  // order; then the same for future columns against the surviving rows.
  for (std::size_t i = 0; i < out.history.size() && cross.rows() > rank;) {
    Eigen::MatrixXcd trimmed = without_row(cross, static_cast<Eigen::Index>(i));
    if (numerical_rank(trimmed, tol.rank_rel) == rank) {
      cross = std::move(trimmed);
      rows = without_row(rows, static_cast<Eigen::Index>(i));
      erase_index(out.history, i);
    } else {
      ++i;
    }
  }
  for (std::size_t j = 0; j < out.future.size() && cross.cols() > rank;) {
    Eigen::MatrixXcd trimmed = without_col(cross, static_cast<Eigen::Index>(j));
    if (numerical_rank(trimmed, tol.rank_rel) == rank) {
      cross = std::move(trimmed);
      cols = without_col(cols, static_cast<Eigen::Index>(j));
      erase_index(out.future, j);
    } else {
      ++j;
    }
  }
  if (static_cast<int>(out.history.size()) != rank ||
      static_cast<int>(out.future.size()) != rank ||
      numerical_rank(cross, tol.rank_rel) != rank) {
    std::ostringstream os;
    os << "minimal_wordlists: pruning ended with " << out.history.size()
       << " history and " << out.future.size() << " future words for rank "
       << rank << "; the greedy basis extraction failed";
    throw NumericalIntegrityError(os.str());
  }
  out.ell_min = rank;
  out.history_rows = std::move(rows);
  out.future_cols = std::move(cols);
  return out;
}

MinimalWordlists minimal_wordlists(const LinearForm& model, const Tolerances& tol) {
  return minimal_wordlists(model, sufficient_history_wordlist(model, tol),
                           sufficient_future_wordlist(model, tol), tol);
}

WordlistBoundsReport check_wordlist_bounds(const LinearForm& model,
                                           const MinimalWordlists& lists,
                                           const Tolerances&) {
  WordlistBoundsReport report;
  report.word_bound = (model.source == LinearForm::Source::qhmm)
                          ? model.source_dim * model.source_dim
                          : model.source_dim;
  report.length_bound = report.word_bound - 1;
  report.observed_words = lists.ell_min;
  std::size_t longest = 0;
  for (const auto& w : lists.history) longest = std::max(longest, w.size());
  for (const auto& w : lists.future) longest = std::max(longest, w.size());
  report.observed_max_length = static_cast<int>(longest);
  if (report.observed_words > report.word_bound ||
      report.observed_max_length > report.length_bound) {
    std::ostringstream os;
    os << "check_wordlist_bounds: got " << report.observed_words
       << " words (bound " << report.word_bound << ") with longest word "
       << report.observed_max_length << " (bound " << report.length_bound
       << "); these bounds are theorems, so the wordlist algorithm is buggy";
    throw NumericalIntegrityError(os.str());
  }
  return report;
}

} // namespace ghmm_canon
