#include "ghmm_canon/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghmm_canon/canonical.hpp"
#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/wordlist.hpp"

namespace ghmm_canon {

std::string to_string(Verdict v) {
  return v == Verdict::equal ? "equal" : "not_equal";
}

std::string to_string(EquivalenceMethod m) {
  switch (m) {
    case EquivalenceMethod::thm1: return "thm1";
    case EquivalenceMethod::length_bound: return "length_bound";
    case EquivalenceMethod::canonical: return "canonical";
  }
  return "?";
}

namespace {

struct WitnessScan {
  Word best_word;
  double best_delta = -1.0;
  double max_delta = 0.0;
  bool exhausted = false;
};

double leaf_probability(const LinearForm& m, const Eigen::RowVectorXcd& row,
                        const Tolerances& tol) {
  std::complex<double> z = row * m.final_functional;
  if (std::abs(z.imag()) > tol.imag_residue) {
    std::ostringstream os;
    os << "equivalence scan: imaginary residue " << z.imag() << " above bound "
       << tol.imag_residue;
    throw NumericalIntegrityError(os.str());
  }
  double p = z.real();
  if (p < 0.0 && p >= -tol.prob_floor) return 0.0;
  return p;
}

void scan_level(const LinearForm& a, const LinearForm& b,
                const Eigen::RowVectorXcd& ra, const Eigen::RowVectorXcd& rb,
                Word& prefix, int remaining, std::size_t& budget, WitnessScan& scan,
                const Tolerances& tol) {
  if (scan.exhausted) return;
  if (remaining == 0) {
    if (budget == 0) {
      scan.exhausted = true;
      return;
    }
    --budget;
    double pa = leaf_probability(a, ra, tol);
    double pb = leaf_probability(b, rb, tol);
    double delta = std::abs(pa - pb);
    scan.max_delta = std::max(scan.max_delta, delta);
    if (delta > scan.best_delta) {
      scan.best_delta = delta;
      scan.best_word = prefix;
    }
    return;
  }
  for (int x = 0; x < a.alphabet.size(); ++x) {
    prefix.push_back(x);
    scan_level(a, b, (ra * a.ops[static_cast<std::size_t>(x)]).eval(),
               (rb * b.ops[static_cast<std::size_t>(x)]).eval(), prefix,
               remaining - 1, budget, scan, tol);
    prefix.pop_back();
    if (scan.exhausted) return;
  }
}

// Shortest-level witness search: scan words level by level up to
// max_horizon, stopping after the first level containing a discrepancy
// above the comparison tolerance. Returns the argmax word of the scan.
WitnessScan find_witness(const LinearForm& a, const LinearForm& b, int max_horizon,
                         const Tolerances& tol) {
  WitnessScan scan;
  std::size_t budget = tol.enumeration_cap;
  Word prefix;
  for (int len = 0; len <= max_horizon; ++len) {
    scan_level(a, b, a.initial, b.initial, prefix, len, budget, scan, tol);
    if (scan.exhausted) break;
    if (scan.best_delta > tol.prob_compare) break;
  }
  return scan;
}

int horizon_dimension(const LinearForm& m) {
  if (m.source == LinearForm::Source::qhmm) return m.source_dim;
  return static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(m.source_dim)) - 1e-12));
}

void require_same_alphabet(const LinearForm& a, const LinearForm& b,
                           const char* where) {
  if (!(a.alphabet == b.alphabet)) {
    throw InputError(std::string(where) +
                     ": operands have different alphabets; no common process "
                     "to compare");
  }
}

// Zero-padded reindexing of a model onto a larger alphabet: the added
// symbols are never emitted, so the generated process is unchanged.
LinearForm extend_alphabet(const LinearForm& m, const Alphabet& target) {
  LinearForm out = m;
  out.alphabet = target;
  out.ops.assign(static_cast<std::size_t>(target.size()),
                 Eigen::MatrixXcd::Zero(m.dim(), m.dim()));
  for (int x = 0; x < m.alphabet.size(); ++x) {
    out.ops[static_cast<std::size_t>(target.index_of(m.alphabet.symbol(x)))] =
        m.ops[static_cast<std::size_t>(x)];
  }
  return out;
}

} // namespace

EquivalenceReport equivalent_thm1(const LinearForm& a, const LinearForm& b,
                                  const Tolerances& tol) {
  require_same_alphabet(a, b, "equivalent_thm1");
  EquivalenceReport report;
  report.method = EquivalenceMethod::thm1;
  report.alphabet = a.alphabet;

  MinimalWordlists la = minimal_wordlists(a, tol);
  MinimalWordlists lb = minimal_wordlists(b, tol);
  auto union_words = [](const std::vector<Word>& u, const std::vector<Word>& v) {
    std::vector<Word> out = u;
    out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end(), shortlex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<Word> histories = union_words(la.history, lb.history);
  std::vector<Word> futures = union_words(la.future, lb.future);

  std::size_t max_h = 0, max_f = 0;
  for (const auto& w : histories) max_h = std::max(max_h, w.size());
  for (const auto& w : futures) max_f = std::max(max_f, w.size());
  report.horizon_used = static_cast<int>(max_h + 1 + max_f);

  bool all_hold = true;
  double max_gap = 0.0;
  auto compare = [&](double va, double vb) {
    double gap = std::abs(va - vb);
    max_gap = std::max(max_gap, gap);
    if (gap > tol.prob_compare) all_hold = false;
  };

  // Marginals of the future words.
  for (const auto& f : futures) {
    compare(word_probability(a, f, tol), word_probability(b, f, tol));
  }
  // Conditionals P(f | h) and P(x f | h) across the union lists. A history
  // with zero probability in exactly one model is itself a discrepancy; with
  // zero in both it conditions nothing.
  for (const auto& h : histories) {
    double pha = word_probability(a, h, tol);
    double phb = word_probability(b, h, tol);
    compare(pha, phb);
    if (pha <= tol.prob_floor || phb <= tol.prob_floor) continue;
    for (const auto& f : futures) {
      for (int pre = -1; pre < a.alphabet.size(); ++pre) {
        Word joint = h;
        if (pre >= 0) joint.push_back(pre);
        joint.insert(joint.end(), f.begin(), f.end());
        compare(word_probability(a, joint, tol) / pha,
                word_probability(b, joint, tol) / phb);
      }
    }
  }

  report.max_discrepancy = max_gap;
  if (all_hold) {
    report.verdict = Verdict::equal;
    return report;
  }
  report.verdict = Verdict::not_equal;
  WitnessScan scan = find_witness(a, b, report.horizon_used, tol);
  report.witness = scan.best_word;
  report.witness_delta = std::max(scan.best_delta, 0.0);
  return report;
}

EquivalenceReport equivalent_by_length(const LinearForm& a, const LinearForm& b,
                                       const Tolerances& tol) {
  require_same_alphabet(a, b, "equivalent_by_length");
  EquivalenceReport report;
  report.method = EquivalenceMethod::length_bound;
  report.alphabet = a.alphabet;
  int d_max = std::max(horizon_dimension(a), horizon_dimension(b));
  int horizon = 2 * d_max * d_max - 1;
  report.horizon_used = horizon;

  double words = std::pow(static_cast<double>(a.alphabet.size()),
                          static_cast<double>(horizon));
  if (words > static_cast<double>(tol.enumeration_cap)) {
    std::ostringstream os;
    os << "equivalent_by_length: horizon " << horizon << " needs about " << words
       << " words, beyond the cap of " << tol.enumeration_cap
       << "; use the wordlist-based test instead";
    throw ResourceLimitError(os.str());
  }
  WitnessScan scan = find_witness(a, b, horizon, tol);
  if (scan.exhausted) {
    throw ResourceLimitError(
        "equivalent_by_length: enumeration budget ran out; use the "
        "wordlist-based test instead");
  }
  report.max_discrepancy = scan.max_delta;
  if (scan.best_delta > tol.prob_compare) {
    report.verdict = Verdict::not_equal;
    report.witness = scan.best_word;
    report.witness_delta = scan.best_delta;
  }
  return report;
}

EquivalenceReport equivalent_canonical(const LinearForm& a, const LinearForm& b,
                                       const Tolerances& tol) {
  EquivalenceReport report;
  report.method = EquivalenceMethod::canonical;

  LinearForm ea = a, eb = b;
  if (!(a.alphabet == b.alphabet)) {
    std::vector<Symbol> merged = a.alphabet.symbols();
    for (const auto& s : b.alphabet.symbols()) {
      if (!a.alphabet.contains(s)) merged.push_back(s);
    }
    Alphabet joint((merged));
    ea = extend_alphabet(a, joint);
    eb = extend_alphabet(b, joint);
  }
  report.alphabet = ea.alphabet;

  StandardGhmm ca = standard_ghmm(ea, tol);
  StandardGhmm cb = standard_ghmm(eb, tol);

  bool same_shape = ca.model.dim() == cb.model.dim() &&
                    ca.history_words == cb.history_words &&
                    ca.future_words == cb.future_words;
  double max_entry_gap = 0.0;
  if (same_shape) {
    max_entry_gap = (ca.model.eta0() - cb.model.eta0()).cwiseAbs().maxCoeff();
    for (int x = 0; x < ea.alphabet.size(); ++x) {
      max_entry_gap = std::max(
          max_entry_gap,
          (ca.model.transition(x) - cb.model.transition(x)).cwiseAbs().maxCoeff());
    }
  }
  report.max_discrepancy = max_entry_gap;
  if (same_shape && max_entry_gap <= tol.prob_compare) {
    report.verdict = Verdict::equal;
    return report;
  }
  report.verdict = Verdict::not_equal;
  int d_max = std::max(horizon_dimension(ea), horizon_dimension(eb));
  WitnessScan scan = find_witness(ea, eb, 2 * d_max * d_max - 1, tol);
  report.witness = scan.best_word;
  report.witness_delta = std::max(scan.best_delta, 0.0);
  if (!same_shape && report.max_discrepancy < scan.max_delta) {
    report.max_discrepancy = scan.max_delta;
  }
  return report;
}

} // namespace ghmm_canon
