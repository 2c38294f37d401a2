#include "ghmm_canon/model_zoo.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>

#include "ghmm_canon/canonical.hpp"
#include "ghmm_canon/equivalence.hpp"
#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/random.hpp"
#include "ghmm_canon/vectorize.hpp"
#include "ghmm_canon/wordlist.hpp"

namespace ghmm_canon {

namespace {

[[noreturn]] void check_failed(const std::string& what) {
  throw NumericalIntegrityError("model zoo self-check: " + what);
}

void check(bool ok, const char* what) {
  if (!ok) check_failed(what);
}

void check_near(double actual, double expected, double tol, const char* what) {
  if (std::abs(actual - expected) > tol) {
    std::ostringstream os;
    os << what << ": got " << actual << ", expected " << expected;
    check_failed(os.str());
  }
}

std::vector<Symbol> four_symbols() { return {"0", "1", "2", "3"}; }

// The qubit embeddings of the four no-repeat states. psi2 and psi3 are
// fixed linear combinations of psi0 and psi1, so a 2-dimensional memory
// carries all four; every pairwise overlap has squared modulus 1/3.
std::vector<Eigen::Vector2cd> tetrahedron_states() {
  const std::complex<double> g(0.5, 0.5 / std::sqrt(3.0));
  const std::complex<double> phase = std::polar(1.0, -M_PI / 3.0);
  Eigen::Vector2cd psi0(1.0, 0.0);
  Eigen::Vector2cd psi1(g, std::sqrt(2.0 / 3.0));
  Eigen::Vector2cd psi2 = psi0 - psi1;
  Eigen::Vector2cd psi3 = psi0 - phase * psi1;
  return {psi0, psi1, psi2, psi3};
}

void verify_zoo();

} // namespace

Ghmm tight_example_hmm(const Tolerances& tol) {
  Alphabet alphabet(four_symbols());
  std::vector<Eigen::MatrixXd> transitions;
  for (int x = 0; x < 4; ++x) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      if (i != x) T(i, x) = 1.0 / 3.0;
    }
    transitions.push_back(std::move(T));
  }
  Eigen::RowVectorXd eta0 = Eigen::RowVectorXd::Constant(4, 0.25);
  return Ghmm(std::move(alphabet), std::move(eta0), std::move(transitions),
              Eigen::VectorXd::Ones(4), tol);
}

Qhmm tight_example_qhmm(const Tolerances& tol) {
  auto psi = tetrahedron_states();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    check_near(psi[i].squaredNorm(), 1.0, tol.structural,
               "tetrahedron state norm");
    for (std::size_t j = i + 1; j < psi.size(); ++j) {
      check_near(std::norm(psi[i].dot(psi[j])), 1.0 / 3.0, tol.structural,
                 "tetrahedron overlap");
    }
  }

  // K_x is fixed by its action on the psi0/psi1 basis: it annihilates
  // psi_x and sends every other psi_i to psi_x (up to the uniform 1/sqrt(3)
  // amplitude and a phase on psi3's preimages).
  const double a = 1.0 / std::sqrt(3.0);
  const std::complex<double> phase = std::polar(1.0, M_PI / 3.0);
  Eigen::Matrix2cd B;
  B.col(0) = psi[0];
  B.col(1) = psi[1];
  Eigen::Matrix2cd Binv = B.inverse();

  auto kraus_for = [&](const Eigen::Vector2cd& image0,
                       const Eigen::Vector2cd& image1) {
    Eigen::Matrix2cd targets;
    targets.col(0) = image0;
    targets.col(1) = image1;
    return Eigen::MatrixXcd(targets * Binv);
  };

  std::vector<std::vector<Eigen::MatrixXcd>> kraus;
  kraus.push_back({kraus_for(Eigen::Vector2cd::Zero(), a * psi[0])});
  kraus.push_back({kraus_for(a * psi[1], Eigen::Vector2cd::Zero())});
  kraus.push_back({kraus_for(a * psi[2], a * psi[2])});
  kraus.push_back({kraus_for(a * psi[3], a * phase * psi[3])});

  Eigen::MatrixXcd sigma0 = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& v : psi) sigma0 += 0.25 * v * v.adjoint();
  check((sigma0 - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < tol.structural,
        "tetrahedron average is not the maximally mixed state");

  return Qhmm(Alphabet(four_symbols()), DensityMatrix(sigma0, tol),
              std::move(kraus), tol);
}

Ghmm loose_example_hmm(double p, LooseStart start, const Tolerances& tol) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("loose_example_hmm: p must lie in [0, 1]");
  }
  Alphabet alphabet(std::vector<Symbol>{"0", "1"});
  Eigen::MatrixXd T0 = Eigen::MatrixXd::Zero(4, 4);
  T0(0, 0) = p;
  Eigen::MatrixXd T1 = Eigen::MatrixXd::Zero(4, 4);
  T1(0, 1) = 1.0 - p;
  T1(1, 2) = 1.0;
  T1(2, 3) = 1.0;
  T1(3, 0) = 1.0;
  Eigen::RowVectorXd eta0(4);
  if (start == LooseStart::state_a) {
    eta0 << 1.0, 0.0, 0.0, 0.0;
  } else {
    eta0 << 1.0, 1.0 - p, 1.0 - p, 1.0 - p;
    eta0 /= 4.0 - 3.0 * p;
  }
  return Ghmm(std::move(alphabet), std::move(eta0), {std::move(T0), std::move(T1)},
              Eigen::VectorXd::Ones(4), tol);
}

Ghmm iid_bit_model(double q, const Tolerances& tol) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InputError("iid_bit_model: q must lie in [0, 1]");
  }
  Eigen::MatrixXd T0(1, 1), T1(1, 1);
  T0 << q;
  T1 << 1.0 - q;
  return Ghmm(Alphabet(std::vector<Symbol>{"0", "1"}),
              Eigen::RowVectorXd::Ones(1), {std::move(T0), std::move(T1)},
              Eigen::VectorXd::Ones(1), tol);
}

Qhmm random_qhmm(int d, int n_symbols, int n_trash, std::uint64_t seed,
                 const Tolerances& tol) {
  if (d < 2) throw InputError("random_qhmm: d must be at least 2");
  if (n_symbols < 1 || n_trash < 1) {
    throw InputError("random_qhmm: need at least one symbol and one trash state");
  }
  Rng rng(seed);
  Eigen::MatrixXcd U = haar_unitary(d * n_symbols * n_trash, rng);
  DensityMatrix sigma0(random_density_matrix(d, rng), tol);
  UnitarySpec spec(d, n_symbols, n_trash, std::move(U), tol);
  return kraus_from_unitary(spec, std::move(sigma0), std::nullopt, tol);
}

namespace {

void verify_zoo() {
  const Tolerances tol;
  const double eps = 1e-9;

  Ghmm tight = tight_example_hmm(tol);
  HmmFlags tf = tight.flags(tol);
  // Not co-unifilar: emitting x lands in state x from any of three
  // predecessors. That keeps the latent-entropy dimension bound out of the
  // way of the two-dimensional quantum realization.
  check(tf.is_hmm && tf.is_unifilar && !tf.is_co_unifilar,
        "tight model must be a unifilar, non-co-unifilar HMM");
  SteadyState pi = steady_state(tight, tol);
  for (int i = 0; i < 4; ++i) {
    check_near(pi.pi(i), 0.25, eps, "tight stationary distribution");
  }
  check_near(word_probability(tight, Word{1}, tol), 0.25, eps, "tight P(1)");
  check_near(word_probability(tight, Word{1, 1}, tol), 0.0, eps, "tight P(11)");
  MinimalWordlists tight_lists = minimal_wordlists(linear_form(tight), tol);
  check(tight_lists.ell_min == 4, "tight ell_min must be 4");
  std::vector<Word> expect = {{}, {0}, {1}, {2}};
  check(tight_lists.history == expect && tight_lists.future == expect,
        "tight minimal wordlists");

  Qhmm tq = tight_example_qhmm(tol);
  check(tq.dim() == 2, "tight quantum model must live on a qubit");
  check(tq.is_unifilar(), "tight quantum model must be unifilar");
  check_near(word_probability_q(tq, Word{1}, tol), 0.25, eps, "tight quantum P(1)");
  check_near(word_probability_q(tq, Word{1, 1}, tol), 0.0, eps,
             "tight quantum P(11)");
  EquivalenceReport pair =
      equivalent_canonical(linear_form(tight), linear_form(tq, tol), tol);
  check(pair.equal(), "tight classical and quantum models must generate the "
                      "same process");

  Ghmm loose = loose_example_hmm(0.5, LooseStart::state_a, tol);
  HmmFlags lf = loose.flags(tol);
  check(lf.is_hmm && lf.is_unifilar && lf.is_co_unifilar,
        "loose model must be a unifilar and co-unifilar HMM");
  SteadyState lpi = steady_state(loose, tol);
  Eigen::RowVectorXd formula(4);
  formula << 1.0, 0.5, 0.5, 0.5;
  formula /= 2.5;
  check((lpi.pi - formula).cwiseAbs().maxCoeff() < eps,
        "loose stationary distribution formula");
  MinimalWordlists loose_lists = minimal_wordlists(linear_form(loose), tol);
  check(loose_lists.ell_min == 4, "loose ell_min must be 4");
  std::vector<Word> lh = {{}, {1}, {1, 1}, {1, 1, 1}};
  std::vector<Word> lfut = {{}, {0}, {1, 0}, {1, 1, 0}};
  check(loose_lists.history == lh, "loose minimal history words");
  check(loose_lists.future == lfut, "loose minimal future words");

  Ghmm iid = iid_bit_model(0.5, tol);
  check_near(word_probability(iid, Word{0}, tol), 0.5, eps, "iid P(0)");
  check(minimal_wordlists(linear_form(iid), tol).ell_min == 1, "iid ell_min");
}

} // namespace

const std::vector<ZooEntry>& zoo_entries() {
  static const std::vector<ZooEntry> entries = [] {
    verify_zoo();
    std::vector<ZooEntry> out;
    out.push_back({"tight_hmm",
                   "no-repeat process on four symbols; classically minimal "
                   "at four latent states",
                   tight_example_hmm()});
    out.push_back({"tight_qhmm",
                   "the same no-repeat process on a two-dimensional quantum "
                   "memory",
                   tight_example_qhmm()});
    out.push_back({"loose_hmm",
                   "four-state cycle emitting 1 on every hop, except the hub "
                   "state also emits 0 with probability p (default 0.5); "
                   "accepts @p",
                   loose_example_hmm(0.5)});
    out.push_back({"iid_bit",
                   "memoryless bit with P(0) = q (default 0.5); accepts @q",
                   iid_bit_model(0.5)});
    return out;
  }();
  return entries;
}

LoadedModel zoo_model(const std::string& ref, const Tolerances& tol) {
  std::string name = ref;
  std::optional<double> param;
  if (auto at = ref.find('@'); at != std::string::npos) {
    name = ref.substr(0, at);
    std::string text = ref.substr(at + 1);
    try {
      std::size_t used = 0;
      param = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw InputError("zoo_model: cannot parse parameter \"" + text + "\"");
    }
  }
  if (name == "loose_hmm") {
    return loose_example_hmm(param.value_or(0.5), LooseStart::state_a, tol);
  }
  if (name == "iid_bit") return iid_bit_model(param.value_or(0.5), tol);
  if (param) {
    throw InputError("zoo_model: \"" + name + "\" takes no parameter");
  }
  if (name == "tight_hmm") return tight_example_hmm(tol);
  if (name == "tight_qhmm") return tight_example_qhmm(tol);
  throw InputError("zoo_model: unknown model \"" + name +
                   "\"; available: tight_hmm, tight_qhmm, loose_hmm, iid_bit");
}

} // namespace ghmm_canon
