#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/model_zoo.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/random.hpp"
#include "ghmm_canon/vectorize.hpp"

using namespace ghmm_canon;
using cd = std::complex<double>;

namespace {

std::vector<Word> words_up_to(int n_symbols, int max_len) {
  std::vector<Word> out = {{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) >= max_len) continue;
    for (int x = 0; x < n_symbols; ++x) {
      Word c = out[i];
      c.push_back(x);
      out.push_back(c);
    }
  }
  return out;
}

std::vector<cd> sorted_eigenvalues(const Eigen::MatrixXcd& M) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  std::vector<cd> ev(es.eigenvalues().data(), es.eigenvalues().data() + M.rows());
  std::sort(ev.begin(), ev.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

} // namespace

TEST_CASE("operator basis is orthogonal with the advertised normalization") {
  for (int d : {2, 3, 4}) {
    auto basis = build_basis(d);
    REQUIRE(static_cast<int>(basis.gamma.size()) == d * d - 1);
    CHECK(basis.xi == doctest::Approx((d - 1.0) / d).epsilon(1e-15));
    for (std::size_t m = 0; m < basis.gamma.size(); ++m) {
      const auto& G = basis.gamma[m];
      CHECK(std::abs(G.trace()) < 1e-12);
      CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      for (std::size_t n = 0; n < basis.gamma.size(); ++n) {
        cd ip = (G * basis.gamma[n]).trace();
        double expected = (m == n) ? basis.xi : 0.0;
        CHECK(std::abs(ip - cd(expected, 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("bloch coordinates invert exactly and see purity") {
  auto basis = build_basis(3);
  Rng rng(17);
  Eigen::MatrixXcd H = ginibre(3, 3, rng);
  H = ((H + H.adjoint()) / 2.0).eval();

  auto v = to_bloch(H, basis);
  CHECK(v.c == doctest::Approx(H.trace().real()).epsilon(1e-12));
  auto back = from_bloch(v, basis);
  CHECK((back - H).cwiseAbs().maxCoeff() < 1e-10);

  // Maximally mixed: origin. Pure: unit sphere.
  auto mixed = to_bloch(Eigen::MatrixXcd::Identity(3, 3) / 3.0, basis);
  CHECK(mixed.b.norm() < 1e-12);
  Eigen::VectorXcd psi(3);
  psi << cd(1, 1), cd(0, 2), cd(-1, 0);
  auto pure = to_bloch(DensityMatrix::pure(psi).entries(), basis);
  CHECK(pure.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure.b.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("depolarizing channel contracts the sphere to the origin") {
  Alphabet one({"a"});
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd X(2, 2), Y(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Y << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
  Z << 1, 0, 0, -1;
  Qhmm dep(one, DensityMatrix(I / 2.0), {{I / 2.0, X / 2.0, Y / 2.0, Z / 2.0}});

  auto basis = build_basis(2);
  auto G = subchannel_to_bloch_matrix(dep, 0, basis);
  REQUIRE(G.rows() == 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double expected = (i == 0 && j == 0) ? 1.0 : 0.0;
      CHECK(G(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("bloch, liouville and direct probabilities coincide") {
  for (int seed : {1, 2, 3, 4, 5}) {
    auto q = random_qhmm(2, 2, seed % 2 + 1, static_cast<std::uint64_t>(seed));
    auto bloch = qhmm_to_ghmm_bloch(q);
    auto liou = qhmm_to_ghmm_liouville(q);
    REQUIRE(bloch.dim() == 4);
    REQUIRE(liou.source_dim == 2);

    for (const Word& w : words_up_to(2, 4)) {
      double direct = word_probability_q(q, w);
      CHECK(word_probability(bloch, w) == doctest::Approx(direct).epsilon(1e-10));
      CHECK(word_probability(liou, w) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("bloch and liouville representations share their spectrum") {
  auto q = random_qhmm(2, 2, 2, 314);
  auto bloch = qhmm_to_ghmm_bloch(q);
  auto liou = qhmm_to_ghmm_liouville(q);

  Eigen::MatrixXcd bloch_total = bloch.total().cast<cd>();
  Eigen::MatrixXcd liou_total = Eigen::MatrixXcd::Zero(4, 4);
  for (const auto& T : liou.transitions) liou_total += T;

  auto eb = sorted_eigenvalues(bloch_total);
  auto el = sorted_eigenvalues(liou_total);
  REQUIRE(eb.size() == el.size());
  for (std::size_t i = 0; i < eb.size(); ++i) CHECK(std::abs(eb[i] - el[i]) < 1e-9);
}

TEST_CASE("all-ones gauge keeps the statistics") {
  auto q = random_qhmm(2, 2, 1, 99);
  auto bloch = qhmm_to_ghmm_bloch(q);
  auto gauged = to_all_ones_gauge(bloch);
  CHECK((gauged.ones() - Eigen::VectorXd::Ones(gauged.dim())).cwiseAbs().maxCoeff() < 1e-12);
  for (const Word& w : words_up_to(2, 4)) {
    CHECK(word_probability(gauged, w) ==
          doctest::Approx(word_probability(bloch, w)).epsilon(1e-10));
  }
}

TEST_CASE("linear forms present every model kind uniformly") {
  auto tight = std::get<Ghmm>(zoo_model("tight_hmm"));
  auto tight_q = std::get<Qhmm>(zoo_model("tight_qhmm"));
  auto lf_g = linear_form(tight);
  auto lf_q = linear_form(tight_q);
  auto lf_l = linear_form(qhmm_to_ghmm_liouville(tight_q));

  CHECK(lf_g.source == LinearForm::Source::ghmm);
  CHECK(lf_q.source == LinearForm::Source::qhmm);
  CHECK(lf_g.source_dim == 4);
  CHECK(lf_q.source_dim == 2);
  CHECK(lf_l.source_dim == 2);

  for (const Word& w : words_up_to(4, 2)) {
    double expected = word_probability(tight, w);
    CHECK(word_probability(lf_g, w) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(word_probability(lf_q, w) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(word_probability(lf_l, w) == doctest::Approx(expected).epsilon(1e-10));
  }
  for (int L = 0; L <= 5; ++L) {
    CHECK(normalization_check(lf_q, L) == doctest::Approx(1.0).epsilon(1e-10));
  }
}
