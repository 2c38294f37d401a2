#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/model_zoo.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/random.hpp"

using namespace ghmm_canon;
using cd = std::complex<double>;

namespace {

// Projective coin: measuring the memory in the computational basis and
// reporting the outcome. The memory collapses onto the reported basis state,
// so every later symbol repeats the first.
Qhmm projective_coin(double p0) {
  Eigen::MatrixXcd P0 = Eigen::MatrixXcd::Zero(2, 2), P1 = Eigen::MatrixXcd::Zero(2, 2);
  P0(0, 0) = 1.0;
  P1(1, 1) = 1.0;
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(2, 2);
  sigma(0, 0) = p0;
  sigma(1, 1) = 1.0 - p0;
  return Qhmm(Alphabet({"0", "1"}), DensityMatrix(sigma), {{P0}, {P1}});
}

} // namespace

TEST_CASE("density matrices are validated on construction") {
  Eigen::MatrixXcd ok = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DensityMatrix{ok});

  Eigen::MatrixXcd not_hermitian = ok;
  not_hermitian(0, 1) = cd(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{not_hermitian}, InputError);

  Eigen::MatrixXcd wrong_trace = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{wrong_trace}, InputError);

  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, InputError);

  Eigen::VectorXcd psi(2);
  psi << cd(3.0, 0.0), cd(0.0, 4.0);
  auto pure = DensityMatrix::pure(psi);
  CHECK(std::abs(pure.entries()(0, 0).real() - 9.0 / 25.0) < 1e-12);
  CHECK_THROWS_AS(DensityMatrix::pure(Eigen::VectorXcd::Zero(2)), InputError);
}

TEST_CASE("kraus completeness is enforced") {
  Alphabet bits({"0", "1"});
  Eigen::MatrixXcd P0 = Eigen::MatrixXcd::Zero(2, 2), P1 = Eigen::MatrixXcd::Zero(2, 2);
  P0(0, 0) = 1.0;
  P1(1, 1) = 1.0;
  DensityMatrix mixed(Eigen::MatrixXcd::Identity(2, 2) * 0.5);
  CHECK_NOTHROW(Qhmm(bits, mixed, {{P0}, {P1}}));
  CHECK_THROWS_AS(Qhmm(bits, mixed, {{P0}, {P0}}), InputError);      // sums to 2 P0
  CHECK_THROWS_AS(Qhmm(bits, mixed, {{P0}}), InputError);            // one list per symbol
  CHECK_THROWS_AS(Qhmm(bits, mixed, {{P0}, {Eigen::MatrixXcd::Zero(3, 3)}}), InputError);
}

TEST_CASE("projective coin has classical statistics with total collapse") {
  auto m = projective_coin(0.3);
  CHECK(word_probability_q(m, {}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(word_probability_q(m, {0}) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(word_probability_q(m, {0, 0}) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(word_probability_q(m, {0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(conditional_probability_q(m, {0}, {0}) == doctest::Approx(1.0).epsilon(1e-12));

  auto after0 = memory_update(m, m.sigma0(), 0);
  CHECK(std::abs(after0.entries()(0, 0) - cd(1.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS(conditional_probability_q(m, {0}, {0, 1}), DegenerateConditionError);
  CHECK(m.is_unifilar());
}

TEST_CASE("normalize_memory rejects vanishing traces") {
  CHECK_THROWS_AS(normalize_memory(Eigen::MatrixXcd::Zero(2, 2)),
                  DegenerateConditionError);
  auto n = normalize_memory(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(std::abs(n.entries().trace() - cd(1.0, 0.0)) < 1e-12);
}

TEST_CASE("unitary circuit index order is (memory, output, trash)") {
  // One-dimensional memory, two outputs, one trash slot: the circuit is a
  // plain 2x2 rotation and the Kraus operators are scalars read out of the
  // first column. P(0) = cos^2, and the model is memoryless.
  double theta = 0.7;
  Eigen::MatrixXcd U(2, 2);
  U << std::cos(theta), -std::sin(theta),
       std::sin(theta), std::cos(theta);
  UnitarySpec spec(1, 2, 1, U);
  auto m = kraus_from_unitary(spec, DensityMatrix(Eigen::MatrixXcd::Identity(1, 1)));

  double c2 = std::cos(theta) * std::cos(theta);
  CHECK(word_probability_q(m, {0}) == doctest::Approx(c2).epsilon(1e-12));
  CHECK(word_probability_q(m, {1, 1}) ==
        doctest::Approx((1 - c2) * (1 - c2)).epsilon(1e-12));

  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(UnitarySpec(1, 2, 1, not_unitary), InputError);
  CHECK_THROWS_AS(UnitarySpec(1, 3, 1, U), InputError); // 2 != 1*3*1
}

TEST_CASE("dilation and extraction invert each other") {
  auto m = std::get<Qhmm>(zoo_model("tight_qhmm"));
  for (int min_trash : {1, 2}) {
    auto spec = unitary_dilation(m, min_trash);
    CHECK(spec.memory_dim() == 2);
    CHECK(spec.output_dim() == 4);
    CHECK(spec.trash_dim() >= min_trash);
    auto back = kraus_from_unitary(spec, m.sigma0(), m.alphabet());

    std::vector<Word> stack = {{}};
    for (std::size_t i = 0; i < stack.size(); ++i) {
      Word w = stack[i];
      CHECK(word_probability_q(back, w) ==
            doctest::Approx(word_probability_q(m, w)).epsilon(1e-10));
      if (w.size() < 3) {
        for (int x = 0; x < 4; ++x) {
          Word c = w;
          c.push_back(x);
          stack.push_back(c);
        }
      }
    }
  }
}

TEST_CASE("padded dilations differ structurally but not statistically") {
  auto m = std::get<Qhmm>(zoo_model("tight_qhmm"));
  auto narrow = unitary_dilation(m, 1);
  auto wide = unitary_dilation(m, 2);
  CHECK(narrow.trash_dim() < wide.trash_dim());
  CHECK(narrow.U().rows() < wide.U().rows());
}

TEST_CASE("quantum sampling is reproducible and collapses the coin") {
  auto coin = projective_coin(0.5);
  Word a = sample_qhmm(coin, 50, 7);
  Word b = sample_qhmm(coin, 50, 7);
  CHECK(a == b);
  REQUIRE(a.size() == 50);
  for (int x : a) CHECK(x == a[0]);

  auto m = std::get<Qhmm>(zoo_model("tight_qhmm"));
  Word w = sample_qhmm(m, 500, 11);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    bool repeat = (w[i] == w[i + 1]);
    CHECK_FALSE(repeat); // the process never repeats a symbol
  }
}

TEST_CASE("with_start replaces the initial state") {
  auto m = projective_coin(0.3);
  Eigen::MatrixXcd pure0 = Eigen::MatrixXcd::Zero(2, 2);
  pure0(0, 0) = 1.0;
  auto m2 = m.with_start(DensityMatrix(pure0));
  CHECK(word_probability_q(m2, {0}) == doctest::Approx(1.0).epsilon(1e-12));
}
