#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/canonical.hpp"
#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/model_zoo.hpp"

using namespace ghmm_canon;

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

double max_entry_gap(const StandardGhmm& a, const StandardGhmm& b) {
  double gap = (a.model.eta0() - b.model.eta0()).cwiseAbs().maxCoeff();
  for (int x = 0; x < a.model.alphabet().size(); ++x) {
    gap = std::max(gap, (a.model.transition(x) - b.model.transition(x))
                            .cwiseAbs()
                            .maxCoeff());
  }
  return gap;
}

} // namespace

TEST_CASE("conditional matrix of the no-repeat process") {
  auto m = std::get<Ghmm>(zoo_model("tight_hmm"));
  auto lf = linear_form(m);
  auto lists = minimal_wordlists(lf);
  auto HF = hf_matrix(lf, lists);

  Eigen::MatrixXd expected(4, 4);
  double t = 1.0 / 3.0;
  expected << 1, 0.25, 0.25, 0.25,
              1, 0,    t,    t,
              1, t,    0,    t,
              1, t,    t,    0;
  CHECK((HF - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("standard form reproduces the process and is minimal") {
  auto m = std::get<Ghmm>(zoo_model("tight_hmm"));
  auto std_form = standard_ghmm(m);
  CHECK(std_form.model.dim() == 4);
  CHECK((std_form.model.ones() - Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff() < 1e-12);

  for (const Word& w : words_up_to(4, 3)) {
    CHECK(word_probability(std_form.model, w) ==
          doctest::Approx(word_probability(m, w)).epsilon(1e-9));
  }
}

TEST_CASE("classical and quantum realizations share one standard form") {
  auto hmm_form = standard_ghmm(std::get<Ghmm>(zoo_model("tight_hmm")));
  auto qhmm_form = standard_ghmm(std::get<Qhmm>(zoo_model("tight_qhmm")));
  REQUIRE(hmm_form.model.dim() == qhmm_form.model.dim());
  CHECK(hmm_form.history_words == qhmm_form.history_words);
  CHECK(hmm_form.future_words == qhmm_form.future_words);
  CHECK(max_entry_gap(hmm_form, qhmm_form) < 1e-8);
}

TEST_CASE("standardization is idempotent") {
  auto m = loose_example_hmm(0.3);
  auto once = standard_ghmm(m);
  auto twice = standard_ghmm(once.model);
  CHECK(once.history_words == twice.history_words);
  CHECK(once.future_words == twice.future_words);
  CHECK(max_entry_gap(once, twice) < 1e-10);
}

TEST_CASE("standard initial vector is the empty-history coordinate") {
  // The empty word heads every history list, and the initial predictions are
  // by definition the empty-history row, so the standard initial vector is
  // the first coordinate vector regardless of how the source model starts.
  double p = 0.5;
  Eigen::RowVectorXd e0 = Eigen::RowVectorXd::Zero(4);
  e0(0) = 1.0;

  auto from_a = standard_ghmm(loose_example_hmm(p, LooseStart::state_a));
  CHECK((from_a.model.eta0() - e0).cwiseAbs().maxCoeff() < 1e-10);

  auto src = loose_example_hmm(p, LooseStart::stationary);
  auto stat = standard_ghmm(src);
  CHECK((stat.model.eta0() - e0).cwiseAbs().maxCoeff() < 1e-10);
  // It still speaks for the stationary process, not the state_a one.
  for (const Word& w : words_up_to(2, 4)) {
    CHECK(word_probability(stat.model, w) ==
          doctest::Approx(word_probability(src, w)).epsilon(1e-10));
  }
}

TEST_CASE("dimension bound is the square root law") {
  auto lists4 = minimal_wordlists(linear_form(std::get<Ghmm>(zoo_model("tight_hmm"))));
  auto b4 = dimension_bound(lists4);
  CHECK(b4.ell_min == 4);
  CHECK(b4.d_min_lower == 2);

  auto lists1 = minimal_wordlists(linear_form(iid_bit_model(0.5)));
  auto b1 = dimension_bound(lists1);
  CHECK(b1.ell_min == 1);
  CHECK(b1.d_min_lower == 1);
}

TEST_CASE("latent entropy witnesses a dimension floor for the cycle") {
  auto report = entropy_dimension_witness(loose_example_hmm(0.5));
  // pi = (0.4, 0.2, 0.2, 0.2): H = 1.921928 bits, so ceil(2^H) = 4.
  CHECK(report.entropy_bits == doctest::Approx(1.9219280948873623).epsilon(1e-12));
  CHECK(report.dimension_floor == 4);
  REQUIRE(report.exceeds_log2.size() == 4);
  CHECK(report.exceeds_log2[0]); // > log2(1)
  CHECK(report.exceeds_log2[1]); // > log2(2)
  CHECK(report.exceeds_log2[2]); // > log2(3)
  CHECK_FALSE(report.exceeds_log2[3]);

  // Near-deterministic cycling pushes the entropy to 2 bits; it stays above
  // log2(3), ruling out any three-dimensional realization.
  auto nearly = entropy_dimension_witness(loose_example_hmm(0.01));
  CHECK(nearly.entropy_bits > std::log2(3.0));
  CHECK(nearly.dimension_floor == 4);
}

TEST_CASE("entropy witness requires both filtering directions") {
  // The no-repeat process is unifilar but seeing a symbol does not reveal
  // the predecessor state, so the witness does not apply.
  CHECK_THROWS_AS(entropy_dimension_witness(std::get<Ghmm>(zoo_model("tight_hmm"))),
                  UnsupportedModelError);
}

TEST_CASE("memoryless bit has a one-dimensional standard form") {
  auto std_form = standard_ghmm(iid_bit_model(0.25));
  CHECK(std_form.model.dim() == 1);
  CHECK(std_form.model.eta0()(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std_form.model.transition(0)(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std_form.model.transition(1)(0, 0) == doctest::Approx(0.75).epsilon(1e-12));

  auto witness = entropy_dimension_witness(iid_bit_model(0.5));
  CHECK(witness.entropy_bits == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(witness.witnessed());
}
