#include <doctest.h>

#include <vector>

#include <Eigen/Dense>

#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/model_zoo.hpp"
#include "ghmm_canon/wordlist.hpp"

using namespace ghmm_canon;

namespace {

Word w(std::initializer_list<int> xs) { return Word(xs); }

} // namespace

TEST_CASE("no-repeat process needs all four history classes") {
  auto m = std::get<Ghmm>(zoo_model("tight_hmm"));
  auto lf = linear_form(m);

  auto hist = sufficient_history_wordlist(lf);
  CHECK(hist.words == std::vector<Word>{w({}), w({0}), w({1}), w({2})});
  CHECK(hist.zero_probability_excluded == 0);

  auto fut = sufficient_future_wordlist(lf);
  CHECK(fut.words == std::vector<Word>{w({}), w({0}), w({1}), w({2})});

  auto lists = minimal_wordlists(lf, hist, fut);
  CHECK(lists.ell_min == 4);
  CHECK(lists.history == hist.words);
  CHECK(lists.future == fut.words);

  auto bounds = check_wordlist_bounds(lf, lists);
  CHECK(bounds.word_bound == 4);
  CHECK(bounds.length_bound == 3);
  CHECK(bounds.observed_words == 4);
  CHECK(bounds.observed_max_length == 1);
}

TEST_CASE("qubit realization of the same process has the quantum bounds") {
  auto m = std::get<Qhmm>(zoo_model("tight_qhmm"));
  auto lf = linear_form(m);
  auto lists = minimal_wordlists(lf);
  CHECK(lists.ell_min == 4);
  auto bounds = check_wordlist_bounds(lf, lists);
  CHECK(bounds.word_bound == 4);   // d^2
  CHECK(bounds.length_bound == 3); // d^2 - 1
}

TEST_CASE("cycle process produces the published asymmetric lists") {
  auto m = loose_example_hmm(0.5, LooseStart::state_a);
  auto lf = linear_form(m);
  auto lists = minimal_wordlists(lf);

  CHECK(lists.history == std::vector<Word>{w({}), w({1}), w({1, 1}), w({1, 1, 1})});
  CHECK(lists.future == std::vector<Word>{w({}), w({0}), w({1, 0}), w({1, 1, 0})});
  CHECK(lists.ell_min == 4);

  // The future list is the same for every p in the open interval; spot-check
  // a second parameter.
  auto lists2 = minimal_wordlists(linear_form(loose_example_hmm(0.3)));
  CHECK(lists2.future == lists.future);
  CHECK(lists2.ell_min == 4);
}

TEST_CASE("zero-probability words extend the span but stay out of the list") {
  // P("a") = 0 yet its induced row (0.5, -0.5) is independent; conditioning
  // on "a" would be undefined, so the word is excluded and counted.
  Alphabet ab({"a", "b"});
  Eigen::MatrixXd Ta(2, 2), Tb(2, 2);
  Ta << 0.5, -0.5,
        0.0, 0.0;
  Tb << 0.5, 0.5,
        0.0, 1.0;
  Eigen::RowVectorXd eta(2);
  eta << 1.0, 0.0;
  Ghmm m(ab, eta, {Ta, Tb}, Eigen::VectorXd::Ones(2));

  auto lf = linear_form(m);
  auto hist = sufficient_history_wordlist(lf);
  CHECK(hist.words == std::vector<Word>{w({})});
  CHECK(hist.zero_probability_excluded == 1);

  auto lists = minimal_wordlists(lf);
  CHECK(lists.ell_min == 1);
  CHECK(lists.history == std::vector<Word>{w({})});
  CHECK(lists.future == std::vector<Word>{w({})});
}

TEST_CASE("induced rows are the actual history states") {
  auto m = std::get<Ghmm>(zoo_model("tight_hmm"));
  auto lf = linear_form(m);
  auto hist = sufficient_history_wordlist(lf);
  REQUIRE(hist.rows.rows() == 4);
  // Row times the final functional recovers the word probability.
  for (int i = 0; i < 4; ++i) {
    std::complex<double> p = hist.rows.row(i) * lf.final_functional;
    CHECK(p.real() == doctest::Approx(word_probability(lf, hist.words[i])).epsilon(1e-12));
    CHECK(p.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("searches are deterministic") {
  auto lf = linear_form(std::get<Qhmm>(zoo_model("tight_qhmm")));
  auto a = minimal_wordlists(lf);
  auto b = minimal_wordlists(lf);
  CHECK(a.history == b.history);
  CHECK(a.future == b.future);
  CHECK((a.history_rows - b.history_rows).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random qubit models stay within the theoretical bounds") {
  for (int seed = 0; seed < 10; ++seed) {
    auto q = random_qhmm(2, 2, 2, static_cast<std::uint64_t>(seed));
    auto lf = linear_form(q);
    auto lists = minimal_wordlists(lf);
    CHECK(lists.ell_min <= 4);
    CHECK_NOTHROW(check_wordlist_bounds(lf, lists));
    for (const Word& h : lists.history) CHECK(h.size() <= 3);
    for (const Word& f : lists.future) CHECK(f.size() <= 3);
  }
}
