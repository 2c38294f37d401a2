#include <doctest.h>

#include <set>
#include <string>

#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/model_zoo.hpp"

using namespace ghmm_canon;

TEST_CASE("zoo lists four built-in models with summaries") {
  const auto& entries = zoo_entries();
  std::set<std::string> names;
  for (const auto& e : entries) {
    names.insert(e.name);
    CHECK_FALSE(e.summary.empty());
  }
  CHECK(names == std::set<std::string>{"tight_hmm", "tight_qhmm", "loose_hmm", "iid_bit"});
}

TEST_CASE("zoo lookups accept parameters where the model has one") {
  auto loose = std::get<Ghmm>(zoo_model("loose_hmm@0.3"));
  CHECK(word_probability(loose, {0}) == doctest::Approx(0.3).epsilon(1e-12));

  auto iid = std::get<Ghmm>(zoo_model("iid_bit@0.25"));
  CHECK(word_probability(iid, {0}) == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(zoo_model("tight_hmm@0.5"), InputError);  // parameterless
  CHECK_THROWS_AS(zoo_model("no_such_model"), InputError);
  CHECK_THROWS_AS(zoo_model("loose_hmm@abc"), InputError);
  CHECK_THROWS_AS(zoo_model("loose_hmm@1.5"), InputError);
  CHECK_THROWS_AS(zoo_model("iid_bit@-0.1"), InputError);
}

TEST_CASE("no-repeat pair: four classical states, one qubit") {
  auto hmm = std::get<Ghmm>(zoo_model("tight_hmm"));
  auto qhmm = std::get<Qhmm>(zoo_model("tight_qhmm"));

  CHECK(hmm.dim() == 4);
  CHECK(qhmm.dim() == 2);
  CHECK(hmm.alphabet() == qhmm.alphabet());
  CHECK(hmm.alphabet().size() == 4);

  auto flags = hmm.flags();
  CHECK(flags.is_hmm);
  CHECK(flags.is_unifilar);
  CHECK_FALSE(flags.is_co_unifilar);
  CHECK(qhmm.is_unifilar());

  auto ss = steady_state(hmm);
  for (int i = 0; i < 4; ++i) CHECK(ss.pi(i) == doctest::Approx(0.25).epsilon(1e-12));

  for (int x = 0; x < 4; ++x) {
    CHECK(word_probability(hmm, {x}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(word_probability_q(qhmm, {x}) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(word_probability(hmm, {x, x}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(word_probability_q(qhmm, {x, x}) == doctest::Approx(0.0).epsilon(1e-10));
    for (int y = 0; y < 4; ++y) {
      if (y == x) continue;
      CHECK(conditional_probability_q(qhmm, {y}, {x}) ==
            doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("cycle model construction and parameter range") {
  CHECK_THROWS_AS(loose_example_hmm(-0.1), InputError);
  CHECK_THROWS_AS(loose_example_hmm(1.1), InputError);
  CHECK_NOTHROW(loose_example_hmm(0.0));
  CHECK_NOTHROW(loose_example_hmm(1.0));

  auto m = loose_example_hmm(0.7);
  auto flags = m.flags();
  CHECK(flags.is_hmm);
  CHECK(flags.is_unifilar);
  CHECK(flags.is_co_unifilar);

  auto stat = loose_example_hmm(0.7, LooseStart::stationary);
  auto ss = steady_state(stat);
  CHECK((stat.eta0() - ss.pi).cwiseAbs().maxCoeff() < 1e-12);
  // Stationarity in one step: P(w) computed now equals P(w) one tick later.
  CHECK(word_probability(stat, {0}) == doctest::Approx(ss.pi(0) * 0.7).epsilon(1e-12));
}

TEST_CASE("random models are seed-deterministic and well formed") {
  auto a = random_qhmm(2, 2, 2, 77);
  auto b = random_qhmm(2, 2, 2, 77);
  auto c = random_qhmm(2, 2, 2, 78);
  CHECK((a.sigma0().entries() - b.sigma0().entries()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.kraus(0)[0] - b.kraus(0)[0]).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.kraus(0)[0] - c.kraus(0)[0]).cwiseAbs().maxCoeff() > 0.0);
  CHECK(a.dim() == 2);
  CHECK(a.alphabet().size() == 2);
  CHECK(static_cast<int>(a.kraus(0).size()) == 2);

  double total = 0.0;
  for (int x = 0; x < 2; ++x) total += word_probability_q(a, {x});
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}
