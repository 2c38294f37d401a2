#include <benchmark/benchmark.h>

#include "ghmm_canon/canonical.hpp"
#include "ghmm_canon/equivalence.hpp"
#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/model_zoo.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/vectorize.hpp"
#include "ghmm_canon/wordlist.hpp"

using namespace ghmm_canon;

namespace {

// Cycles 1, 2, 3, 0, ...: never repeats a symbol, so the word has positive
// probability under the no-repeat models.
Word cycle_word(int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back((i + 1) % 4);
  return w;
}

void bm_word_probability_hmm(benchmark::State& state) {
  auto m = std::get<Ghmm>(zoo_model("tight_hmm"));
  Word w = cycle_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(word_probability(m, w));
  }
}
BENCHMARK(bm_word_probability_hmm)->Arg(8)->Arg(64);

void bm_word_probability_qhmm(benchmark::State& state) {
  auto m = std::get<Qhmm>(zoo_model("tight_qhmm"));
  Word w = cycle_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(word_probability_q(m, w));
  }
}
BENCHMARK(bm_word_probability_qhmm)->Arg(8)->Arg(64);

void bm_bloch_vectorization(benchmark::State& state) {
  auto m = std::get<Qhmm>(zoo_model("tight_qhmm"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qhmm_to_ghmm_bloch(m));
  }
}
BENCHMARK(bm_bloch_vectorization);

void bm_minimal_wordlists(benchmark::State& state) {
  auto lf = linear_form(std::get<Qhmm>(zoo_model("tight_qhmm")));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_wordlists(lf));
  }
}
BENCHMARK(bm_minimal_wordlists);

void bm_standard_ghmm(benchmark::State& state) {
  auto lf = linear_form(loose_example_hmm(0.3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(standard_ghmm(lf));
  }
}
BENCHMARK(bm_standard_ghmm);

void bm_equiv_thm1(benchmark::State& state) {
  auto a = linear_form(std::get<Ghmm>(zoo_model("tight_hmm")));
  auto b = linear_form(std::get<Qhmm>(zoo_model("tight_qhmm")));
  for (auto _ : state) {
    benchmark::DoNotOptimize(equivalent_thm1(a, b));
  }
}
BENCHMARK(bm_equiv_thm1);

void bm_equiv_by_length(benchmark::State& state) {
  auto a = linear_form(loose_example_hmm(0.3));
  auto b = linear_form(loose_example_hmm(0.31));
  for (auto _ : state) {
    benchmark::DoNotOptimize(equivalent_by_length(a, b));
  }
}
BENCHMARK(bm_equiv_by_length);

void bm_sample_hmm(benchmark::State& state) {
  auto m = std::get<Ghmm>(zoo_model("tight_hmm"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_hmm(m, static_cast<int>(state.range(0)), 1));
  }
}
BENCHMARK(bm_sample_hmm)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
