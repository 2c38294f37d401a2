#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ghmm_canon/types.hpp"

using namespace ghmm_canon;

TEST_CASE("alphabet sorts symbols and indexes them") {
  Alphabet a({"b", "a", "c"});
  CHECK(a.size() == 3);
  CHECK(a.symbol(0) == "a");
  CHECK(a.symbol(2) == "c");
  CHECK(a.index_of("b") == 1);
  CHECK(a.contains("c"));
  CHECK_FALSE(a.contains("d"));
  CHECK_THROWS_AS(a.index_of("d"), InputError);

  // Input order must not matter.
  CHECK(a == Alphabet({"c", "b", "a"}));
}

TEST_CASE("alphabet rejects degenerate inputs") {
  CHECK_THROWS_AS(Alphabet(std::vector<Symbol>{}), InputError);
  CHECK_THROWS_AS(Alphabet({"x", "x"}), InputError);
  CHECK_THROWS_AS(Alphabet({"x", ""}), InputError);
}

TEST_CASE("shortlex orders by length then lexicographically") {
  std::vector<Word> words = {{1, 0}, {}, {1}, {0, 1}, {0}, {0, 0, 0}};
  std::sort(words.begin(), words.end(), shortlex_less);
  std::vector<Word> expected = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 0, 0}};
  CHECK(words == expected);
  CHECK_FALSE(shortlex_less(Word{0}, Word{0}));
}

TEST_CASE("word format and parse round trip") {
  Alphabet bits({"0", "1"});
  Word w = {0, 1, 1, 0};
  CHECK(format_word(bits, w) == "0110");
  CHECK(parse_word(bits, "0110") == w);
  CHECK(format_word(bits, {}) == "ε");
  CHECK(parse_word(bits, "") == Word{});

  CHECK(format_word(bits, w, ",") == "0,1,1,0");
  CHECK(parse_word(bits, "0,1,1,0", ",") == w);
  CHECK(word_from_symbols(bits, {"1", "0"}) == Word{1, 0});
  CHECK(word_symbols(bits, {1, 0}) == std::vector<Symbol>{"1", "0"});
}

TEST_CASE("greedy tokenization takes the longest matching symbol") {
  // "aa" must win over "a" + "a"; prefix-free remainders still parse.
  Alphabet a({"a", "aa", "b"});
  CHECK(parse_word(a, "aab") == Word{a.index_of("aa"), a.index_of("b")});
  CHECK(parse_word(a, "ab") == Word{a.index_of("a"), a.index_of("b")});
  CHECK_THROWS_AS(parse_word(a, "abc"), InputError);
}

TEST_CASE("separator parsing splits exactly on the separator") {
  Alphabet a({"up", "down"});
  CHECK(parse_word(a, "up,down,up", ",") == Word{1, 0, 1});
  CHECK_THROWS_AS(parse_word(a, "up,,up", ","), InputError);
  CHECK(format_word(a, {1, 0}, " ") == "up down");
}
