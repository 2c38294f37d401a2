#ifndef GHMM_CANON_TYPES_HPP
#define GHMM_CANON_TYPES_HPP

#include <string>
#include <vector>

#include "ghmm_canon/errors.hpp"

namespace ghmm_canon {

using Symbol = std::string;

// Fixed, totally ordered symbol set. Symbols are stored sorted
// lexicographically so that every construction downstream (wordlists,
// canonical forms) is deterministic regardless of input order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const Symbol& symbol(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  // Position of s in the sorted symbol list; throws InputError if absent.
  int index_of(const Symbol& s) const;
  bool contains(const Symbol& s) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<Symbol> symbols_;
};

// A word is a sequence of alphabet indices; the empty vector is the empty
// word. Indices are relative to a specific Alphabet, which the surrounding
// context supplies.
using Word = std::vector<int>;

// Length-then-lexicographic order; the canonical enumeration order of words.
bool shortlex_less(const Word& a, const Word& b);

Word word_from_symbols(const Alphabet& alphabet, const std::vector<Symbol>& symbols);
std::vector<Symbol> word_symbols(const Alphabet& alphabet, const Word& w);

// Render a word for display. The empty word prints as "ε". With an empty
// separator symbols are concatenated directly.
std::string format_word(const Alphabet& alphabet, const Word& w, const std::string& sep = "");

// Parse a word from text. With an empty separator the text is tokenized by
// greedy longest-prefix matching against the alphabet; otherwise it is split
// on the separator. Empty text parses to the empty word.
Word parse_word(const Alphabet& alphabet, const std::string& text, const std::string& sep = "");

} // namespace ghmm_canon

#endif
