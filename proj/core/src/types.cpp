#include "ghmm_canon/types.hpp"

#include <algorithm>
#include <sstream>

namespace ghmm_canon {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("alphabet must be nonempty");
  for (const auto& s : symbols_) {
    if (s.empty()) throw InputError("alphabet symbols must be nonempty strings");
  }
  std::sort(symbols_.begin(), symbols_.end());
  if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end()) {
    throw InputError("alphabet symbols must be pairwise distinct");
  }
}

int Alphabet::index_of(const Symbol& s) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
  if (it == symbols_.end() || *it != s) {
    throw InputError("symbol \"" + s + "\" is not in the alphabet");
  }
  return static_cast<int>(it - symbols_.begin());
}

bool Alphabet::contains(const Symbol& s) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Word word_from_symbols(const Alphabet& alphabet, const std::vector<Symbol>& symbols) {
  Word w;
  w.reserve(symbols.size());
  for (const auto& s : symbols) w.push_back(alphabet.index_of(s));
  return w;
}

std::vector<Symbol> word_symbols(const Alphabet& alphabet, const Word& w) {
  std::vector<Symbol> out;
  out.reserve(w.size());
  for (int i : w) out.push_back(alphabet.symbol(i));
  return out;
}

std::string format_word(const Alphabet& alphabet, const Word& w, const std::string& sep) {
  if (w.empty()) return "ε";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) os << sep;
    os << alphabet.symbol(w[i]);
  }
  return os.str();
}

namespace {

Word tokenize_greedy(const Alphabet& alphabet, const std::string& text) {
  // Longest-prefix matching keeps single-character alphabets trivial while
  // still accepting multi-character symbols that happen to be prefix-free.
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    int best = -1;
    std::size_t best_len = 0;
    for (int i = 0; i < alphabet.size(); ++i) {
      const Symbol& s = alphabet.symbol(i);
      if (s.size() > best_len && text.compare(pos, s.size(), s) == 0) {
        best = i;
        best_len = s.size();
      }
    }
    if (best < 0) {
      throw InputError("cannot tokenize \"" + text + "\" at position " +
                       std::to_string(pos) + "; no alphabet symbol matches");
    }
    w.push_back(best);
    pos += best_len;
  }
  return w;
}

} // namespace

Word parse_word(const Alphabet& alphabet, const std::string& text, const std::string& sep) {
  if (text.empty()) return {};
  if (sep.empty()) return tokenize_greedy(alphabet, text);
  Word w;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = text.find(sep, pos);
    std::string token = text.substr(pos, next == std::string::npos ? next : next - pos);
    w.push_back(alphabet.index_of(token));
    if (next == std::string::npos) break;
    pos = next + sep.size();
  }
  return w;
}

} // namespace ghmm_canon
