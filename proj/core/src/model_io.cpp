#include "ghmm_canon/model_io.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include "ghmm_canon/errors.hpp"

namespace ghmm_canon {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw InputError("model JSON: " + what);
}

double number_from(const json& v, const char* where) {
  if (!v.is_number()) fail(std::string(where) + ": expected a number");
  return v.get<double>();
}

std::complex<double> complex_from(const json& v, const char* where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(std::string(where) + ": expected a number or an [re, im] pair");
}

json complex_to(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

Eigen::VectorXd real_vector_from(const json& v, const char* where) {
  if (!v.is_array()) fail(std::string(where) + ": expected an array");
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number_from(v[i], where);
  }
  return out;
}

Eigen::MatrixXd real_matrix_from(const json& v, const char* where) {
  if (!v.is_array() || v.empty()) fail(std::string(where) + ": expected a matrix");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Eigen::MatrixXd out(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      fail(std::string(where) + ": ragged or non-array matrix row");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number_from(v[i][j], where);
    }
  }
  return out;
}

Eigen::MatrixXcd complex_matrix_from(const json& v, const char* where) {
  if (!v.is_array() || v.empty()) fail(std::string(where) + ": expected a matrix");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Eigen::MatrixXcd out(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      fail(std::string(where) + ": ragged or non-array matrix row");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          complex_from(v[i][j], where);
    }
  }
  return out;
}

json real_vector_to(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json real_matrix_to(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json complex_matrix_to(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Alphabet alphabet_from(const json& doc) {
  if (!doc.contains("alphabet")) fail("missing \"alphabet\"");
  const json& v = doc.at("alphabet");
  if (!v.is_array() || v.empty()) fail("\"alphabet\" must be a nonempty array");
  std::vector<Symbol> symbols;
  for (const auto& s : v) {
    if (!s.is_string()) fail("alphabet symbols must be strings");
    symbols.push_back(s.get<Symbol>());
  }
  return Alphabet(std::move(symbols));
}

json alphabet_to(const Alphabet& a) {
  json out = json::array();
  for (const auto& s : a.symbols()) out.push_back(s);
  return out;
}

const json& field(const json& doc, const char* name) {
  if (!doc.contains(name)) fail(std::string("missing \"") + name + "\"");
  return doc.at(name);
}

// Per-symbol matrices keyed by symbol. Keys outside the alphabet are data
// errors, not ignorable extras.
template <typename Matrix, typename Reader>
std::vector<Matrix> per_symbol_from(const json& v, const Alphabet& alphabet,
                                    const char* where, Reader read) {
  if (!v.is_object()) fail(std::string(where) + ": expected an object keyed by symbol");
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!alphabet.contains(it.key())) {
      fail(std::string(where) + ": entry for \"" + it.key() +
           "\" which is not in the alphabet");
    }
  }
  std::vector<Matrix> out;
  for (int x = 0; x < alphabet.size(); ++x) {
    const Symbol& s = alphabet.symbol(x);
    if (!v.contains(s)) fail(std::string(where) + ": no entry for symbol \"" + s + "\"");
    out.push_back(read(v.at(s)));
  }
  return out;
}

std::vector<Word> words_from(const json& v, const Alphabet& alphabet,
                             const char* where) {
  if (!v.is_array()) fail(std::string(where) + ": expected an array of words");
  std::vector<Word> out;
  for (const auto& entry : v) {
    if (!entry.is_array()) {
      fail(std::string(where) + ": each word must be an array of symbols");
    }
    std::vector<Symbol> symbols;
    for (const auto& s : entry) {
      if (!s.is_string()) fail(std::string(where) + ": word symbols must be strings");
      symbols.push_back(s.get<Symbol>());
    }
    out.push_back(word_from_symbols(alphabet, symbols));
  }
  return out;
}

json words_to(const Alphabet& alphabet, const std::vector<Word>& words) {
  json out = json::array();
  for (const auto& w : words) {
    json entry = json::array();
    for (const auto& s : word_symbols(alphabet, w)) entry.push_back(s);
    out.push_back(entry);
  }
  return out;
}

Ghmm ghmm_from(const json& doc, const Tolerances& tol, bool must_be_hmm) {
  Alphabet alphabet = alphabet_from(doc);
  Eigen::VectorXd eta0 = real_vector_from(field(doc, "eta0"), "eta0");
  Eigen::VectorXd ones = real_vector_from(field(doc, "ones"), "ones");
  auto transitions = per_symbol_from<Eigen::MatrixXd>(
      field(doc, "transitions"), alphabet, "transitions",
      [](const json& m) { return real_matrix_from(m, "transitions"); });
  Ghmm model(std::move(alphabet), eta0.transpose(), std::move(transitions),
             std::move(ones), tol);
  if (must_be_hmm && !model.flags(tol).is_hmm) {
    fail("declared \"hmm\" but the transitions are not entrywise nonnegative "
         "and row-stochastic; use kind \"ghmm\"");
  }
  return model;
}

Qhmm qhmm_from(const json& doc, const Tolerances& tol) {
  Alphabet alphabet = alphabet_from(doc);
  DensityMatrix sigma0(complex_matrix_from(field(doc, "sigma0"), "sigma0"), tol);
  auto kraus = per_symbol_from<std::vector<Eigen::MatrixXcd>>(
      field(doc, "kraus"), alphabet, "kraus", [](const json& list) {
        if (!list.is_array() || list.empty()) {
          fail("kraus: each symbol needs a nonempty list of matrices");
        }
        std::vector<Eigen::MatrixXcd> out;
        for (const auto& m : list) out.push_back(complex_matrix_from(m, "kraus"));
        return out;
      });
  return Qhmm(std::move(alphabet), std::move(sigma0), std::move(kraus), tol);
}

Qhmm unitary_qhmm_from(const json& doc, const Tolerances& tol) {
  const json& dj = field(doc, "d");
  const json& tj = field(doc, "trash");
  if (!dj.is_number_integer() || !tj.is_number_integer()) {
    fail("\"d\" and \"trash\" must be integers");
  }
  int d = dj.get<int>();
  int trash = tj.get<int>();
  Eigen::MatrixXcd U = complex_matrix_from(field(doc, "U"), "U");
  if (d <= 0 || trash <= 0) fail("\"d\" and \"trash\" must be positive");
  if (U.rows() != U.cols()) fail("\"U\" must be square");
  if (U.rows() % (static_cast<Eigen::Index>(d) * trash) != 0) {
    fail("size of \"U\" is not divisible by d * trash");
  }
  int output = static_cast<int>(U.rows() / (static_cast<Eigen::Index>(d) * trash));
  UnitarySpec spec(d, output, trash, std::move(U), tol);
  DensityMatrix sigma0(complex_matrix_from(field(doc, "sigma0"), "sigma0"), tol);
  std::optional<Alphabet> alphabet;
  if (doc.contains("alphabet")) alphabet = alphabet_from(doc);
  return kraus_from_unitary(spec, std::move(sigma0), std::move(alphabet), tol);
}

LiouvilleGhmm liouville_from(const json& doc, const Tolerances& tol) {
  LiouvilleGhmm model;
  model.alphabet = alphabet_from(doc);
  Eigen::MatrixXcd eta0 = complex_matrix_from(json::array({field(doc, "eta0")}), "eta0");
  Eigen::MatrixXcd ones = complex_matrix_from(json::array({field(doc, "ones")}), "ones");
  model.eta0 = eta0.row(0);
  model.ones = ones.row(0).transpose();
  const Eigen::Index D = model.eta0.size();
  auto transitions = per_symbol_from<Eigen::MatrixXcd>(
      field(doc, "transitions"), model.alphabet, "transitions",
      [](const json& m) { return complex_matrix_from(m, "transitions"); });
  for (const auto& T : transitions) {
    if (T.rows() != D || T.cols() != D) {
      fail("liouville transition matrices must match the eta0 dimension");
    }
  }
  if (model.ones.size() != D) fail("\"ones\" must match the eta0 dimension");
  model.transitions = std::move(transitions);
  int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(D))));
  if (doc.contains("source_dim")) {
    const json& sj = doc.at("source_dim");
    if (!sj.is_number_integer()) fail("\"source_dim\" must be an integer");
    d = sj.get<int>();
  }
  if (d <= 0 || static_cast<Eigen::Index>(d) * d != D) {
    fail("liouville dimension must be the square of the source dimension");
  }
  model.source_dim = d;
  // Cheap integrity probe: the empty word must have unit probability.
  double p0 = word_probability(model, Word{}, tol);
  if (std::abs(p0 - 1.0) > tol.structural) {
    std::ostringstream os;
    os << "liouville model: eta0 * ones = " << p0 << ", expected 1";
    fail(os.str());
  }
  return model;
}

StandardGhmm standard_from(const json& doc, const Tolerances& tol) {
  StandardGhmm out{ghmm_from(doc, tol, false), {}, {}};
  out.history_words = words_from(field(doc, "history_words"),
                                 out.model.alphabet(), "history_words");
  out.future_words =
      words_from(field(doc, "future_words"), out.model.alphabet(), "future_words");
  if (static_cast<int>(out.history_words.size()) != out.model.dim() ||
      static_cast<int>(out.future_words.size()) != out.model.dim()) {
    fail("standard form needs exactly dim history and future words");
  }
  return out;
}

LoadedModel load_model_impl(const json& doc, const Tolerances& tol) {
  if (!doc.is_object()) fail("expected a JSON object");
  const json& kj = field(doc, "kind");
  if (!kj.is_string()) fail("\"kind\" must be a string");
  const std::string kind = kj.get<std::string>();
  if (kind == "ghmm") return ghmm_from(doc, tol, false);
  if (kind == "hmm") return ghmm_from(doc, tol, true);
  if (kind == "qhmm") return qhmm_from(doc, tol);
  if (kind == "unitary_qhmm") return unitary_qhmm_from(doc, tol);
  if (kind == "liouville_ghmm") return liouville_from(doc, tol);
  if (kind == "standard_ghmm") return standard_from(doc, tol);
  fail("unknown kind \"" + kind +
       "\"; expected ghmm, hmm, qhmm, unitary_qhmm, liouville_ghmm or "
       "standard_ghmm");
}

} // namespace

LoadedModel load_model(const json& doc, const Tolerances& tol) {
  try {
    return load_model_impl(doc, tol);
  } catch (const json::exception& e) {
    throw InputError(std::string("model JSON: ") + e.what());
  }
}

LoadedModel load_model_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return load_model(doc, tol);
}

json to_json(const Ghmm& model) {
  json doc;
  doc["kind"] = model.flags().is_hmm ? "hmm" : "ghmm";
  doc["alphabet"] = alphabet_to(model.alphabet());
  doc["eta0"] = real_vector_to(model.eta0().transpose());
  doc["ones"] = real_vector_to(model.ones());
  json transitions;
  for (int x = 0; x < model.alphabet().size(); ++x) {
    transitions[model.alphabet().symbol(x)] = real_matrix_to(model.transition(x));
  }
  doc["transitions"] = std::move(transitions);
  return doc;
}

json to_json(const Qhmm& model) {
  json doc;
  doc["kind"] = "qhmm";
  doc["alphabet"] = alphabet_to(model.alphabet());
  doc["sigma0"] = complex_matrix_to(model.sigma0().entries());
  json kraus;
  for (int x = 0; x < model.alphabet().size(); ++x) {
    json list = json::array();
    for (const auto& K : model.kraus(x)) list.push_back(complex_matrix_to(K));
    kraus[model.alphabet().symbol(x)] = std::move(list);
  }
  doc["kraus"] = std::move(kraus);
  return doc;
}

json to_json(const LiouvilleGhmm& model) {
  json doc;
  doc["kind"] = "liouville_ghmm";
  doc["alphabet"] = alphabet_to(model.alphabet);
  json eta0 = json::array();
  for (Eigen::Index i = 0; i < model.eta0.size(); ++i) {
    eta0.push_back(complex_to(model.eta0(i)));
  }
  doc["eta0"] = std::move(eta0);
  json ones = json::array();
  for (Eigen::Index i = 0; i < model.ones.size(); ++i) {
    ones.push_back(complex_to(model.ones(i)));
  }
  doc["ones"] = std::move(ones);
  json transitions;
  for (int x = 0; x < model.alphabet.size(); ++x) {
    transitions[model.alphabet.symbol(x)] =
        complex_matrix_to(model.transitions[static_cast<std::size_t>(x)]);
  }
  doc["transitions"] = std::move(transitions);
  doc["source_dim"] = model.source_dim;
  return doc;
}

json to_json(const StandardGhmm& model) {
  json doc = to_json(model.model);
  doc["kind"] = "standard_ghmm";
  doc["history_words"] = words_to(model.model.alphabet(), model.history_words);
  doc["future_words"] = words_to(model.model.alphabet(), model.future_words);
  return doc;
}

json to_json(const LoadedModel& model) {
  return std::visit([](const auto& m) { return to_json(m); }, model);
}

void save_model_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw InputError("failed writing model file: " + path);
}

std::string kind_of(const LoadedModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ghmm>) {
          return m.flags().is_hmm ? "hmm" : "ghmm";
        } else if constexpr (std::is_same_v<T, Qhmm>) {
          return "qhmm";
        } else if constexpr (std::is_same_v<T, LiouvilleGhmm>) {
          return "liouville_ghmm";
        } else {
          return "standard_ghmm";
        }
      },
      model);
}

const Alphabet& alphabet_of(const LoadedModel& model) {
  return std::visit(
      [](const auto& m) -> const Alphabet& {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Qhmm>) {
          return m.alphabet();
        } else if constexpr (std::is_same_v<T, Ghmm>) {
          return m.alphabet();
        } else if constexpr (std::is_same_v<T, LiouvilleGhmm>) {
          return m.alphabet;
        } else {
          return m.model.alphabet();
        }
      },
      model);
}

LinearForm to_linear_form(const LoadedModel& model, const Tolerances& tol) {
  return std::visit(
      [&](const auto& m) -> LinearForm {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Qhmm>) {
          return linear_form(m, tol);
        } else if constexpr (std::is_same_v<T, StandardGhmm>) {
          return linear_form(m.model);
        } else {
          return linear_form(m);
        }
      },
      model);
}

} // namespace ghmm_canon
