#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ghmm_canon/canonical.hpp"
#include "ghmm_canon/equivalence.hpp"
#include "ghmm_canon/errors.hpp"
#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/model_io.hpp"
#include "ghmm_canon/model_zoo.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/vectorize.hpp"
#include "ghmm_canon/wordlist.hpp"

namespace {

using nlohmann::json;
using namespace ghmm_canon;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNotEqual = 3;
constexpr int kIntegrityError = 4;
constexpr int kResourceLimit = 5;

struct CliConfig {
  Tolerances tol;
  std::string format = "json";
  std::string sep;
  std::optional<int> max_len;
  std::uint64_t seed = 0;
};

void read_tolerance(const json& doc, const char* key, double& slot) {
  if (!doc.contains(key)) return;
  double v = doc.at(key).get<double>();
  if (!(v > 0.0)) throw InputError(std::string("config: ") + key + " must be > 0");
  slot = v;
}

void apply_config_file(CliConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse config file " + path + ": " + e.what());
  }
  try {
    if (doc.contains("tolerances")) {
      const json& t = doc.at("tolerances");
      read_tolerance(t, "structural", cfg.tol.structural);
      read_tolerance(t, "imag_residue", cfg.tol.imag_residue);
      read_tolerance(t, "density", cfg.tol.density);
      read_tolerance(t, "prob_floor", cfg.tol.prob_floor);
      read_tolerance(t, "rank_rel", cfg.tol.rank_rel);
      read_tolerance(t, "prob_compare", cfg.tol.prob_compare);
      read_tolerance(t, "condition_cap", cfg.tol.condition_cap);
      if (t.contains("enumeration_cap")) {
        auto cap = t.at("enumeration_cap").get<long long>();
        if (cap < 1) throw InputError("config: enumeration_cap must be >= 1");
        cfg.tol.enumeration_cap = static_cast<std::size_t>(cap);
      }
    }
    if (doc.contains("format")) {
      cfg.format = doc.at("format").get<std::string>();
      if (cfg.format != "json" && cfg.format != "table") {
        throw InputError("config: format must be json or table");
      }
    }
    if (doc.contains("sep")) cfg.sep = doc.at("sep").get<std::string>();
    if (doc.contains("max_len")) {
      int m = doc.at("max_len").get<int>();
      if (m < 0) throw InputError("config: max_len must be >= 0");
      cfg.max_len = m;
    }
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw InputError("config file " + path + ": " + std::string(e.what()));
  }
}

void apply_environment(CliConfig& cfg) {
  const char* env = std::getenv("GHMM_CANON_TOL");
  if (!env || !*env) return;
  try {
    std::size_t used = 0;
    double v = std::stod(env, &used);
    if (used != std::string(env).size() || !(v > 0.0)) throw std::invalid_argument(env);
    cfg.tol.prob_compare = v;
  } catch (const std::exception&) {
    throw InputError(std::string("GHMM_CANON_TOL must be a positive number, got \"") +
                     env + "\"");
  }
}

LoadedModel resolve_model(const std::string& ref, const Tolerances& tol) {
  if (ref.rfind("zoo:", 0) == 0) return zoo_model(ref.substr(4), tol);
  return load_model_file(ref, tol);
}

Word parse_cli_word(const Alphabet& alphabet, const std::string& text,
                    const std::string& sep) {
  if (text == "ε" && !alphabet.contains("ε")) return {};
  return parse_word(alphabet, text, sep);
}

json word_to_json(const Alphabet& alphabet, const Word& w) {
  json out = json::array();
  for (const auto& s : word_symbols(alphabet, w)) out.push_back(s);
  return out;
}

// Table rendering: one "path = value" line per scalar, arrays of scalars
// inline. Key order follows the JSON object order (sorted), so output is
// deterministic.
bool scalar_array(const json& v) {
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void render_table(std::ostream& os, const std::string& prefix, const json& v) {
  auto line = [&](const std::string& text) {
    os << (prefix.empty() ? "value" : prefix) << " = " << text << "\n";
  };
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      render_table(os, prefix.empty() ? it.key() : prefix + "." + it.key(),
                   it.value());
    }
  } else if (v.is_array() && !scalar_array(v)) {
    int i = 0;
    for (const auto& e : v) {
      render_table(os, prefix + "[" + std::to_string(i) + "]", e);
      ++i;
    }
  } else if (v.is_array()) {
    std::string text = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) text += ", ";
      text += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
    }
    line(text + "]");
  } else if (v.is_string()) {
    line(v.get<std::string>());
  } else {
    line(v.dump());
  }
}

void emit(const CliConfig& cfg, const json& doc) {
  if (cfg.format == "table") {
    render_table(std::cout, "", doc);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

void emit_or_save(const CliConfig& cfg, const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    emit(cfg, doc);
  } else {
    save_model_file(out_path, doc);
  }
}

// Nonnegativity sweep over a complex linear form, for model kinds the real
// GHMM validator cannot hold. Mirrors its budget and reporting semantics.
ValidationReport sweep_linear_form(const LinearForm& lf, int max_len,
                                   const Tolerances& tol) {
  if (max_len < 0) throw InputError("validate: max_len must be nonnegative");
  ValidationReport report;
  report.max_len_checked = max_len;
  report.structure_ok = std::abs(word_probability(lf, Word{}, tol) - 1.0) <=
                        tol.structural;
  report.nonneg_ok = true;
  report.worst_probability = 1.0;
  std::size_t budget = tol.enumeration_cap;

  Word prefix;
  auto visit = [&](auto&& self, const Eigen::RowVectorXcd& row, int remaining) -> bool {
    if (remaining == 0) {
      if (budget == 0) return false;
      --budget;
      std::complex<double> z = row * lf.final_functional;
      double p = z.real();
      if (p < report.worst_probability) report.worst_probability = p;
      if (p < -tol.prob_floor || std::abs(z.imag()) > tol.imag_residue) {
        report.nonneg_ok = false;
        report.first_violation = prefix;
      }
      return report.nonneg_ok;
    }
    for (int x = 0; x < lf.alphabet.size(); ++x) {
      prefix.push_back(x);
      bool go = self(self, (row * lf.ops[static_cast<std::size_t>(x)]).eval(),
                     remaining - 1);
      prefix.pop_back();
      if (!go) return false;
    }
    return true;
  };
  for (int len = 0; len <= max_len && report.nonneg_ok; ++len) {
    bool complete = visit(visit, lf.initial, len);
    if (!complete && report.nonneg_ok) {
      report.truncated = true;
      report.max_len_checked = len - 1;
      break;
    }
  }
  return report;
}

int cmd_validate(const CliConfig& cfg, const std::string& ref,
                 std::optional<int> max_len_arg) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  LinearForm lf = to_linear_form(m, cfg.tol);
  int max_len = max_len_arg.value_or(
      cfg.max_len.value_or(2 * lf.dim() * lf.dim() - 1));

  ValidationReport report;
  if (const Ghmm* g = std::get_if<Ghmm>(&m)) {
    report = validate(*g, max_len, cfg.tol);
  } else if (const StandardGhmm* s = std::get_if<StandardGhmm>(&m)) {
    report = validate(s->model, max_len, cfg.tol);
  } else if (const Qhmm* q = std::get_if<Qhmm>(&m)) {
    report = validate(qhmm_to_ghmm_bloch(*q, cfg.tol), max_len, cfg.tol);
  } else {
    report = sweep_linear_form(lf, max_len, cfg.tol);
  }

  json doc;
  doc["kind"] = kind_of(m);
  doc["ok"] = report.ok();
  doc["structure_ok"] = report.structure_ok;
  doc["nonneg_ok"] = report.nonneg_ok;
  doc["max_len_checked"] = report.max_len_checked;
  doc["truncated"] = report.truncated;
  doc["worst_probability"] = report.worst_probability;
  if (report.first_violation) {
    doc["first_violation"] = word_to_json(alphabet_of(m), *report.first_violation);
  }
  emit(cfg, doc);
  return report.ok() ? kOk : kInputError;
}

int cmd_prob(const CliConfig& cfg, const std::string& ref, const std::string& text,
             bool empty_flag) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  const Alphabet& alphabet = alphabet_of(m);
  Word w;
  if (!empty_flag) {
    w = parse_cli_word(alphabet, text, cfg.sep);
  } else if (!text.empty()) {
    throw InputError("prob: give a word or --empty, not both");
  }
  double p = word_probability(to_linear_form(m, cfg.tol), w, cfg.tol);
  json doc;
  doc["word"] = word_to_json(alphabet, w);
  doc["probability"] = p;
  emit(cfg, doc);
  return kOk;
}

int cmd_cond(const CliConfig& cfg, const std::string& ref,
             const std::string& hist_text, const std::string& fut_text,
             bool empty_hist, bool empty_fut) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  const Alphabet& alphabet = alphabet_of(m);
  Word h, f;
  if (!empty_hist) {
    h = parse_cli_word(alphabet, hist_text, cfg.sep);
  } else if (!hist_text.empty()) {
    throw InputError("cond: give a history word or --empty-history, not both");
  }
  if (!empty_fut) {
    f = parse_cli_word(alphabet, fut_text, cfg.sep);
  } else if (!fut_text.empty()) {
    throw InputError("cond: give a future word or --empty-future, not both");
  }
  LinearForm lf = to_linear_form(m, cfg.tol);
  double ph = word_probability(lf, h, cfg.tol);
  if (ph <= cfg.tol.prob_floor) {
    throw DegenerateConditionError(
        "cond: history has zero probability; the conditional is undefined");
  }
  Word joint = h;
  joint.insert(joint.end(), f.begin(), f.end());
  double p = word_probability(lf, joint, cfg.tol) / ph;
  json doc;
  doc["history"] = word_to_json(alphabet, h);
  doc["future"] = word_to_json(alphabet, f);
  doc["conditional_probability"] = p;
  emit(cfg, doc);
  return kOk;
}

int cmd_steady(const CliConfig& cfg, const std::string& ref) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  const Ghmm* g = std::get_if<Ghmm>(&m);
  if (const StandardGhmm* s = std::get_if<StandardGhmm>(&m)) g = &s->model;
  if (!g) {
    throw UnsupportedModelError(
        "steady: needs a real-matrix model (hmm, ghmm or standard_ghmm); "
        "convert quantum models first");
  }
  SteadyState pi = steady_state(*g, cfg.tol);
  json doc;
  json arr = json::array();
  for (Eigen::Index i = 0; i < pi.pi.size(); ++i) arr.push_back(pi.pi(i));
  doc["pi"] = std::move(arr);
  emit(cfg, doc);
  return kOk;
}

int cmd_sample(const CliConfig& cfg, const std::string& ref, int length,
               std::uint64_t seed) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  Word w;
  if (const Ghmm* g = std::get_if<Ghmm>(&m)) {
    w = sample_hmm(*g, length, seed, cfg.tol);
  } else if (const StandardGhmm* s = std::get_if<StandardGhmm>(&m)) {
    w = sample_hmm(s->model, length, seed, cfg.tol);
  } else if (const Qhmm* q = std::get_if<Qhmm>(&m)) {
    w = sample_qhmm(*q, length, seed, cfg.tol);
  } else {
    throw UnsupportedModelError(
        "sample: liouville models are not samplers; convert to a qhmm or hmm");
  }
  json doc;
  doc["length"] = length;
  doc["seed"] = seed;
  doc["symbols"] = word_to_json(alphabet_of(m), w);
  emit(cfg, doc);
  return kOk;
}

int cmd_convert(const CliConfig& cfg, const std::string& ref,
                const std::string& method, const std::string& out_path) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  const Qhmm* q = std::get_if<Qhmm>(&m);
  if (!q) {
    throw InputError("convert: input must be a qhmm or unitary_qhmm model");
  }
  json doc;
  if (method == "bloch") {
    doc = to_json(qhmm_to_ghmm_bloch(*q, cfg.tol));
  } else {
    doc = to_json(qhmm_to_ghmm_liouville(*q, cfg.tol));
  }
  doc["provenance"] = json{{"derived_from", "qhmm"}, {"method", method}};
  emit_or_save(cfg, doc, out_path);
  return kOk;
}

int cmd_wordlist(const CliConfig& cfg, const std::string& ref) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  const Alphabet& alphabet = alphabet_of(m);
  LinearForm lf = to_linear_form(m, cfg.tol);
  InducedStateMatrix h = sufficient_history_wordlist(lf, cfg.tol);
  InducedFunctionalMatrix f = sufficient_future_wordlist(lf, cfg.tol);
  MinimalWordlists lists = minimal_wordlists(lf, h, f, cfg.tol);
  WordlistBoundsReport bounds = check_wordlist_bounds(lf, lists, cfg.tol);

  auto words_json = [&](const std::vector<Word>& words) {
    json out = json::array();
    for (const auto& w : words) out.push_back(word_to_json(alphabet, w));
    return out;
  };
  json doc;
  doc["ell_min"] = lists.ell_min;
  doc["history"] = words_json(lists.history);
  doc["future"] = words_json(lists.future);
  doc["sufficient_history"] = words_json(h.words);
  doc["sufficient_future"] = words_json(f.words);
  doc["zero_probability_excluded"] = h.zero_probability_excluded;
  doc["bounds"] = json{{"word_bound", bounds.word_bound},
                       {"length_bound", bounds.length_bound},
                       {"observed_words", bounds.observed_words},
                       {"observed_max_length", bounds.observed_max_length}};
  emit(cfg, doc);
  return kOk;
}

int cmd_canonical(const CliConfig& cfg, const std::string& ref,
                  const std::string& out_path) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  StandardGhmm s = standard_ghmm(to_linear_form(m, cfg.tol), cfg.tol);
  emit_or_save(cfg, to_json(s), out_path);
  return kOk;
}

int cmd_bound(const CliConfig& cfg, const std::string& ref) {
  LoadedModel m = resolve_model(ref, cfg.tol);
  MinimalWordlists lists = minimal_wordlists(to_linear_form(m, cfg.tol), cfg.tol);
  DimensionBound b = dimension_bound(lists);
  json doc;
  doc["ell_min"] = b.ell_min;
  doc["d_min_lower"] = b.d_min_lower;
  emit(cfg, doc);
  return kOk;
}

int cmd_equiv(const CliConfig& cfg, const std::string& ref_a,
              const std::string& ref_b, const std::string& method) {
  LoadedModel ma = resolve_model(ref_a, cfg.tol);
  LoadedModel mb = resolve_model(ref_b, cfg.tol);
  LinearForm a = to_linear_form(ma, cfg.tol);
  LinearForm b = to_linear_form(mb, cfg.tol);
  EquivalenceReport report;
  if (method == "thm1") {
    report = equivalent_thm1(a, b, cfg.tol);
  } else if (method == "length") {
    report = equivalent_by_length(a, b, cfg.tol);
  } else {
    report = equivalent_canonical(a, b, cfg.tol);
  }
  json doc;
  doc["verdict"] = to_string(report.verdict);
  doc["method"] = to_string(report.method);
  doc["max_discrepancy"] = report.max_discrepancy;
  doc["horizon_used"] = report.horizon_used;
  if (report.witness) {
    doc["witness"] = word_to_json(report.alphabet, *report.witness);
    doc["witness_delta"] = report.witness_delta;
  }
  emit(cfg, doc);
  return report.equal() ? kOk : kNotEqual;
}

int cmd_zoo_list(const CliConfig& cfg) {
  json doc = json::array();
  for (const auto& entry : zoo_entries()) {
    doc.push_back(json{{"name", entry.name},
                       {"kind", kind_of(entry.model)},
                       {"summary", entry.summary}});
  }
  emit(cfg, doc);
  return kOk;
}

int cmd_zoo_export(const CliConfig& cfg, const std::string& name,
                   const std::string& out_path) {
  emit_or_save(cfg, to_json(zoo_model(name, cfg.tol)), out_path);
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic process models: probabilities, wordlists, canonical "
               "forms, dimension bounds and equivalence tests"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  CliConfig cfg;
  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* format_opt = app.add_option("--format", cfg.format, "Output format")
                         ->check(CLI::IsMember({"json", "table"}));
  auto* sep_opt = app.add_option(
      "--sep", cfg.sep,
      "Separator between symbols in word arguments (default: none)");

  std::string model_ref, model_ref_b, word_text, hist_text, fut_text;
  std::string method, out_path, zoo_name;
  int max_len = -1;
  int sample_length = 100;
  std::uint64_t seed = 0;
  bool empty_word = false, empty_hist = false, empty_fut = false;

  auto* validate_cmd =
      app.add_subcommand("validate", "Structural checks and a nonnegativity sweep");
  validate_cmd->add_option("model", model_ref, "Model file or zoo:<name>")->required();
  auto* max_len_opt = validate_cmd->add_option(
      "--max-len", max_len, "Sweep all words up to this length (default 2 D^2 - 1)");

  auto* prob_cmd = app.add_subcommand("prob", "Probability of a word");
  prob_cmd->add_option("model", model_ref)->required();
  prob_cmd->add_option("word", word_text, "Word; \"ε\" for the empty word");
  prob_cmd->add_flag("--empty", empty_word, "Use the empty word");

  auto* cond_cmd =
      app.add_subcommand("cond", "Conditional probability P(future | history)");
  cond_cmd->add_option("model", model_ref)->required();
  cond_cmd->add_option("history", hist_text);
  cond_cmd->add_option("future", fut_text);
  cond_cmd->add_flag("--empty-history", empty_hist, "Condition on the empty word");
  cond_cmd->add_flag("--empty-future", empty_fut, "Predict the empty word");

  auto* steady_cmd = app.add_subcommand("steady", "Stationary distribution");
  steady_cmd->add_option("model", model_ref)->required();

  auto* sample_cmd = app.add_subcommand("sample", "Draw a realization");
  sample_cmd->add_option("model", model_ref)->required();
  sample_cmd->add_option("-n,--length", sample_length, "Number of symbols");
  auto* seed_opt = sample_cmd->add_option("-s,--seed", seed, "RNG seed");

  auto* convert_cmd =
      app.add_subcommand("convert", "Vectorize a quantum model into a GHMM");
  convert_cmd->add_option("model", model_ref)->required();
  convert_cmd->add_option("--method", method, "bloch or liouville")
      ->required()
      ->check(CLI::IsMember({"bloch", "liouville"}));
  convert_cmd->add_option("-o,--output", out_path, "Write the model here");

  auto* wordlist_cmd =
      app.add_subcommand("wordlist", "Sufficient and minimal wordlists");
  wordlist_cmd->add_option("model", model_ref)->required();

  auto* canonical_cmd =
      app.add_subcommand("canonical", "Standard minimal GHMM of the process");
  canonical_cmd->add_option("model", model_ref)->required();
  canonical_cmd->add_option("-o,--output", out_path, "Write the model here");

  auto* bound_cmd =
      app.add_subcommand("bound", "Quantum memory dimension lower bound");
  bound_cmd->add_option("model", model_ref)->required();

  auto* equiv_cmd =
      app.add_subcommand("equiv", "Do two models generate the same process?");
  equiv_cmd->add_option("a", model_ref)->required();
  equiv_cmd->add_option("b", model_ref_b)->required();
  equiv_cmd->add_option("--method", method, "thm1, length or canonical")
      ->required()
      ->check(CLI::IsMember({"thm1", "length", "canonical"}));

  auto* zoo_cmd = app.add_subcommand("zoo", "Built-in models");
  zoo_cmd->require_subcommand(1);
  auto* zoo_list_cmd = zoo_cmd->add_subcommand("list", "List built-in models");
  auto* zoo_export_cmd = zoo_cmd->add_subcommand("export", "Print a built-in model");
  zoo_export_cmd->add_option("name", zoo_name, "Model name, e.g. loose_hmm@0.3")
      ->required();
  zoo_export_cmd->add_option("-o,--output", out_path, "Write the model here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    // Later sources override earlier ones: config file, then environment,
    // then explicit flags.
    std::string flag_format = cfg.format;
    std::string flag_sep = cfg.sep;
    if (config_opt->count()) apply_config_file(cfg, config_path);
    apply_environment(cfg);
    if (format_opt->count()) cfg.format = flag_format;
    if (sep_opt->count()) cfg.sep = flag_sep;
    if (seed_opt->count() == 0) seed = cfg.seed;

    if (validate_cmd->parsed()) {
      return cmd_validate(cfg, model_ref,
                          max_len_opt->count() ? std::optional<int>(max_len)
                                               : std::nullopt);
    }
    if (prob_cmd->parsed()) return cmd_prob(cfg, model_ref, word_text, empty_word);
    if (cond_cmd->parsed()) {
      return cmd_cond(cfg, model_ref, hist_text, fut_text, empty_hist, empty_fut);
    }
    if (steady_cmd->parsed()) return cmd_steady(cfg, model_ref);
    if (sample_cmd->parsed()) {
      return cmd_sample(cfg, model_ref, sample_length, seed);
    }
    if (convert_cmd->parsed()) return cmd_convert(cfg, model_ref, method, out_path);
    if (wordlist_cmd->parsed()) return cmd_wordlist(cfg, model_ref);
    if (canonical_cmd->parsed()) return cmd_canonical(cfg, model_ref, out_path);
    if (bound_cmd->parsed()) return cmd_bound(cfg, model_ref);
    if (equiv_cmd->parsed()) return cmd_equiv(cfg, model_ref, model_ref_b, method);
    if (zoo_cmd->parsed()) {
      if (zoo_list_cmd->parsed()) return cmd_zoo_list(cfg);
      if (zoo_export_cmd->parsed()) return cmd_zoo_export(cfg, zoo_name, out_path);
    }
    std::cerr << "error: no subcommand selected\n";
    return kInputError;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const NumericalIntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIntegrityError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kIntegrityError;
  }
}
