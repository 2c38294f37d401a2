#ifndef GHMM_CANON_MODEL_IO_HPP
#define GHMM_CANON_MODEL_IO_HPP

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "ghmm_canon/canonical.hpp"
#include "ghmm_canon/ghmm.hpp"
#include "ghmm_canon/qhmm.hpp"
#include "ghmm_canon/tolerances.hpp"
#include "ghmm_canon/vectorize.hpp"

namespace ghmm_canon {

// Everything the JSON model format can describe. Unitary specifications
// ("kind": "unitary_qhmm") load as the Qhmm they dilate.
using LoadedModel = std::variant<Ghmm, Qhmm, LiouvilleGhmm, StandardGhmm>;

// Parse a model document. Recognized kinds: "ghmm", "hmm" (additionally
// verified nonnegative and row-stochastic), "qhmm", "unitary_qhmm",
// "liouville_ghmm", "standard_ghmm". Unknown fields (e.g. provenance
// annotations) are ignored. Malformed documents raise InputError.
LoadedModel load_model(const nlohmann::json& doc, const Tolerances& tol = {});
LoadedModel load_model_file(const std::string& path, const Tolerances& tol = {});

nlohmann::json to_json(const Ghmm& model);
nlohmann::json to_json(const Qhmm& model);
nlohmann::json to_json(const LiouvilleGhmm& model);
nlohmann::json to_json(const StandardGhmm& model);
nlohmann::json to_json(const LoadedModel& model);

void save_model_file(const std::string& path, const nlohmann::json& doc);

// The "kind" string the model serializes under.
std::string kind_of(const LoadedModel& model);

const Alphabet& alphabet_of(const LoadedModel& model);

LinearForm to_linear_form(const LoadedModel& model, const Tolerances& tol = {});

} // namespace ghmm_canon

#endif
