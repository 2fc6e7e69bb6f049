#pragma once

#include <json.hpp>

#include "geomodal/bisim.hpp"
#include "geomodal/framealg.hpp"
#include "geomodal/kkplift.hpp"
#include "geomodal/proofsys.hpp"

namespace geomodal {

using Json = nlohmann::ordered_json;

// Loaders re-canonicalize and fully validate; violations name the offending
// path into the document.

FinSpace space_from_json(const Json& j);
Json space_to_json(const FinSpace& X);

FinFrame frame_from_json(const Json& j);  // {"elements": [...], "leq": [[a,b],...]}
Json frame_to_json(const FinFrame& F);

LatticeTerm term_from_json(const Json& j);
Json term_to_json(const LatticeTerm& t);

Presentation presentation_from_json(const Json& j);
Json presentation_to_json(const Presentation& P);

GeomModel model_from_json(const Json& j);
Json model_to_json(const GeomModel& M);

Derivation derivation_from_json(const Json& j);

/// Custom lifting code: {"functor": id, "arity": n, "code": [carrier point
/// names of the classifier power], "id": name (optional, default "custom")}.
struct CustomCode {
  std::string id;
  SierpinskiCode code;
};

CustomCode code_from_json(const Json& j);

// gamma element encodings per functor: vietoris = array of point names,
// dkh = array of arrays of point names, trivial = 0|1, kkp = carrier point name
Json gamma_elem_to_json(const FunctorPtr& T, const FinSpace& X, const TElem& e);
TElem gamma_elem_from_json(const FunctorPtr& T, const FinSpace& X, const Json& j,
                           const std::string& path);

Json load_json_file(const std::string& path);

}  // namespace geomodal
