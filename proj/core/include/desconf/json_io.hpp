#pragma once

#include "desconf/configuration.hpp"
#include "desconf/enumeration.hpp"
#include "desconf/twoblock.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace desconf {

using Json = nlohmann::ordered_json;

/// { "q", "field", "n", "points": {"12": "1,0,2", ...}, "blocks": [["12","13","23"], ...],
///   "blocklines": {"123": ["1,0,0", "0,1,2"], ...}, "self_conjugate": [...], "spatial": bool }
Json to_json(const Configuration& d);
/// Reads the document written by to_json. The field comes from "field" when present and from
/// "q" otherwise; "blocks", when present, must match the pair/triple labelling.
Configuration configuration_from_json(const Json& doc);

/// { "q", "field", "n", "points": [...], "five_arc": bool }
Json to_json(const FiveCompressor& s);
Json to_json(const BlocklineStructure& s);
Json to_json(const ConfigKey& key);

/// { "quantity", "q", "closed_form", "brute_force", "agree", "elapsed_ms" }; the timing field
/// is left out when `timing` is false.
Json to_json(const CountReport& r, bool timing = true);

/// { "total_subsets", "hyperplane", "spatial_desargues", "other", "other_examples",
///   "definition_gap" }
Json to_json(const TwoBlockReport& r);

Json to_json(const InjectivityReport& r);

/// Lowercase hex, e.g. "0x7f".
std::string to_hex(PointSet s);

/// Self-conjugate points, blockline structure and spatial flag of a configuration.
Json inspect(const Configuration& d);

}  // namespace desconf
