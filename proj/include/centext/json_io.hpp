#pragma once

#include <string>

#include "json.hpp"

#include "centext/cohomology.hpp"
#include "centext/embedding.hpp"

// JSON schemas (human-diffable golden files):
//   group:    {"factors": [d1, ...]}
//   element:  [c1, ...]            (coordinate list)
//   cocycle:  {"a": group, "b": group, "table": [[element ...] ...]}
//             row-major by lexicographic element order
//   bilinear: {"a": group, "b": group, "matrix": [[element ...] ...]}
//   cochain:  {"a": group, "b": group, "values": [element ...]}
//   Q/Z:      "num/den", reduced, 0 <= num < den ("0/1" for zero)
// Integers are emitted as JSON numbers when they fit a machine word and as
// decimal strings otherwise.

namespace centext {

using Json = nlohmann::ordered_json;

Json int_to_json(const Int& x);
Int int_from_json(const Json& j);

Json group_to_json(const AbelianGroup& g);
AbelianGroup group_from_json(const Json& j);

Json element_to_json(const GroupElement& x);
GroupElement element_from_json(const Json& j, const AbelianGroup& parent);

Json cocycle_to_json(const Cocycle& c);
Cocycle cocycle_from_json(const Json& j);

Json bilinear_to_json(const BilinearMap& b);
BilinearMap bilinear_from_json(const Json& j);

Json cochain_to_json(const CochainMap& h);
CochainMap cochain_from_json(const Json& j);

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);
Json qzvec_to_json(const RatVec& v);
RatVec qzvec_from_json(const Json& j);

Json validation_to_json(const CocycleValidation& v);
Json structure_to_json(const StructureReport& r);
Json h2_to_json(const H2Description& h);
Json embedding_to_json(const EmbeddingResult& e);
Json bilinearization_to_json(const BilinearizationReport& r);

}  // namespace centext
