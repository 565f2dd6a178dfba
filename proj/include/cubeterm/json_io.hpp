#pragma once

#include <json.hpp>
#include <string>

#include "cubeterm/algebra.hpp"
#include "cubeterm/blockers.hpp"
#include "cubeterm/decide.hpp"
#include "cubeterm/relation.hpp"

namespace cubeterm {

using Json = nlohmann::ordered_json;

/// { "name"?: string, "size": n, "operations": [ { "name", "arity", "table" } ] }
Json to_json(const FiniteAlgebra &algebra);
/// Throws InvalidAlgebra listing every problem found, structural or semantic.
FiniteAlgebra algebra_from_json(const Json &json);
FiniteAlgebra algebra_from_text(const std::string &text);

Json to_json(const ElementSet &set);
Json to_json(const Blocker &blocker);
Json to_json(const Relation &relation);
Relation relation_from_json(const Json &json, std::size_t universe);
Json to_json(const ChippedCubeSpec &spec);
ChippedCubeSpec chipped_cube_spec_from_json(const Json &json, std::size_t universe);
Json to_json(const CubeDecision &decision);
Json to_json(const NuDecision &decision);

}  // namespace cubeterm
