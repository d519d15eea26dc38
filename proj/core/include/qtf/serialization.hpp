// serialization.hpp — JSON forms of qtf values
//
// Matrix:     {"n": n, "data": [[re, im], ...]}   row-major, n^2 entries
// Generator:  {"sigma": <matrix>, "lambdas": [...], "etas": <matrix>}
// Chain:      {"q": [[...], ...], "invariant": [...]}
//
// Doubles are written with the shortest representation that round-trips.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qtf/classical.hpp"
#include "qtf/equilibrium.hpp"
#include "qtf/lindblad.hpp"

namespace qtf::io {

using json = nlohmann::json;

json matrix_to_json(const CMatrix& m);
/// Throws Parse on malformed input.
CMatrix matrix_from_json(const json& j);

json real_vector_to_json(const RVector& v);
RVector real_vector_from_json(const json& j);
json real_matrix_to_json(const RMatrix& m);
RMatrix real_matrix_from_json(const json& j);

json generator_to_json(const DbcGenerator& g);
/// Rebuilds from lambdas/etas and checks the stored sigma against them.
/// Throws Parse for schema errors, InvalidDensity for inconsistent data.
DbcGenerator generator_from_json(const json& j);

json chain_to_json(const ClassicalChain& chain);
ClassicalChain chain_from_json(const json& j);

json equilibrium_to_json(const EquilibriumResult& r);

/// Reads and parses a JSON file. Throws Parse when missing or malformed.
json read_json_file(const std::string& path);

} // namespace qtf::io
