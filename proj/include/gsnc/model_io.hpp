#pragma once

#include "gsnc/builders.hpp"
#include "gsnc/errors.hpp"

#include <json.hpp>

#include <string>

namespace gsnc {

// Model file schema, version 1. Top-level keys: schema_version, name,
// description, components, b_branches, strata, incidences, restrictions,
// cohomology, pairings, gysins, divisors. Declaration order in the file
// defines the global total order used for generated signs. Rationals are
// strings ("3/4"); matrices are row-major arrays of rational strings, one
// row per source basis vector.

nlohmann::ordered_json bundle_to_json(const ModelBundle& bundle);
ModelBundle bundle_from_json(const nlohmann::ordered_json& doc);  // throws ParseError

std::string bundle_to_string(const ModelBundle& bundle);
ModelBundle load_bundle(const std::string& path);  // throws ParseError
void save_bundle(const ModelBundle& bundle, const std::string& path);

}  // namespace gsnc
