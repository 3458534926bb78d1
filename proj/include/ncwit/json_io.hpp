#pragma once

#include "ncwit/multipartite.hpp"
#include "ncwit/witness.hpp"

#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace ncwit::io {

using json = nlohmann::json;

// States and operators share one schema:
//   {"dims": [..], "kind": "pure"|"mixed"|"operator", "data": ...}
// where pure data is a list of [re, im] pairs and mixed/operator data is a
// row-major list of rows of [re, im] pairs.
json to_json(const PureState& psi);
json to_json(const DensityMatrix& rho);
json to_json(const Operator& m);

PureState pure_state_from_json(const json& j);
DensityMatrix density_matrix_from_json(const json& j);
Operator operator_from_json(const json& j);

json to_json(const ClassicalFamily& family);
ClassicalFamily family_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);

json to_json(const DetectionReport& r);

// Recipe schema (1-based subsystem indices, matching the usual gate labels):
//   {"dims":[2,2,2], "initial":[[re,im],..],
//    "steps":[{"cd":[1,2]}, {"local":{"target":2,"matrix":[[[re,im],..],..]}}]}
json to_json(const Recipe& r);
Recipe recipe_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// FNV-1a over the file bytes; stable manifest fingerprint.
std::string file_hash(const std::string& path);

// Parses "a", "bi", "a+bi", "a-bi" complex literals.
cplx parse_complex(const std::string& text);

} // namespace ncwit::io
