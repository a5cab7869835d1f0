// Copyright 2025-2026 The ppiso developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ppiso/symbols.hpp"
#include "ppiso/types.hpp"

namespace ppiso {

/// Matrix wire form: {"rows": r, "cols": c, "data": [[re, im], ...]},
/// row-major, IEEE-754 doubles. Parsing rejects shape mismatches and
/// non-finite entries with parse_error.
nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Symbol wire form: {"dim_domain": d, "dim_codomain": e,
/// "coeffs": [{"degree": m, "matrix": ...}, ...]} with strictly increasing
/// degrees.
nlohmann::json symbol_to_json(const LaurentSymbol& s);
LaurentSymbol symbol_from_json(const nlohmann::json& j);

/// Reads a whole file; parse_error on I/O failure.
std::string read_file(const std::string& path);
nlohmann::json json_from_file(const std::string& path);

}  // namespace ppiso
