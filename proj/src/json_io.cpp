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

#include "ppiso/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ppiso {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& a) {
  json data = json::array();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      data.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    const json& data = j.at("data");
    if (rows < 0 || cols < 0) raise(errc::parse_error, "negative matrix dimensions");
    if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
      raise(errc::parse_error, "matrix data length does not equal rows * cols");
    ComplexMatrix a(rows, cols);
    Index at = 0;
    for (Index i = 0; i < rows; ++i)
      for (Index j2 = 0; j2 < cols; ++j2, ++at) {
        const json& entry = data.at(at);
        if (!entry.is_array() || entry.size() != 2)
          raise(errc::parse_error, "matrix entries must be [re, im] pairs");
        const double re = entry.at(0).get<double>();
        const double im = entry.at(1).get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
          raise(errc::parse_error, "matrix entries must be finite");
        a(i, j2) = Complex(re, im);
      }
    return a;
  } catch (const json::exception& e) {
    raise(errc::parse_error, e.what());
  }
}

json symbol_to_json(const LaurentSymbol& s) {
  json coeffs = json::array();
  for (const auto& [m, c] : s.coeffs())
    coeffs.push_back(json{{"degree", m}, {"matrix", matrix_to_json(c)}});
  return json{{"dim_domain", s.dim_domain()},
              {"dim_codomain", s.dim_codomain()},
              {"coeffs", std::move(coeffs)}};
}

LaurentSymbol symbol_from_json(const json& j) {
  try {
    LaurentSymbol s(j.at("dim_domain").get<Index>(), j.at("dim_codomain").get<Index>());
    const json& coeffs = j.at("coeffs");
    if (!coeffs.is_array()) raise(errc::parse_error, "coeffs must be an array");
    int last_degree = 0;
    bool first = true;
    for (const json& entry : coeffs) {
      const int degree = entry.at("degree").get<int>();
      if (!first && degree <= last_degree)
        raise(errc::parse_error, "coefficient degrees must be strictly increasing");
      first = false;
      last_degree = degree;
      s.set_coeff(degree, matrix_from_json(entry.at("matrix")));
    }
    return s;
  } catch (const json::exception& e) {
    raise(errc::parse_error, e.what());
  } catch (const std::invalid_argument& e) {
    raise(errc::parse_error, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json json_from_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string(e.what()) + " in " + path);
  }
}

}  // namespace ppiso
