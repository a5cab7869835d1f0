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

#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "ppiso/json_io.hpp"
#include "support.hpp"

using namespace ppiso;
using nlohmann::json;
using ppiso::testing::Rng;

namespace {
std::string fixture_path(const std::string& name) {
  return std::string(PPISO_FIXTURE_DIR) + "/" + name;
}

std::string run_command(const std::string& command) {
  std::array<char, 4096> buffer{};
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  pclose(pipe);
  return out;
}

int exit_code_of(const std::string& command) {
  FILE* pipe = popen((command + " >/dev/null 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 256> buffer{};
  while (fread(buffer.data(), 1, buffer.size(), pipe) > 0) {
  }
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

TEST_CASE("matrix JSON round-trips entrywise exactly") {
  Rng rng(199);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = testing::random_gaussian(rng, 3, 2);
    ComplexMatrix back = matrix_from_json(json::parse(matrix_to_json(a).dump()));
    REQUIRE(back.rows() == a.rows());
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) CHECK(back(i, j) == a(i, j));
  }
}

TEST_CASE("symbol JSON round-trips exactly") {
  Rng rng(211);
  LaurentSymbol s(2, 3);
  s.set_coeff(-2, testing::random_gaussian(rng, 3, 2));
  s.set_coeff(0, testing::random_gaussian(rng, 3, 2));
  s.set_coeff(3, testing::random_gaussian(rng, 3, 2));
  LaurentSymbol back = symbol_from_json(json::parse(symbol_to_json(s).dump()));
  CHECK(back.dim_domain() == 2);
  CHECK(back.dim_codomain() == 3);
  CHECK(back.degrees() == s.degrees());
  CHECK(symbol_distance(back, s) == 0.0);
}

TEST_CASE("parsers reject malformed input") {
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":1,"cols":1})")), Error);
  CHECK_THROWS_AS(
      symbol_from_json(json::parse(
          R"({"dim_domain":1,"dim_codomain":1,"coeffs":[
              {"degree":1,"matrix":{"rows":1,"cols":1,"data":[[1,0]]}},
              {"degree":0,"matrix":{"rows":1,"cols":1,"data":[[1,0]]}}]})")),
      Error);  // degrees must increase
  CHECK_THROWS_AS(json_from_file("/nonexistent/path.json"), Error);
}

TEST_CASE("fixtures parse to the expected shapes") {
  LaurentSymbol mixed = symbol_from_json(json_from_file(fixture_path("example-5.1.json")));
  CHECK(mixed.dim_domain() == 3);
  CHECK(mixed.degrees() == std::vector<int>{-1, 0, 1});
  CHECK(std::abs(mixed.coeff(0)(0, 2).real() - std::sqrt(3.0) / 2.0) < 1e-16);
  CHECK(std::abs(mixed.coeff(-1)(2, 0) - Complex(1.0)) == 0.0);

  json bundle = json_from_file(fixture_path("example-after-4.4.json"));
  CHECK(bundle.contains("theta"));
  CHECK(bundle.contains("psi"));
  CHECK(bundle.contains("phi"));
}

TEST_CASE("cli reports are deterministic and re-parseable") {
  const std::string cli = PPISO_CLI_PATH;
  const std::string cmd = cli + " toeplitz-check " + fixture_path("example-5.3.json") + " 2>/dev/null";
  const std::string first = run_command(cmd);
  const std::string second = run_command(cmd);
  CHECK(first == second);
  REQUIRE_FALSE(first.empty());

  json report = json::parse(first);
  CHECK(report.at("command") == "toeplitz-check");
  CHECK(report.at("verdict") == false);
  CHECK(report.at("tolerance") == 1e-9);
  CHECK(report.at("details").at("agree") == true);

  // emitted symbol JSON re-parses to the same value
  const std::string charfn_cmd =
      cli + " charfn " + fixture_path("shift-j3.json") + " 2>/dev/null";
  json charfn_report = json::parse(run_command(charfn_cmd));
  LaurentSymbol coeffs = symbol_from_json(charfn_report.at("details").at("coefficients"));
  LaurentSymbol again = symbol_from_json(json::parse(symbol_to_json(coeffs).dump()));
  CHECK(symbol_distance(coeffs, again) == 0.0);
}

TEST_CASE("cli exit codes distinguish verdicts, rejections, and failures") {
  const std::string cli = PPISO_CLI_PATH;
  CHECK(exit_code_of(cli + " check-pi " + fixture_path("shift-j3.json")) == 0);
  CHECK(exit_code_of(cli + " toeplitz-check " + fixture_path("example-5.2.json")) == 1);
  // a matrix file is not a symbol: parse failure
  CHECK(exit_code_of(cli + " toeplitz-check " + fixture_path("shift-j3.json")) == 2);
  CHECK(exit_code_of(cli + " check-pi /nonexistent.json") == 2);
  // hypothesis rejection: a symbol whose coefficient is not a partial isometry
  const std::string bad = "/tmp/ppiso_bad_theta.json";
  {
    LaurentSymbol s(1, 1);
    s.set_coeff(1, ComplexMatrix::Constant(1, 1, 0.5));
    std::FILE* f = std::fopen(bad.c_str(), "w");
    REQUIRE(f != nullptr);
    const std::string text = symbol_to_json(s).dump();
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  CHECK(exit_code_of(cli + " model " + bad) == 1);
}
