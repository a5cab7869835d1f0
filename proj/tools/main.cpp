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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ppiso/charfn.hpp"
#include "ppiso/core.hpp"
#include "ppiso/json_io.hpp"
#include "ppiso/model.hpp"
#include "ppiso/powerpi.hpp"
#include "ppiso/symbols.hpp"
#include "ppiso/toeplitz.hpp"

namespace {

using nlohmann::json;
using namespace ppiso;

// Exit codes: 0 = verdict true, 1 = verdict false or hypothesis rejection,
// 2 = input / parse / numeric failure.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitFailure = 2;

struct Options {
  double tol = 1e-9;
  int trunc = -1;  // -1: derive from the input
  int coeffs = 8;
  int grid = 64;
  std::uint64_t seed = 0;
  std::string output = "json";
};

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

json input_entry(const std::string& path) {
  return json{{"path", path}, {"digest", fnv1a_digest(read_file(path))}};
}

void emit(const Options& opt, const std::string& command, const json& inputs,
          const json& verdict, json details) {
  json report{{"command", command}, {"inputs", inputs},      {"verdict", verdict},
              {"details", details}, {"tolerance", opt.tol},  {"seed", opt.seed}};
  if (opt.output == "pretty")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << report.dump() << "\n";
}

// Symbol files are either a bare symbol or a bundle keyed "theta"/"psi"/"phi".
LaurentSymbol load_symbol(const json& j, const std::string& key) {
  if (j.contains("coeffs")) return symbol_from_json(j);
  if (j.contains(key)) return symbol_from_json(j.at(key));
  raise(errc::parse_error, "expected a symbol or a bundle containing \"" + key + "\"");
}

json symbol_dims(const LaurentSymbol& s) {
  return json{{"dim_domain", s.dim_domain()}, {"dim_codomain", s.dim_codomain()}};
}

int cmd_check_pi(const Options& opt, const std::string& file) {
  const Tolerance tol(opt.tol);
  ComplexMatrix t = matrix_from_json(json_from_file(file));
  const bool pi = is_partial_isometry(t, tol);
  const bool ppi = t.rows() == t.cols() && is_power_partial_isometry(t, tol);
  emit(opt, "check-pi", json::array({input_entry(file)}), ppi,
       json{{"partial_isometry", pi}, {"power_partial_isometry", ppi}});
  return ppi ? kExitTrue : kExitFalse;
}

int cmd_decompose(const Options& opt, const std::string& file) {
  const Tolerance tol(opt.tol);
  ComplexMatrix t = matrix_from_json(json_from_file(file));
  HWDecomposition hw = halmos_wallen_decompose(t, tol);
  json parts = json::object();
  json bases = json::object();
  for (const auto& [k, b] : hw.truncated_parts) {
    parts[std::to_string(k)] = b.cols();
    bases[std::to_string(k)] = matrix_to_json(b);
  }
  emit(opt, "decompose", json::array({input_entry(file)}), true,
       json{{"unitary_dim", hw.unitary_basis.cols()},
            {"parts", parts},
            {"unitary_basis", matrix_to_json(hw.unitary_basis)},
            {"part_bases", bases}});
  return kExitTrue;
}

int cmd_charfn(const Options& opt, const std::string& file) {
  const Tolerance tol(opt.tol);
  ComplexMatrix t = matrix_from_json(json_from_file(file));
  LaurentSymbol coeffs = char_fn_coeffs(t, opt.coeffs, tol);

  double eval_residual = 0.0;
  for (int j = 0; j < opt.grid; ++j) {
    const double a = 2.0 * M_PI * j / opt.grid;
    const Complex z = 0.5 * Complex(std::cos(a), std::sin(a));
    eval_residual =
        std::max(eval_residual, spectral_norm(symbol_eval(coeffs, z) - char_fn_eval(t, z, tol)));
  }

  json details{{"coefficients", symbol_to_json(coeffs)},
               {"eval_residual", eval_residual}};
  bool verdict = true;
  const bool ppi = t.rows() == t.cols() && is_power_partial_isometry(t, tol);
  details["power_partial_isometry"] = ppi;
  if (ppi) {
    LaurentSymbol closed = ppi_char_fn(t, tol);
    const double residual = symbol_distance(closed, coeffs);
    details["closed_form"] = symbol_to_json(closed);
    details["closed_form_residual"] = residual;
    verdict = residual <= tol.atol;
  }
  emit(opt, "charfn", json::array({input_entry(file)}), verdict, details);
  return verdict ? kExitTrue : kExitFalse;
}

int cmd_model(const Options& opt, const std::string& file) {
  const Tolerance tol(opt.tol);
  LaurentSymbol theta = load_symbol(json_from_file(file), "theta");
  if (!validate_theta(theta, tol)) {
    std::string reason = "symbol fails the model hypotheses";
    if (!theta.empty() && theta.min_degree() < 1)
      reason = "coefficients below degree 1 are present";
    else {
      for (const auto& [m, c] : theta.coeffs())
        if (!is_partial_isometry(c, tol)) {
          reason = "coefficient at degree " + std::to_string(m) + " is not a partial isometry";
          break;
        }
      if (reason == "symbol fails the model hypotheses" &&
          !coefficient_orthogonality(theta, tol))
        reason = "coefficients are not mutually orthogonal";
    }
    raise(errc::invalid_theta, reason);
  }

  const int degree = theta.empty() ? 0 : theta.max_degree();
  const int n = opt.trunc > 0 ? opt.trunc : degree + 8;
  ModelTruncation mt = build_model(theta, n, tol);
  const bool ppi = model_is_power_partial_isometry(mt, tol);
  ModelDecomposition md = decompose_model(theta, mt, tol);
  const bool diagonal = verify_diagonal_form(mt, md, tol);
  CoincidenceResult match = model_char_fn_matches(theta, mt, tol);

  json slots = json::array();
  for (const auto& s : mt.slots)
    slots.push_back(json{{"degree", s.degree}, {"dim", s.dim}, {"interior", s.interior}});
  json h_m = json::object();
  for (const auto& [m, part] : md.h_m_parts) h_m[std::to_string(m)] = part.cols();

  const bool verdict = ppi && diagonal && match.verdict;
  emit(opt, "model", json::array({input_entry(file)}), verdict,
       json{{"n_trunc", n},
            {"model_dim", mt.dim()},
            {"interior_dim", mt.interior_dim},
            {"slots", slots},
            {"basis", matrix_to_json(mt.basis)},
            {"op", matrix_to_json(mt.op)},
            {"power_partial_isometry", ppi},
            {"diagonal_form", diagonal},
            {"nilpotent_index", degree},
            {"coincidence_residual", match.residual},
            {"dims", json{{"h_s", md.h_s.cols()}, {"h_t", md.h_t.cols()},
                          {"h_b", md.h_b.cols()}, {"h_m", h_m}}}});
  return verdict ? kExitTrue : kExitFalse;
}

int cmd_toeplitz_check(const Options& opt, const std::string& file) {
  const Tolerance tol(opt.tol);
  LaurentSymbol phi = load_symbol(json_from_file(file), "phi");
  ConditionReport report = partial_isometry_conditions(phi, tol);
  const bool oracle = oracle_is_partial_isometry(phi, tol);
  json diags = json::array();
  for (const auto& d : report.diagnostics)
    diags.push_back(json{{"condition", d.condition},
                         {"residual", d.residual},
                         {"witness_degrees", d.witness_degrees}});
  emit(opt, "toeplitz-check", json::array({input_entry(file)}), report.verdict,
       json{{"symbol", symbol_dims(phi)},
            {"is_pi_ae", report.is_pi_ae},
            {"plus_gram_constant", report.plus_gram_constant},
            {"minus_gram_constant", report.minus_gram_constant},
            {"cross_left", report.cross_left},
            {"cross_right", report.cross_right},
            {"verdict", report.verdict},
            {"oracle", oracle},
            {"agree", report.verdict == oracle},
            {"diagnostics", diags}});
  return report.verdict ? kExitTrue : kExitFalse;
}

int cmd_coincide(const Options& opt, const std::string& file_a, const std::string& file_b) {
  const Tolerance tol(opt.tol);
  LaurentSymbol a = load_symbol(json_from_file(file_a), "theta");
  LaurentSymbol b = load_symbol(json_from_file(file_b), "theta");
  CoincideOptions copt;
  copt.seed = opt.seed;
  CoincidenceResult r = coincide(a, b, tol, copt);
  json details{{"residual", r.residual}, {"note", r.note}};
  if (r.verdict) {
    details["tau"] = matrix_to_json(r.tau);
    details["tau_star"] = matrix_to_json(r.tau_star);
  }
  emit(opt, "coincide", json::array({input_entry(file_a), input_entry(file_b)}), r.verdict,
       details);
  return r.verdict ? kExitTrue : kExitFalse;
}

int cmd_verify_factorization(const Options& opt, const std::vector<std::string>& files) {
  const Tolerance tol(opt.tol);
  LaurentSymbol theta, psi, phi;
  json inputs = json::array();
  if (files.size() == 1) {
    json bundle = json_from_file(files[0]);
    theta = load_symbol(bundle, "theta");
    psi = load_symbol(bundle, "psi");
    phi = load_symbol(bundle, "phi");
    inputs.push_back(input_entry(files[0]));
  } else {
    theta = load_symbol(json_from_file(files[0]), "theta");
    psi = load_symbol(json_from_file(files[1]), "psi");
    phi = load_symbol(json_from_file(files[2]), "phi");
    for (const auto& f : files) inputs.push_back(input_entry(f));
  }
  const bool ok = verify_factorization(theta, psi, phi, tol);
  emit(opt, "verify-factorization", inputs, ok,
       json{{"theta", symbol_dims(theta)}, {"psi", symbol_dims(psi)}, {"phi", symbol_dims(phi)}});
  return ok ? kExitTrue : kExitFalse;
}

int cmd_make_shift(const Options& opt, int k, int multiplicity) {
  ComplexMatrix j = truncated_shift(k, multiplicity);
  emit(opt, "make-shift", json::array(), true,
       json{{"k", k}, {"multiplicity", multiplicity}, {"matrix", matrix_to_json(j)}});
  return kExitTrue;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::not_contraction:
    case errc::not_power_partial_isometry:
    case errc::invalid_theta:
    case errc::not_analytic:
    case errc::zero_symbol:
    case errc::not_scalar:
    case errc::not_partial_isometry_ae:
      return kExitFalse;
    default:
      return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power partial isometries, characteristic functions, functional models and "
               "partially isometric Toeplitz symbols"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--tol", opt.tol, "absolute tolerance")->capture_default_str();
  app.add_option("--trunc", opt.trunc, "model truncation level (default: degree + 8)");
  app.add_option("--coeffs", opt.coeffs, "number of Taylor coefficients")->capture_default_str();
  app.add_option("--grid", opt.grid, "boundary / evaluation grid size")->capture_default_str();
  app.add_option("--seed", opt.seed, "master seed for randomized searches")->capture_default_str();
  app.add_option("--output", opt.output, "json or pretty")
      ->check(CLI::IsMember({"json", "pretty"}))
      ->capture_default_str();

  std::string file, file_b;
  std::vector<std::string> files;
  int shift_k = 1, shift_mult = 1;

  auto* check_pi = app.add_subcommand("check-pi", "partial / power-partial isometry verdicts");
  check_pi->add_option("file", file, "matrix JSON")->required();

  auto* decompose = app.add_subcommand("decompose", "Halmos-Wallen decomposition");
  decompose->add_option("file", file, "matrix JSON")->required();

  auto* charfn = app.add_subcommand("charfn", "characteristic function coefficients");
  charfn->add_option("file", file, "matrix JSON")->required();

  auto* model = app.add_subcommand("model", "functional model of a polynomial symbol");
  model->add_option("file", file, "symbol JSON")->required();

  auto* toeplitz = app.add_subcommand("toeplitz-check", "partially isometric Toeplitz conditions");
  toeplitz->add_option("file", file, "symbol JSON")->required();

  auto* coincide_cmd = app.add_subcommand("coincide", "coincidence of two analytic symbols");
  coincide_cmd->add_option("file_a", file, "symbol JSON")->required();
  coincide_cmd->add_option("file_b", file_b, "symbol JSON")->required();

  auto* verify = app.add_subcommand("verify-factorization",
                                    "check phi = theta psi* with inner factors");
  verify->add_option("files", files, "bundle JSON, or theta psi phi JSON files")
      ->expected(1, 3)
      ->required();

  auto* make_shift = app.add_subcommand("make-shift", "emit a truncated shift matrix");
  make_shift->add_option("k", shift_k, "shift index")->required();
  make_shift->add_option("--mult", shift_mult, "multiplicity")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitTrue : kExitFailure;
  }

  try {
    if (*check_pi) return cmd_check_pi(opt, file);
    if (*decompose) return cmd_decompose(opt, file);
    if (*charfn) return cmd_charfn(opt, file);
    if (*model) return cmd_model(opt, file);
    if (*toeplitz) return cmd_toeplitz_check(opt, file);
    if (*coincide_cmd) return cmd_coincide(opt, file, file_b);
    if (*verify) {
      if (files.size() == 2) {
        std::cerr << "verify-factorization takes one bundle or three symbol files\n";
        return kExitFailure;
      }
      return cmd_verify_factorization(opt, files);
    }
    if (*make_shift) return cmd_make_shift(opt, shift_k, shift_mult);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
