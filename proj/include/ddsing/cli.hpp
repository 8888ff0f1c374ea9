#pragma once

// Command-line front end. Exit codes: 0 nonsingular, 3 singular, 4 not
// diagonally dominant, 1 usage or input error.

#include "ddsing/generators.hpp"
#include "ddsing/io.hpp"
#include "ddsing/oracle.hpp"
#include "ddsing/verdict.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace ddsing {

enum ExitCode : int { kExitNonsingular = 0, kExitUsage = 1, kExitSingular = 3, kExitNotDominant = 4 };

namespace detail {

inline std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline MatrixFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "json") return MatrixFormat::Json;
  if (flag == "csv") return MatrixFormat::Csv;
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return MatrixFormat::Csv;
  return MatrixFormat::Json;
}

inline int exit_code_for(const MatrixVerdict& v) {
  if (!v.applicable) return kExitNotDominant;
  return v.singular ? kExitSingular : kExitNonsingular;
}

inline FixtureKind fixture_kind(const std::string& k) {
  if (k == "laplacian") return FixtureKind::Laplacian;
  if (k == "kolmogorov") return FixtureKind::Kolmogorov;
  return FixtureKind::MarkovM;
}

}  // namespace detail

/// Run the CLI with `args` (program name excluded). The report goes to
/// `out`, diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singularity verdicts with certificates for diagonally dominant matrices", "ddsing"};
  app.require_subcommand(1);

  std::string input, format = "auto", weights_path, report = "json";
  Tolerances tol;
  bool exact = false, certificate = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide singularity of a matrix");
  analyze_cmd->add_option("--input", input, "Matrix file (JSON or CSV), '-' for stdin")->required();
  analyze_cmd->add_option("--format", format, "json | csv | auto")->check(CLI::IsMember({"json", "csv", "auto"}));
  analyze_cmd->add_option("--weights", weights_path, "Positive column weights v; analyzes A diag(v)");
  analyze_cmd->add_option("--tol-dominance", tol.tol_dom, "Relative dominance tolerance");
  analyze_cmd->add_option("--tol-angle", tol.tol_angle, "Angle consistency tolerance (radians)");
  analyze_cmd->add_option("--tol-residual", tol.tol_res, "Relative certificate residual tolerance");
  analyze_cmd->add_flag("--exact", exact, "Exact rational arithmetic (real matrices only)");
  analyze_cmd->add_flag("--certificate", certificate, "Include certificates in the report");
  analyze_cmd->add_option("--report", report, "json | text")->check(CLI::IsMember({"json", "text"}));

  std::string kind = "planted", sidecar_path;
  std::size_t n = 4;
  double density = 0.5, delta = 0.0;
  std::uint64_t seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test matrix");
  gen_cmd->add_option("--kind", kind, "planted | perturbed | strict | laplacian | kolmogorov | markov-m")
      ->check(CLI::IsMember({"planted", "perturbed", "strict", "laplacian", "kolmogorov", "markov-m"}));
  gen_cmd->add_option("--n", n, "Dimension")->check(CLI::Range(1, 4096));
  gen_cmd->add_option("--density", density, "Off-diagonal fill probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("--delta", delta, "Phase perturbation for --kind perturbed (default pi/2)");
  gen_cmd->add_option("--sidecar", sidecar_path, "Also write the sidecar JSON to this file");

  double pivot_tol = 1e-10;
  std::string oracle_input, oracle_format = "auto";
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force rank, determinant and null space");
  oracle_cmd->add_option("--input", oracle_input, "Matrix file, '-' for stdin")->required();
  oracle_cmd->add_option("--format", oracle_format, "json | csv | auto")->check(CLI::IsMember({"json", "csv", "auto"}));
  oracle_cmd->add_option("--pivot-tol", pivot_tol, "Relative pivot threshold");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitNonsingular;
  } catch (const CLI::ParseError& e) {
    err << "ddsing: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      const auto fmt = detail::resolve_format(format, input);
      const std::string text = detail::read_source(input);
      MatrixVerdict v;
      if (exact) {
        const auto a = parse_matrix_exact(text, fmt);
        std::optional<std::vector<Rational>> w;
        if (!weights_path.empty()) w = parse_weights<Rational>(detail::read_source(weights_path));
        v = analyze(a, tol, w, certificate);
      } else {
        const auto a = parse_matrix(text, fmt);
        std::optional<std::vector<double>> w;
        if (!weights_path.empty()) w = parse_weights<double>(detail::read_source(weights_path));
        v = analyze(a, tol, w, certificate);
      }
      if (report == "text")
        out << report_text(v, certificate);
      else
        out << report_json(v, certificate).dump(2) << "\n";
      for (const auto& b : v.blocks)
        if (!b.certificate_error.empty()) err << "ddsing: block " << b.id + 1 << ": " << b.certificate_error << "\n";
      return detail::exit_code_for(v);
    }

    if (gen_cmd->parsed()) {
      ComplexMatrix a;
      json side = {{"kind", kind}, {"n", n}, {"density", density}, {"seed", seed}, {"planted_gamma", nullptr}};
      if (kind == "planted" || kind == "perturbed") {
        const auto inst = gen_singular_instance(n, density, seed);
        if (kind == "planted") {
          a = inst.A;
          side["planted_gamma"] = complex_vector_json(inst.gamma);
        } else {
          const double d = delta > 0.0 ? delta : std::numbers::pi / 2;
          a = gen_perturbed_instance(inst, d);
          side["delta"] = d;
        }
      } else if (kind == "strict") {
        a = gen_strict_instance(n, density, seed);
      } else {
        a = gen_fixture(detail::fixture_kind(kind), n, seed, density);
      }
      json doc = matrix_json(a);
      doc["sidecar"] = side;
      out << doc.dump(2) << "\n";
      if (!sidecar_path.empty()) {
        std::ofstream f(sidecar_path);
        if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + sidecar_path + "'");
        f << side.dump(2) << "\n";
      }
      return 0;
    }

    if (oracle_cmd->parsed()) {
      const auto a = parse_matrix(detail::read_source(oracle_input), detail::resolve_format(oracle_format, oracle_input));
      out << oracle_json(rank_det_oracle(a, pivot_tol), a.size()).dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "ddsing: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace ddsing
