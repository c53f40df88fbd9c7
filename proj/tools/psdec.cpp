#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "psdec/cli.hpp"

namespace {

using namespace psdec;

std::optional<std::int64_t> optional_q(const CLI::Option* opt, std::int64_t q) {
  if (opt->count() == 0) return std::nullopt;
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal series decomposition for GL3 over finite local rings"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "json, csv or table")->capture_default_str();

  int max_level = 2;
  bool classes = false;
  auto* cone = app.add_subcommand("cone", "list cone points or their classes");
  cone->add_option("--max-level", max_level, "largest level, at most 30")->capture_default_str();
  cone->add_flag("--classes", classes, "group points into equivalence classes");

  std::string point = "2,2,3";
  std::int64_t q = 0;
  bool symbolic = false;
  auto* decompose = app.add_subcommand("decompose", "constituents of V_c");
  decompose->add_option("--c", point, "cone point c1,c2,c3")->required();
  auto* decompose_q = decompose->add_option("--q", q, "residue field size");
  decompose->add_flag("--symbolic", symbolic, "print polynomials in q");

  int max_n = 8;
  bool aggregate = false;
  auto* zeta = app.add_subcommand("zeta", "catalogue counts against the printed closed forms");
  auto* zeta_q = zeta->add_option("--q", q, "residue field size");
  zeta->add_option("--max-n", max_n, "largest exponent, at most 40")->capture_default_str();
  zeta->add_flag("--symbolic", symbolic, "print polynomials in q");
  zeta->add_flag("--aggregate", aggregate, "merge counts by integer dimension");

  cli::VerifyOptions vo;
  std::string backend = "zmod";
  std::string verify_point = "2,2,3";
  auto* verify = app.add_subcommand("verify", "run the brute-force verification suites");
  verify->add_option("suite", vo.suite, "group, gl3 or all")->capture_default_str();
  verify->add_option("--p", vo.p, "residue characteristic")->capture_default_str();
  verify->add_option("--m", vo.m, "stabilizer level")->capture_default_str();
  verify->add_option("--delta-exp", vo.delta_exp, "valuation of delta")->capture_default_str();
  verify->add_option("--seed", vo.seed, "root RNG seed")->capture_default_str();
  verify->add_option("--backend", backend, "zmod or polymod")->capture_default_str();
  verify->add_option("--c", verify_point, "cone point for the gl3 suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::exit_ok : cli::exit_usage;
  }

  try {
    const auto fmt = cli::parse_format(format);
    cli::CommandResult result;
    if (*cone) {
      result = cli::cmd_cone(max_level, classes);
    } else if (*decompose) {
      result = cli::cmd_decompose(cli::parse_point(point), optional_q(decompose_q, q), symbolic);
    } else if (*zeta) {
      result = cli::cmd_zeta(optional_q(zeta_q, q), max_n, symbolic, aggregate);
    } else {
      vo.backend = parse_backend(backend);
      vo.c = cli::parse_point(verify_point);
      result = cli::cmd_verify(vo);
    }
    std::cout << cli::render(result.document, fmt);
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_verification;
  }
}
