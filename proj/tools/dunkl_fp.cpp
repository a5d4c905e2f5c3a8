// dunkl-fp: tables, figure data, verification suites and evolution runs.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dunklfp/analytic.hpp"
#include "dunklfp/cli.hpp"
#include "dunklfp/errors.hpp"

namespace cli = dunklfp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Dunkl-type Fokker-Planck tables, figures, verification and evolution"};
  app.require_subcommand(1);

  std::optional<std::string> out;
  std::optional<std::size_t> grid;
  std::optional<double> xmax;
  app.add_option("--out", out, "Output file (stdout when omitted)");
  app.add_option("--grid", grid, "Number of grid nodes")->check(CLI::Range(std::size_t{3}, std::size_t{10000000}));
  app.add_option("--xmax", xmax, "Outer end of the half-line or figure range")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("table", "Write table 1 or 2 as CSV")->fallthrough();
  int table_which = 1;
  std::optional<int> table_m;
  std::string table_parity = "even";
  table->add_option("which", table_which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  table->add_option("--m", table_m, "Exponent index selecting gamma (table 2)");
  table->add_option("--parity", table_parity, "even or odd (table 2)")->check(CLI::IsMember({"even", "odd"}));

  auto* figure = app.add_subcommand("figure", "Write figure curves as CSV")->fallthrough();
  std::string figure_which;
  int points = 1000;
  bool negative = false;
  figure->add_option("which", figure_which, "1a, 1b, 2a or 2b")->required();
  figure->add_option("--points", points, "Samples on (0, xmax]")->check(CLI::Range(2, 10000000));
  figure->add_flag("--negative", negative, "Extend to negative x by parity");

  auto* verify = app.add_subcommand("verify", "Run verification suites")->fallthrough();
  std::string suite = "all";
  std::string fault;
  verify->add_option("suite", suite, "algebra, analytic, numeric or all");
  verify->add_option("--inject-fault", fault)->group("");

  auto* evolve = app.add_subcommand("evolve", "Evolve an eigenmode from a config file")->fallthrough();
  std::string evolve_config;
  evolve->add_option("config", evolve_config, "key = value config file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenvalues for an oscillator config")->fallthrough();
  std::string spectrum_config;
  std::size_t k = 4;
  spectrum->add_option("config", spectrum_config, "key = value config file")->required();
  spectrum->add_option("--k", k, "Number of eigenvalues")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  const cli::OutputTarget target{out};
  if (*table) {
    dunklfp::Parity parity = table_parity == "odd" ? dunklfp::Parity::Odd : dunklfp::Parity::Even;
    const int m = table_m.value_or(dunklfp::analytic::default_table2_m(parity));
    return cli::cmd_table(table_which, m, parity, target, std::cerr);
  }
  if (*figure) return cli::cmd_figure(figure_which, xmax.value_or(10.0), points, negative, target, std::cerr);
  if (*verify) {
    dunklfp::verify::Options opts;
    try {
      opts.fault = dunklfp::verify::parse_fault(fault);
    } catch (const dunklfp::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kUsageError;
    }
    if (grid) opts.grid = *grid;
    if (xmax) opts.xmax_oscillator = *xmax;
    return cli::cmd_verify(suite, opts, std::cout);
  }
  const cli::Overrides over{grid, xmax, out};
  if (*evolve) return cli::cmd_evolve(evolve_config, over, std::cout);
  return cli::cmd_spectrum(spectrum_config, k, over, std::cout);
}
