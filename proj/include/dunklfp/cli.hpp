#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "dunklfp/core.hpp"
#include "dunklfp/numeric.hpp"
#include "dunklfp/verify.hpp"

namespace dunklfp::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

enum class Problem { Centrifugal, Oscillator };

/// Flat `key = value` experiment description; `#` starts a comment.
struct RunConfig {
  Problem problem = Problem::Oscillator;
  DerivativeKind kind = DerivativeKind::TP;
  Parity parity = Parity::Even;
  double a = 0.0;
  double sigma = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
  int n = 0;               // quantum number (oscillator)
  double lambda = 0.0;     // eigenvalue (centrifugal)
  std::size_t grid = 4000;
  double xmax = 12.0;
  std::optional<double> dt;
  std::optional<std::size_t> steps;
  numeric::TimeScheme scheme = numeric::TimeScheme::CrankNicolson;
  std::string output;
  std::size_t save_every = 1;
};

// Throws ConfigError naming the offending key or line.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// Validates parameters the same way the library constructors do.
DunklParams config_params(const RunConfig& cfg);
Superpotential config_superpotential(const RunConfig& cfg);

struct OutputTarget {
  std::optional<std::string> path;  // stdout when empty
};

int cmd_table(int which, int m, Parity parity, const OutputTarget& out, std::ostream& log);
int cmd_figure(const std::string& which, double xmax, int points, bool negative, const OutputTarget& out,
               std::ostream& log);
int cmd_verify(const std::string& suite, const verify::Options& opts, std::ostream& log);

struct Overrides {
  std::optional<std::size_t> grid;
  std::optional<double> xmax;
  std::optional<std::string> output;
};

int cmd_evolve(const std::string& config_path, const Overrides& over, std::ostream& log);
int cmd_spectrum(const std::string& config_path, std::size_t k, const Overrides& over, std::ostream& log);

}  // namespace dunklfp::cli
