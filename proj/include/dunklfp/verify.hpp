#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dunklfp::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest residual or error the check saw
  std::string detail;
};

enum class Fault { None, TpSquareSign };

Fault parse_fault(const std::string& name);

struct Options {
  Fault fault = Fault::None;
  std::size_t grid = 4000;
  double xmax_oscillator = 12.0;
  double xmax_centrifugal = 10.0;
  unsigned seed = 7u;
  int draws = 50;
  int max_degree = 30;
};

std::vector<CheckResult> run_algebra(const Options& opts = {});
std::vector<CheckResult> run_analytic(const Options& opts = {});
std::vector<CheckResult> run_numeric(const Options& opts = {});

// One line per check; returns true when every check passed.
bool print_results(const std::string& suite, const std::vector<CheckResult>& results,
                   std::ostream& out);

}  // namespace dunklfp::verify
