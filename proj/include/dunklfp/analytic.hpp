#pragma once

#include <string>
#include <vector>

#include "dunklfp/core.hpp"

namespace dunklfp::analytic {

/// psi(x) = amplitude x^power J_order(sqrt(lambda) x) on x > 0, extended by
/// parity. Non-admissible descriptors are still evaluable.
struct BesselDescriptor {
  Parity parity = Parity::Even;
  double power = 0.0;
  double order = 0.0;
  double lambda = 0.0;
  double amplitude = 1.0;
  bool admissible = false;
};

/// psi(x) = amplitude e^{-x^2/beta} x^power L_n^alpha(x^2/beta) on x > 0,
/// extended by parity. eta is kept for the |x|^{2 eta} normalization weight.
struct LaguerreDescriptor {
  Parity parity = Parity::Even;
  double beta = 1.0;
  double power = 0.0;
  double alpha = 0.0;
  int n = 0;
  double lambda = 0.0;
  double amplitude = 1.0;
  double eta = 0.0;
  bool admissible = false;
};

// Throws RangeError for lambda <= 0 and for invalid (a, sigma, mu).
BesselDescriptor centrifugal_solution(Parity parity, double a, double sigma, double mu,
                                      double lambda);

// First `count` mu > -1/2, ascending, with |a + mu - 1/2| (Even) or
// |a - mu - 1/2| (Odd) a nonnegative integer.
std::vector<double> centrifugal_admissible_mu(Parity parity, double a, int count);

// sigma = m + a + 1/2 - j for j = 0, 1, ..., stopping at sigma <= -1/2.
std::vector<double> centrifugal_admissible_sigma(double a, int m, int count);

// params must be TP; throws KindError otherwise and AlphaError if alpha <= -1.
LaguerreDescriptor oscillator_solution(Parity parity, double a, const DunklParams& params, int n);

/// gamma making the prefactor exponent an integer of the right parity:
/// 2a/(1 + gamma) = 2m (Even) or 2a/(1 - gamma) - 2 eta = 2m + 1 (Odd).
/// Throws RangeError when the result falls outside (-1, 1).
double oscillator_gamma_for_parity(Parity parity, double a, double mu, int m);

// Throws DomainError at x = 0 when power < 0.
double eval_descriptor(const BesselDescriptor& d, double x);
double eval_descriptor(const LaguerreDescriptor& d, double x);

// Integral of psi^2 |x|^{2 eta} over the real line, by Gauss-Laguerre in
// u = 2 x^2 / beta.
double normalization_integral(const LaguerreDescriptor& d);
// Copy with amplitude chosen so normalization_integral is 1.
LaguerreDescriptor normalize(const LaguerreDescriptor& d);

std::string render(const BesselDescriptor& d);
std::string render(const LaguerreDescriptor& d);

struct Table1Row {
  double mu = 0.0;
  double sigma = 0.0;
  BesselDescriptor even;
  BesselDescriptor odd;
};

inline constexpr double kTable1A = 2.0;
inline constexpr double kTable1Lambda = 4.0;

std::vector<Table1Row> generate_table1();

/// Laguerre factor of row n as coefficients in u = x^2/beta; coefficient j
/// is itself a polynomial in alpha (entry r multiplies alpha^r).
struct Table2Row {
  int n = 0;
  LaguerreDescriptor descriptor;
  std::vector<std::vector<double>> coefficients;
};

inline constexpr double kOscillatorA = 4.3;
inline constexpr double kOscillatorMu = 0.6;

int default_table2_m(Parity parity);

// Rows n = 0..3 for a = 4.3, mu = 0.6 and gamma from
// oscillator_gamma_for_parity(parity, a, mu, m).
std::vector<Table2Row> generate_table2(int m, Parity parity);

// "1/6*alpha^3 + alpha^2 + 11/6*alpha + 1".
std::string render_alpha_polynomial(const std::vector<double>& poly);

enum class Figure { F1a, F1b, F2a, F2b };

Figure parse_figure(const std::string& name);
std::string to_string(Figure f);

struct FigureData {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Samples the three curves on (x_lo, x_hi] with `points` uniform samples.
// With `negative`, the mirrored range [-x_hi, -x_lo) is prepended.
FigureData figure_data(Figure f, double x_hi = 10.0, int points = 1000, bool negative = false);

// The three descriptors behind figure 1a/1b (Bessel) or 2a/2b (Laguerre).
std::vector<BesselDescriptor> figure1_descriptors(Parity parity);
std::vector<LaguerreDescriptor> figure2_descriptors(Parity parity);

}  // namespace dunklfp::analytic
