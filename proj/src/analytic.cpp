#include "dunklfp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dunklfp/errors.hpp"
#include "dunklfp/format.hpp"
#include "dunklfp/specfun.hpp"

namespace dunklfp::analytic {

namespace {

constexpr double kIntegerTol = 1e-9;

bool is_integer(double v) { return std::fabs(v - std::nearbyint(v)) < kIntegerTol; }

long long as_int(double v) { return static_cast<long long>(std::nearbyint(v)); }

int parity_residue(Parity p) { return p == Parity::Even ? 0 : 1; }

void push_unique(std::vector<double>& values, double v) {
  for (double existing : values)
    if (std::fabs(existing - v) < kIntegerTol) return;
  values.push_back(v);
}

// Value on x > 0 extended to x < 0 by parity.
template <class F>
double with_parity(Parity parity, double x, F&& positive_branch) {
  if (x >= 0.0) return positive_branch(x);
  const double v = positive_branch(-x);
  return parity == Parity::Even ? v : -v;
}

}  // namespace

BesselDescriptor centrifugal_solution(Parity parity, double a, double sigma, double mu,
                                      double lambda) {
  if (!(lambda > 0.0)) throw RangeError("centrifugal eigenvalue must be positive");
  (void)Superpotential::centrifugal(a);
  (void)make_params(DerivativeKind::CH, sigma, mu);

  BesselDescriptor d;
  d.parity = parity;
  d.power = a - sigma + 0.5;
  d.order = parity == Parity::Even ? std::fabs(a + mu - 0.5) : std::fabs(a - mu - 0.5);
  d.lambda = lambda;
  if (is_integer(d.order) && is_integer(d.power)) {
    const long long m = as_int(d.order);
    const long long n = as_int(d.power);
    d.admissible = n >= -m && ((n + m) % 2 + 2) % 2 == parity_residue(parity);
  }
  return d;
}

std::vector<double> centrifugal_admissible_mu(Parity parity, double a, int count) {
  (void)Superpotential::centrifugal(a);
  if (count < 1) throw RangeError("count must be at least 1");
  // |a + mu - 1/2| = m gives mu = 1/2 - a +- m; |a - mu - 1/2| = m gives
  // mu = a - 1/2 +- m.
  const double centre = parity == Parity::Even ? 0.5 - a : a - 0.5;
  std::vector<double> values;
  const int limit = count + static_cast<int>(std::ceil(std::fabs(centre))) + 2;
  for (int m = 0; m <= limit; ++m) {
    for (double mu : {centre - m, centre + m})
      if (mu > -0.5) push_unique(values, mu);
  }
  std::sort(values.begin(), values.end());
  if (values.size() > static_cast<std::size_t>(count)) values.resize(static_cast<std::size_t>(count));
  return values;
}

std::vector<double> centrifugal_admissible_sigma(double a, int m, int count) {
  if (m < 0) throw RangeError("Bessel order m must be nonnegative");
  std::vector<double> values;
  for (int j = 0; static_cast<int>(values.size()) < count; ++j) {
    const double sigma = m + a + 0.5 - j;
    if (!(sigma > -0.5)) break;
    values.push_back(sigma);
  }
  return values;
}

LaguerreDescriptor oscillator_solution(Parity parity, double a, const DunklParams& params,
                                       int n) {
  if (params.kind() != DerivativeKind::TP) throw KindError("oscillator solution needs TP parameters");
  if (n < 0) throw RangeError("quantum number must be nonnegative");
  (void)Superpotential::oscillator_centrifugal(a);

  const double gamma = params.gamma();
  const double eta = params.eta();
  LaguerreDescriptor d;
  d.parity = parity;
  d.n = n;
  d.eta = eta;
  if (parity == Parity::Even) {
    d.beta = 1.0 + gamma;
    d.power = 2.0 * a / (1.0 + gamma);
    d.alpha = eta - 0.5 + a / (1.0 + gamma);
    d.lambda = 4.0 * n * (1.0 - gamma);
    d.admissible = is_integer(d.power) && as_int(d.power) >= 2 && as_int(d.power) % 2 == 0;
  } else {
    d.beta = 1.0 - gamma;
    d.power = 2.0 * a / (1.0 - gamma) - 2.0 * eta;
    d.alpha = a / (1.0 - gamma) - eta - 0.5;
    d.lambda = 4.0 * n * (1.0 + gamma);
    d.admissible = is_integer(d.power) && as_int(d.power) >= 1 && as_int(d.power) % 2 == 1;
  }
  if (!(d.alpha > -1.0)) {
    throw AlphaError("Laguerre index alpha = " + format_real(d.alpha) + " is not > -1");
  }
  return d;
}

double oscillator_gamma_for_parity(Parity parity, double a, double mu, int m) {
  if (parity == Parity::Even) {
    if (m < 1) throw RangeError("even exponent 2m needs m >= 1");
    const double ratio = a / m;
    if (!(ratio > 0.0 && ratio < 2.0)) {
      throw RangeError("no gamma in (-1, 1) gives exponent 2m for m = " + std::to_string(m));
    }
    return ratio - 1.0;
  }
  if (m < 0) throw RangeError("odd exponent 2m+1 needs m >= 0");
  const double ratio = 2.0 * (a - mu) / (2.0 * m + 1.0);
  if (!(a > mu) || !(ratio > 0.0 && ratio < 2.0)) {
    throw RangeError("no gamma in (-1, 1) gives exponent 2m+1 for m = " + std::to_string(m));
  }
  return 1.0 - ratio;
}

double eval_descriptor(const BesselDescriptor& d, double x) {
  if (x == 0.0 && d.power < 0.0) throw DomainError("descriptor is singular at x = 0");
  const double scale = std::sqrt(d.lambda);
  return with_parity(d.parity, x, [&](double t) {
    return d.amplitude * std::pow(t, d.power) * specfun::bessel_j(d.order, scale * t);
  });
}

double eval_descriptor(const LaguerreDescriptor& d, double x) {
  if (x == 0.0 && d.power < 0.0) throw DomainError("descriptor is singular at x = 0");
  return with_parity(d.parity, x, [&](double t) {
    const double u = t * t / d.beta;
    return d.amplitude * std::exp(-u) * std::pow(t, d.power) * specfun::laguerre(d.n, d.alpha, u);
  });
}

double normalization_integral(const LaguerreDescriptor& d) {
  // With v = 2x^2/beta the integral is
  //   A^2 (beta/2)^(P + eta + 1/2) int v^(P + eta - 1/2) e^-v L(v/2)^2 dv.
  const double exponent = d.power + d.eta - 0.5;
  if (!(exponent > -1.0)) throw DomainError("normalization integral diverges at the origin");
  const auto rule = specfun::QuadratureRule::gauss_laguerre(static_cast<std::size_t>(d.n) + 4, exponent);
  const auto lag = [&](double v) { return specfun::laguerre(d.n, d.alpha, 0.5 * v); };
  const auto weight = [&](double v) { return rule.intrinsic_weight(v); };
  const double integral = specfun::weighted_inner_product(lag, lag, weight, rule, 1e-10).value;
  return d.amplitude * d.amplitude * std::pow(0.5 * d.beta, exponent + 1.0) * integral;
}

LaguerreDescriptor normalize(const LaguerreDescriptor& d) {
  LaguerreDescriptor out = d;
  out.amplitude = 1.0;
  out.amplitude = 1.0 / std::sqrt(normalization_integral(out));
  return out;
}

namespace {

std::string wrapped(double v) {
  const std::string s = format_number(v);
  if (s.find_first_of("/-.e") != std::string::npos) return "(" + s + ")";
  return s;
}

}  // namespace

std::string render(const BesselDescriptor& d) {
  return "x^{" + format_number(d.power) + "} J_{" + format_number(d.order) + "}(" +
         format_number(std::sqrt(d.lambda)) + " x)";
}

std::string render(const LaguerreDescriptor& d) {
  const std::string b = wrapped(d.beta);
  return "e^{-x^2/" + b + "} x^{" + format_number(d.power) + "} L_{" + std::to_string(d.n) +
         "}^{" + format_number(d.alpha) + "}(x^2/" + b + ")";
}

std::vector<Table1Row> generate_table1() {
  constexpr double rows[3][2] = {{0.5, 2.5}, {5.5, 3.5}, {4.5, 4.5}};
  std::vector<Table1Row> out;
  for (const auto& r : rows) {
    Table1Row row;
    row.mu = r[0];
    row.sigma = r[1];
    row.even = centrifugal_solution(Parity::Even, kTable1A, row.sigma, row.mu, kTable1Lambda);
    row.odd = centrifugal_solution(Parity::Odd, kTable1A, row.sigma, row.mu, kTable1Lambda);
    out.push_back(row);
  }
  return out;
}

int default_table2_m(Parity parity) { return parity == Parity::Even ? 3 : 2; }

std::vector<Table2Row> generate_table2(int m, Parity parity) {
  const double gamma = oscillator_gamma_for_parity(parity, kOscillatorA, kOscillatorMu, m);
  const DunklParams params = make_params(DerivativeKind::TP, 0.0, kOscillatorMu, gamma);
  std::vector<Table2Row> out;
  for (int n = 0; n <= 3; ++n) {
    Table2Row row;
    row.n = n;
    row.descriptor = oscillator_solution(parity, kOscillatorA, params, n);
    for (int j = 0; j <= n; ++j) row.coefficients.push_back(specfun::laguerre_coefficient_in_alpha(n, j));
    out.push_back(std::move(row));
  }
  return out;
}

std::string render_alpha_polynomial(const std::vector<double>& poly) {
  std::string out;
  for (std::size_t idx = poly.size(); idx-- > 0;) {
    const double c = poly[idx];
    if (c == 0.0) continue;
    const bool negative = c < 0.0;
    const double mag = std::fabs(c);
    std::string term;
    if (idx == 0) {
      term = format_number(mag);
    } else {
      if (mag != 1.0) term = format_number(mag) + "*";
      term += "alpha";
      if (idx > 1) term += "^" + std::to_string(idx);
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

Figure parse_figure(const std::string& name) {
  if (name == "1a") return Figure::F1a;
  if (name == "1b") return Figure::F1b;
  if (name == "2a") return Figure::F2a;
  if (name == "2b") return Figure::F2b;
  throw ConfigError("unknown figure '" + name + "' (expected 1a, 1b, 2a or 2b)");
}

std::string to_string(Figure f) {
  switch (f) {
    case Figure::F1a: return "1a";
    case Figure::F1b: return "1b";
    case Figure::F2a: return "2a";
    case Figure::F2b: return "2b";
  }
  return "";
}

std::vector<BesselDescriptor> figure1_descriptors(Parity parity) {
  std::vector<BesselDescriptor> out;
  for (const Table1Row& row : generate_table1()) out.push_back(parity == Parity::Even ? row.even : row.odd);
  return out;
}

std::vector<LaguerreDescriptor> figure2_descriptors(Parity parity) {
  const double gamma = oscillator_gamma_for_parity(parity, kOscillatorA, kOscillatorMu,
                                                   default_table2_m(parity));
  const DunklParams params = make_params(DerivativeKind::TP, 0.0, kOscillatorMu, gamma);
  std::vector<LaguerreDescriptor> out;
  for (int n = 0; n < 3; ++n) out.push_back(oscillator_solution(parity, kOscillatorA, params, n));
  return out;
}

FigureData figure_data(Figure f, double x_hi, int points, bool negative) {
  if (!(x_hi > 0.0)) throw RangeError("figure range must be positive");
  if (points < 2) throw RangeError("figure needs at least 2 points");

  std::vector<std::function<double(double)>> curves;
  FigureData data;
  data.header = {"x", "curve1", "curve2", "curve3"};
  double note = 0.0;
  const bool bessel = f == Figure::F1a || f == Figure::F1b;
  const Parity parity = (f == Figure::F1a || f == Figure::F2a) ? Parity::Even : Parity::Odd;
  if (bessel) {
    for (const auto& d : figure1_descriptors(parity))
      curves.push_back([d](double x) { return eval_descriptor(d, x); });
  } else {
    const auto ds = figure2_descriptors(parity);
    for (const auto& d : ds) curves.push_back([d](double x) { return eval_descriptor(d, x); });
    note = ds.front().alpha;
    data.header.push_back(std::string(parity == Parity::Even ? "alpha_e=" : "alpha_o=") +
                          format_number(note));
  }

  std::vector<double> xs;
  if (negative)
    for (int i = points; i >= 1; --i) xs.push_back(-x_hi * i / points);
  for (int i = 1; i <= points; ++i) xs.push_back(x_hi * i / points);

  for (double x : xs) {
    std::vector<double> row{x};
    for (const auto& c : curves) row.push_back(c(x));
    if (!bessel) row.push_back(note);
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace dunklfp::analytic
