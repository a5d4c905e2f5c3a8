#include "dunklfp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "dunklfp/analytic.hpp"
#include "dunklfp/errors.hpp"
#include "dunklfp/format.hpp"
#include "dunklfp/numeric.hpp"
#include "dunklfp/opalg.hpp"
#include "dunklfp/specfun.hpp"

namespace dunklfp::verify {

namespace {

using opalg::LaurentPolynomial;

// TP closed form with the reflection term entered with the wrong sign.
LaurentPolynomial faulty_tp_square(const DunklParams& params, const LaurentPolynomial& p) {
  const double gamma = params.gamma();
  const long double eta = params.eta();
  const LaurentPolynomial dp = opalg::differentiate(p);
  LaurentPolynomial inner = opalg::differentiate(dp) + (2.0L * eta) * dp.shifted(-1) -
                            eta * p.shifted(-2) - eta * opalg::apply_reflection(p).shifted(-2);
  return (1.0L - static_cast<long double>(gamma) * gamma) * inner;
}

struct Worst {
  bool passed = true;
  long double worst = 0.0L;
  std::string first_failure;

  void add(const opalg::Report& r) {
    worst = std::max(worst, r.worst_residual);
    if (!r.passed && passed) {
      passed = false;
      first_failure = r.check + " fails at k = " + std::to_string(r.violations.front().degree);
    }
  }

  CheckResult result(std::string name, std::string detail) const {
    return {std::move(name), passed, static_cast<double>(worst), passed ? detail : first_failure};
  }
};

}  // namespace

Fault parse_fault(const std::string& name) {
  if (name.empty() || name == "none") return Fault::None;
  if (name == "tp-square-sign") return Fault::TpSquareSign;
  throw ConfigError("unknown fault '" + name + "'");
}

std::vector<CheckResult> run_algebra(const Options& opts) {
  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> param(-0.49, 3.0);
  std::uniform_real_distribution<double> gam(-0.95, 0.95);

  Worst anti;
  Worst square_ch;
  Worst square_tp;
  Worst rewrite;
  Worst special;
  Worst product;
  for (int d = 0; d < opts.draws; ++d) {
    const double sigma = param(rng);
    const double mu = param(rng);
    const double gamma = gam(rng);
    const DunklParams ch = make_params(DerivativeKind::CH, sigma, mu);
    const DunklParams tp = make_params(DerivativeKind::TP, 0.0, mu, gamma);
    for (const DunklParams& p : {ch, tp, DunklParams::yang(mu), DunklParams::dunkl(mu)})
      anti.add(opalg::verify_anticommutation(p, opts.max_degree));
    square_ch.add(opalg::verify_square_closed_form(ch, opts.max_degree));
    if (opts.fault == Fault::TpSquareSign) {
      square_tp.add(opalg::verify_square_closed_form(
          tp, opts.max_degree, [&](const LaurentPolynomial& q) { return faulty_tp_square(tp, q); }));
    } else {
      square_tp.add(opalg::verify_square_closed_form(tp, opts.max_degree));
    }
    rewrite.add(opalg::verify_tp_rewrite(tp, opts.max_degree));
    for (const auto& r : opalg::verify_specializations(mu, opts.max_degree)) special.add(r);
    const double a = param(rng) * 2.0;
    if (a != 1.0) product.add(opalg::verify_product_parity(Superpotential::centrifugal(a), opts.max_degree));
  }
  const std::string span = std::to_string(opts.draws) + " draws, |k| <= " + std::to_string(opts.max_degree);
  return {
      anti.result("anticommutation RD + DR = 0", span),
      square_ch.result("CH square closed form", span),
      square_tp.result("TP square closed form", span),
      rewrite.result("TP eta rewrite", span),
      special.result("specializations CH->Yang, CH->Dunkl, TP->Dunkl", span),
      product.result("product parity R(wp) = (Rw)(Rp)", span),
  };
}

std::vector<CheckResult> run_analytic(const Options&) {
  std::vector<CheckResult> out;

  // Parity of every descriptor used for tables and figures.
  {
    double worst = 0.0;
    const auto check = [&](const auto& d) {
      const double sign = d.parity == Parity::Even ? 1.0 : -1.0;
      for (int i = 1; i <= 1000; ++i) {
        const double x = 0.01 * i;
        const double v = analytic::eval_descriptor(d, x);
        const double m = analytic::eval_descriptor(d, -x);
        if (v != 0.0) worst = std::max(worst, std::fabs(m - sign * v) / std::fabs(v));
      }
    };
    for (Parity p : {Parity::Even, Parity::Odd}) {
      for (const auto& d : analytic::figure1_descriptors(p)) check(d);
      for (const auto& d : analytic::figure2_descriptors(p)) check(d);
    }
    out.push_back({"descriptor parity extension", worst <= 1e-12, worst, "1000 points per descriptor"});
  }

  // Admissible Bessel descriptors stay bounded at the origin.
  {
    bool ok = true;
    double worst = 0.0;
    for (const auto& row : analytic::generate_table1()) {
      for (const auto& d : {row.even, row.odd}) {
        ok = ok && d.admissible;
        const double x = 1e-6;
        const double lead = std::pow(x, d.power + d.order) *
                            std::pow(0.5 * std::sqrt(d.lambda), d.order) / std::tgamma(d.order + 1.0);
        const double v = analytic::eval_descriptor(d, x);
        const double err = std::fabs(v - lead) / std::max(std::fabs(lead), 1e-300);
        worst = std::max(worst, err);
        ok = ok && std::isfinite(v) && d.power + d.order >= 0.0 && err < 1e-6;
      }
    }
    out.push_back({"Bessel regularity at the origin", ok, worst, "x = 1e-6 against the leading term"});
  }

  // lambda >= 0 over a gamma lattice, and the gamma = 0 reduction.
  {
    bool ok = true;
    double worst = 0.0;
    for (double gamma = -0.9; gamma < 0.95; gamma += 0.1) {
      const DunklParams p = make_params(DerivativeKind::TP, 0.0, 0.6, gamma);
      for (Parity par : {Parity::Even, Parity::Odd})
        for (int n = 0; n < 6; ++n) ok = ok && analytic::oscillator_solution(par, 4.3, p, n).lambda >= 0.0;
    }
    const DunklParams dunkl_like = make_params(DerivativeKind::TP, 0.0, 0.6, 0.0);
    for (int n = 0; n < 6; ++n) {
      const auto e = analytic::oscillator_solution(Parity::Even, 4.3, dunkl_like, n);
      const auto o = analytic::oscillator_solution(Parity::Odd, 4.3, dunkl_like, n);
      worst = std::max({worst, std::fabs(e.alpha - (0.6 - 0.5 + 4.3)), std::fabs(e.lambda - 4.0 * n),
                        std::fabs(o.lambda - 4.0 * n)});
    }
    ok = ok && worst < 1e-12;
    out.push_back({"oscillator spectrum nonnegative, gamma = 0 reduction", ok, worst, "gamma lattice step 0.1"});
  }

  // Truncated ascending series of each Table 1 descriptor against the exact
  // Laurent operator: only the top retained order may carry a residual.
  {
    bool ok = true;
    double worst = 0.0;
    constexpr int kTerms = 12;
    for (const auto& row : analytic::generate_table1()) {
      const DunklParams params = make_params(DerivativeKind::CH, row.sigma, row.mu);
      const Superpotential s = Superpotential::centrifugal(analytic::kTable1A);
      for (const auto& d : {row.even, row.odd}) {
        const int m = static_cast<int>(std::lround(d.order));
        const int base = static_cast<int>(std::lround(d.power)) + m;
        const long double half = 0.5L * std::sqrt(static_cast<long double>(d.lambda));
        opalg::ParitySeries f{{}, 0.0, d.parity};
        for (int k = 0; k < kTerms; ++k) {
          long double b = std::pow(half, static_cast<long double>(2 * k + m)) /
                          (std::tgamma(k + 1.0L) * std::tgamma(k + m + 1.0L));
          if (k % 2 != 0) b = -b;
          f.body.add_term(base + 2 * k, b);
        }
        const opalg::ParitySeries lf = opalg::apply_fp_operator(params, s, f);
        const LaurentPolynomial r = lf.body - static_cast<long double>(d.lambda) * f.body;
        const int top = base + 2 * (kTerms - 1);
        for (const auto& [deg, c] : r.terms()) {
          if (deg >= top) continue;
          const double rel = static_cast<double>(std::fabs(c) / f.body.max_abs());
          worst = std::max(worst, rel);
          ok = ok && rel < 1e-12;
        }
      }
    }
    out.push_back({"Bessel series satisfies the exact Laurent FP operator", ok, worst,
                   "12-term series, residual confined to the top order"});
  }
  return out;
}

std::vector<CheckResult> run_numeric(const Options& opts) {
  std::vector<CheckResult> out;
  const Superpotential osc = Superpotential::oscillator_centrifugal(analytic::kOscillatorA);

  for (Parity par : {Parity::Even, Parity::Odd}) {
    const double gamma = analytic::oscillator_gamma_for_parity(par, analytic::kOscillatorA, analytic::kOscillatorMu,
                                                               analytic::default_table2_m(par));
    const DunklParams params = make_params(DerivativeKind::TP, 0.0, analytic::kOscillatorMu, gamma);
    const auto op = numeric::build_sector_operator(params, osc, par,
                                                   HalfLineGrid::with_extent(opts.grid, opts.xmax_oscillator));
    const auto pairs = numeric::lowest_eigenpairs(op, 4);
    const double spacing = 4.0 * (1.0 - parity_sign(par) * gamma);
    double worst = std::fabs(pairs[0].lambda) / pairs[1].lambda;
    bool ok = worst < 1e-3;
    for (std::size_t n = 1; n < pairs.size(); ++n) {
      const double ratio = pairs[n].lambda / spacing;
      const double rel = std::fabs(pairs[n].lambda - spacing * n) / (spacing * n);
      worst = std::max(worst, rel);
      ok = ok && std::lround(ratio) == static_cast<long>(n) && rel < 5e-3;
    }
    out.push_back({"spectral match " + std::string(to_string(par)) + " lambda = 4n(1" +
                       (par == Parity::Even ? "-" : "+") + "gamma)",
                   ok, worst, "gamma = " + format_number(gamma)});

    double vec_worst = 0.0;
    for (std::size_t n = 0; n < pairs.size(); ++n) {
      const auto d = analytic::normalize(analytic::oscillator_solution(par, analytic::kOscillatorA, params, static_cast<int>(n)));
      const auto psi = numeric::sample(op, [&](double x) { return analytic::eval_descriptor(d, x); });
      double dotp = 0.0;
      double num = 0.0;
      double den = 0.0;
      const double e = op.norm_exponent();
      for (std::size_t i = 0; i < psi.samples.size(); ++i)
        dotp += std::pow(op.grid().node(i), e) * psi.samples[i] * pairs[n].psi.samples[i];
      const double sign = dotp < 0.0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < psi.samples.size(); ++i) {
        const double w = std::pow(op.grid().node(i), e);
        const double diff = psi.samples[i] - sign * pairs[n].psi.samples[i];
        num += w * diff * diff;
        den += w * psi.samples[i] * psi.samples[i];
      }
      vec_worst = std::max(vec_worst, std::sqrt(num / den));
    }
    out.push_back({"eigenvectors match Laguerre modes " + std::string(to_string(par)), vec_worst < 1e-3,
                   vec_worst, "weighted relative L2"});
  }

  // Residual convergence of the Table 1 eigenfunctions.
  {
    bool ok = true;
    double worst_res = 0.0;
    double worst_ratio = 1e300;
    const Superpotential cen = Superpotential::centrifugal(analytic::kTable1A);
    for (const auto& row : analytic::generate_table1()) {
      const DunklParams params = make_params(DerivativeKind::CH, row.sigma, row.mu);
      for (const auto& d : {row.even, row.odd}) {
        std::vector<double> res;
        for (std::size_t n : {opts.grid / 4, opts.grid / 2, opts.grid}) {
          const auto op = numeric::build_sector_operator(params, cen, d.parity,
                                                         HalfLineGrid::with_extent(n, opts.xmax_centrifugal));
          const auto psi = numeric::sample(op, [&](double x) { return analytic::eval_descriptor(d, x); });
          res.push_back(numeric::relative_residual(op, psi, d.lambda));
        }
        worst_res = std::max(worst_res, res.back());
        for (std::size_t i = 0; i + 1 < res.size(); ++i) worst_ratio = std::min(worst_ratio, res[i] / res[i + 1]);
        ok = ok && res.back() < 1e-4;
      }
    }
    ok = ok && worst_ratio >= 3.5;
    out.push_back({"Bessel residuals, second-order convergence", ok, worst_res,
                   "smallest halving ratio " + format_real(worst_ratio)});
  }

  // Time evolution: stationary state and n = 1 decay.
  {
    const double gamma = analytic::oscillator_gamma_for_parity(Parity::Even, analytic::kOscillatorA,
                                                               analytic::kOscillatorMu, 3);
    const DunklParams params = make_params(DerivativeKind::TP, 0.0, analytic::kOscillatorMu, gamma);
    const auto op = numeric::build_sector_operator(params, osc, Parity::Even,
                                                   HalfLineGrid::with_extent(opts.grid, opts.xmax_oscillator));
    const auto d0 = analytic::oscillator_solution(Parity::Even, analytic::kOscillatorA, params, 0);
    const auto p0 = numeric::sample(op, [&](double x) { return analytic::eval_descriptor(d0, x); });
    const auto still = numeric::evolve(op, p0, 1e-2, 1000, numeric::TimeScheme::CrankNicolson, 1000);
    double drift = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < p0.samples.size(); ++i) {
      drift = std::max(drift, std::fabs(still.states.back()[i] - p0.samples[i]));
      peak = std::max(peak, std::fabs(p0.samples[i]));
    }
    drift /= peak;
    out.push_back({"stationary state, 1000 Crank-Nicolson steps", drift < 1e-8, drift, "max relative drift"});

    const auto d1 = analytic::oscillator_solution(Parity::Even, analytic::kOscillatorA, params, 1);
    const auto p1 = numeric::sample(op, [&](double x) { return analytic::eval_descriptor(d1, x); });
    const double dt = 0.01 / d1.lambda;
    const auto traj = numeric::evolve(op, p1, dt, 200, numeric::TimeScheme::CrankNicolson, 10);
    const double rate = numeric::decay_rate(traj, p1);
    const double err = std::fabs(rate - d1.lambda) / d1.lambda;
    out.push_back({"n = 1 decay rate over t in [0, 2/lambda]", err < 1e-2, err,
                   "measured " + format_real(rate) + " vs " + format_real(d1.lambda)});
  }
  return out;
}

bool print_results(const std::string& suite, const std::vector<CheckResult>& results, std::ostream& out) {
  bool all = true;
  char buf[64];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%.3g", r.worst);
    out << (r.passed ? "PASS " : "FAIL ") << suite << ": " << r.name << " (worst " << buf << ")";
    if (!r.detail.empty()) out << " - " << r.detail;
    out << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace dunklfp::verify
