#include <cmath>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "dunklfp/analytic.hpp"
#include "dunklfp/errors.hpp"
#include "dunklfp/numeric.hpp"

using namespace dunklfp;
using namespace dunklfp::numeric;

namespace {

constexpr double kA = 4.3;
constexpr double kMu = 0.6;
constexpr double kGammaEven = 13.0 / 30.0;
constexpr double kGammaOdd = -0.48;

double gamma_for(Parity p) { return p == Parity::Even ? kGammaEven : kGammaOdd; }

SectorOperator oscillator(Parity p, std::size_t n = 4000, double xmax = 12.0) {
  return build_sector_operator(DunklParams::tp(kMu, gamma_for(p)), Superpotential::oscillator_centrifugal(kA),
                               p, HalfLineGrid::with_extent(n, xmax));
}

analytic::LaguerreDescriptor mode(Parity p, int n) {
  return analytic::normalize(analytic::oscillator_solution(p, kA, DunklParams::tp(kMu, gamma_for(p)), n));
}

ParityFunction sampled(const SectorOperator& op, const analytic::LaguerreDescriptor& d) {
  return sample(op, [&](double x) { return analytic::eval_descriptor(d, x); });
}

// Continuous sector operator evaluated pointwise: J from its definition and
// (x^kappa J)' by a fine central difference.
double continuous_apply(const SectorCoefficients& c, const Superpotential& s,
                        const std::function<double(double)>& f, double x) {
  const double d = 1e-5;
  auto flux = [&](double y) {
    const double fp = (f(y + d) - f(y - d)) / (2 * d);
    return std::pow(y, c.kappa) * (c.p * fp - (2 * s.w(y) - c.c / y) * f(y));
  };
  const double e = 1e-4;
  return -c.q * std::pow(x, -c.kappa) * (flux(x + e) - flux(x - e)) / (2 * e);
}

double max_rel_diff(std::span<const double> a, std::span<const double> b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::fabs(a[i] - b[i]));
    den = std::max(den, std::fabs(b[i]));
  }
  return num / den;
}

}  // namespace

TEST_SUITE("numeric") {
  TEST_CASE("sector coefficients") {
    const auto ch = sector_coefficients(DunklParams::ch(2.5, 0.5), Superpotential::centrifugal(2.0), Parity::Even);
    CHECK(ch.p == 1.0);
    CHECK(ch.kappa == 3.0);
    CHECK(ch.c == 2.0);
    CHECK(ch.zero_current_root == doctest::Approx(2.0));
    CHECK(ch.current_root == doctest::Approx(-2.0));

    const auto tp = sector_coefficients(DunklParams::tp(kMu, kGammaOdd), Superpotential::oscillator_centrifugal(kA),
                                        Parity::Odd);
    CHECK(tp.p == doctest::Approx(1.48));
    CHECK(tp.q == doctest::Approx(0.52));
    CHECK(tp.kappa == 0.0);
    CHECK(tp.c == doctest::Approx(1.2));
    CHECK(tp.zero_current_root == doctest::Approx(5.0));
  }

  TEST_CASE("discrete operator matches the continuous one on smooth data") {
    struct Case {
      DunklParams params;
      Superpotential s;
      Parity parity;
    };
    const Case cases[] = {
        {DunklParams::tp(kMu, kGammaEven), Superpotential::oscillator_centrifugal(kA), Parity::Even},
        {DunklParams::tp(kMu, kGammaOdd), Superpotential::oscillator_centrifugal(kA), Parity::Odd},
        {DunklParams::ch(2.5, 0.5), Superpotential::centrifugal(2.0), Parity::Even},
        {DunklParams::ch(0.0, 0.0), Superpotential::oscillator_centrifugal(0.0), Parity::Even},
        {DunklParams::dunkl(0.7), Superpotential::oscillator_centrifugal(0.0), Parity::Odd},
    };
    for (const auto& c : cases) {
      const auto op = build_sector_operator(c.params, c.s, c.parity, HalfLineGrid::with_extent(3000, 8.0));
      const double r = op.origin_exponent();
      auto f = [r](double x) { return std::pow(x, r) * std::exp(-x * x) * (1.0 + 0.3 * x * x); };
      const auto psi = sample(op, f);
      const auto got = op.apply(psi.samples);
      std::vector<double> a;
      std::vector<double> b;
      for (std::size_t i = 0; i < op.grid().size(); ++i) {
        const double x = op.grid().node(i);
        if (x < 0.5 || x > 5.0) continue;
        a.push_back(got[i]);
        b.push_back(continuous_apply(op.coefficients(), c.s, f, x));
      }
      CHECK(max_rel_diff(a, b) < 1e-4);
    }
  }

  TEST_CASE("analytic oscillator modes have small residuals") {
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto op = oscillator(p);
      for (int n = 0; n < 4; ++n) {
        const auto d = mode(p, n);
        const double r = n == 0 ? residual_norm(op, sampled(op, d), 0.0) : relative_residual(op, sampled(op, d), d.lambda);
        CHECK(r < 1e-4);
      }
    }
    const auto op = oscillator(Parity::Even);
    const auto d = mode(Parity::Even, 2);
    const auto psi = sampled(op, d);
    // Wrong lambda: residual is of the size of the mismatch.
    const double wrong = relative_residual(op, psi, d.lambda + 1.0);
    CHECK(wrong > 0.1);
    ParityFunction zero{Parity::Even, std::vector<double>(op.grid().size(), 0.0)};
    CHECK(residual_norm(op, zero, 3.0) == 0.0);
    ParityFunction odd{Parity::Odd, psi.samples};
    CHECK_THROWS_AS(residual_norm(op, odd, d.lambda), ParityMismatch);
  }

  TEST_CASE("Bessel residuals converge at second order") {
    for (const auto& row : analytic::generate_table1()) {
      for (const auto& d : {row.even, row.odd}) {
        double prev = 0.0;
        for (std::size_t n : {1000u, 2000u, 4000u}) {
          const auto op = build_sector_operator(DunklParams::ch(row.sigma, row.mu), Superpotential::centrifugal(2.0),
                                                d.parity, HalfLineGrid::with_extent(n, 10.0));
          const auto psi = sample(op, [&](double x) { return analytic::eval_descriptor(d, x); });
          const double r = relative_residual(op, psi, d.lambda);
          if (prev > 0.0) CHECK(prev / r >= 3.5);
          prev = r;
        }
        CHECK(prev < 1e-4);
      }
    }
  }

  TEST_CASE("oscillator spectra") {
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto op = oscillator(p);
      const auto pairs = lowest_eigenpairs(op, 4);
      const double spacing = 4.0 * (1.0 - parity_sign(p) * gamma_for(p));
      CHECK(std::fabs(pairs[0].lambda) < 1e-6);
      for (int j = 1; j < 4; ++j) CHECK(pairs[j].lambda == doctest::Approx(spacing * j).epsilon(1e-5));
      // Eigenvectors against normalized analytic modes.
      for (int j = 0; j < 4; ++j) {
        const auto exact = sampled(op, mode(p, j));
        // Sign conventions differ: the solver makes the largest sample positive.
        double dot = 0.0;
        for (std::size_t i = 0; i < exact.samples.size(); ++i) dot += exact.samples[i] * pairs[j].psi.samples[i];
        const double sign = dot < 0.0 ? -1.0 : 1.0;
        std::vector<double> diff(exact.samples.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sign * pairs[j].psi.samples[i] - exact.samples[i];
        CHECK(weighted_rms(op, diff) < 1e-4);
      }
    }
  }

  TEST_CASE("gamma = 0 gives spacing 4 in both sectors") {
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto op = build_sector_operator(DunklParams::tp(kMu, 0.0), Superpotential::oscillator_centrifugal(kA), p,
                                            HalfLineGrid::with_extent(4000, 12.0));
      const auto pairs = lowest_eigenpairs(op, 3);
      for (int j = 0; j < 3; ++j) CHECK(pairs[j].lambda == doctest::Approx(4.0 * j).epsilon(1e-5).scale(1.0));
    }
  }

  TEST_CASE("classical Gaussian limit") {
    // w = -x with no reflection terms: the Ornstein-Uhlenbeck generator,
    // eigenvalues 2n with e^{-x^2} stationary.
    const auto s = Superpotential::oscillator_centrifugal(0.0);
    const auto even = build_sector_operator(DunklParams::ch(0.0, 0.0), s, Parity::Even, HalfLineGrid::with_extent(2000, 8.0));
    const auto odd = build_sector_operator(DunklParams::ch(0.0, 0.0), s, Parity::Odd, HalfLineGrid::with_extent(2000, 8.0));
    const auto pe = lowest_eigenpairs(even, 3);
    const auto po = lowest_eigenpairs(odd, 3);
    for (int j = 0; j < 3; ++j) {
      CHECK(pe[j].lambda == doctest::Approx(4.0 * j).epsilon(1e-4).scale(1.0));
      CHECK(po[j].lambda == doctest::Approx(4.0 * j + 2.0).epsilon(1e-4));
    }
    const auto g = sample(even, [](double x) { return std::exp(-x * x); });
    CHECK(residual_norm(even, g, 0.0) < 1e-10);
    const auto tp = build_sector_operator(DunklParams::tp(0.0, 0.0), s, Parity::Odd, HalfLineGrid::with_extent(2000, 8.0));
    CHECK(lowest_eigenpairs(tp, 1)[0].lambda == doctest::Approx(2.0).epsilon(1e-4));
  }

  TEST_CASE("spectrum errors") {
    const auto cent = build_sector_operator(DunklParams::ch(2.5, 0.5), Superpotential::centrifugal(2.0), Parity::Even,
                                            HalfLineGrid::with_extent(500, 10.0));
    CHECK_THROWS_AS(lowest_eigenpairs(cent, 2), SpectrumError);
    const auto small = oscillator(Parity::Even, 40);
    CHECK_THROWS_AS(lowest_eigenpairs(small, 6), SpectrumError);
    // Too short a domain: high modes are cut by the wall.
    const auto narrow = oscillator(Parity::Even, 2000, 3.0);
    CHECK_THROWS_AS(lowest_eigenpairs(narrow, 4), SpectrumError);
    CHECK_THROWS_AS(lowest_eigenpairs(small, 0), RangeError);
  }

  TEST_CASE("stationary state is preserved") {
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto op = oscillator(p);
      const auto p0 = sampled(op, mode(p, 0));
      const auto traj = evolve(op, p0, 1e-2, 1000, TimeScheme::CrankNicolson, 100);
      CHECK(traj.states.size() == 11);
      CHECK(max_rel_diff(traj.states.back(), p0.samples) < 1e-8);
    }
  }

  TEST_CASE("single mode decays at its eigenvalue") {
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto op = oscillator(p);
      const auto d = mode(p, 1);
      const auto p1 = sampled(op, d);
      const double dt = 0.01 / d.lambda;
      const auto traj = evolve(op, p1, dt, 200, TimeScheme::CrankNicolson);
      // Ratio test at the end point against e^{-lambda t}.
      const double ratio = balance_overlap(traj.log_weight, p1.samples, traj.states.back()) /
                           balance_overlap(traj.log_weight, p1.samples, traj.states.front());
      CHECK(ratio == doctest::Approx(std::exp(-2.0)).epsilon(1e-2));
      CHECK(decay_rate(traj, p1) == doctest::Approx(d.lambda).epsilon(1e-2));
    }
  }

  TEST_CASE("mixture isolates the probed mode") {
    const auto op = oscillator(Parity::Even);
    const auto m0 = sampled(op, mode(Parity::Even, 0));
    const auto m1 = sampled(op, mode(Parity::Even, 1));
    const auto m2 = sampled(op, mode(Parity::Even, 2));
    ParityFunction mix{Parity::Even, m0.samples};
    for (std::size_t i = 0; i < mix.samples.size(); ++i) mix.samples[i] += m1.samples[i] + 0.5 * m2.samples[i];
    const double lambda1 = mode(Parity::Even, 1).lambda;
    const double dt = 0.01 / lambda1;
    const auto traj = evolve(op, mix, dt, 200, TimeScheme::CrankNicolson);
    CHECK(decay_rate(traj, m1) == doctest::Approx(lambda1).epsilon(1e-2));
    // The integral of P against x^kappa is conserved in the even sector.
    const double kappa = op.coefficients().kappa;
    const double mass0 = weighted_mass(op.grid(), traj.states.front(), kappa);
    const double mass1 = weighted_mass(op.grid(), traj.states.back(), kappa);
    CHECK(mass1 == doctest::Approx(mass0).epsilon(1e-10));
  }

  TEST_CASE("backward Euler lags") {
    const auto op = oscillator(Parity::Even);
    const auto m1 = sampled(op, mode(Parity::Even, 1));
    const double lambda1 = mode(Parity::Even, 1).lambda;
    const double dt = 0.1 / lambda1;
    const double be = decay_rate(evolve(op, m1, dt, 20, TimeScheme::BackwardEuler), m1);
    const double cn = decay_rate(evolve(op, m1, dt, 20, TimeScheme::CrankNicolson), m1);
    CHECK(be < lambda1);
    // Per-step amplification 1/(1 + lambda dt).
    CHECK(be == doctest::Approx(std::log(1.1) / dt).epsilon(1e-3));
    CHECK(std::fabs(cn - lambda1) < std::fabs(be - lambda1));
  }

  TEST_CASE("evolution errors") {
    const auto op = oscillator(Parity::Even, 400);
    const auto m1 = sampled(op, mode(Parity::Even, 1));
    const auto short_traj = evolve(op, m1, 0.01, 5, TimeScheme::CrankNicolson);
    CHECK_THROWS_AS(decay_rate(short_traj, m1), SignalError);
    CHECK_THROWS_AS(evolve(op, m1, 0.0, 5, TimeScheme::CrankNicolson), RangeError);
    CHECK_THROWS_AS(evolve(op, ParityFunction{Parity::Odd, m1.samples}, 0.01, 5, TimeScheme::CrankNicolson),
                    ParityMismatch);
    CHECK(parse_scheme("be") == TimeScheme::BackwardEuler);
    CHECK(parse_scheme("crank-nicolson") == TimeScheme::CrankNicolson);
    CHECK_THROWS_AS(parse_scheme("rk4"), ConfigError);
  }

  TEST_CASE("trajectory csv") {
    const auto op = oscillator(Parity::Even, 16, 4.0);
    const auto m0 = sampled(op, mode(Parity::Even, 0));
    const auto traj = evolve(op, m0, 0.5, 4, TimeScheme::BackwardEuler, 2);
    std::ostringstream out;
    write_trajectory_csv(traj, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,value");
    std::getline(in, line);
    CHECK(line.rfind("0,0.125,", 0) == 0);
    std::size_t count = 1;
    while (std::getline(in, line)) ++count;
    CHECK(count == 3 * 16);
  }
}
