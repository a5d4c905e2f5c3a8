#include <cmath>

#include "doctest.h"
#include "dunklfp/analytic.hpp"
#include "dunklfp/errors.hpp"

using namespace dunklfp;
using namespace dunklfp::analytic;

namespace {

void check_values(const std::vector<double>& got, const std::vector<double>& expected) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("centrifugal descriptors") {
    const auto e = centrifugal_solution(Parity::Even, 2.0, 2.5, 0.5, 4.0);
    CHECK(e.power == 0.0);
    CHECK(e.order == 2.0);
    CHECK(e.admissible);
    CHECK(render(e) == "x^{0} J_{2}(2 x)");

    const auto o = centrifugal_solution(Parity::Odd, 2.0, 3.5, 5.5, 4.0);
    CHECK(o.power == -1.0);
    CHECK(o.order == 4.0);
    CHECK(o.admissible);
    CHECK(render(o) == "x^{-1} J_{4}(2 x)");

    const auto bad = centrifugal_solution(Parity::Even, 2.0, 2.0, 0.7, 4.0);
    CHECK(bad.order == doctest::Approx(2.2));
    CHECK(bad.power == doctest::Approx(0.5));
    CHECK_FALSE(bad.admissible);
    CHECK(std::isfinite(eval_descriptor(bad, 1.3)));

    // Right integers, wrong parity.
    CHECK_FALSE(centrifugal_solution(Parity::Even, 2.0, 1.5, 0.5, 4.0).admissible);
    CHECK_THROWS_AS(centrifugal_solution(Parity::Even, 2.0, 2.5, 0.5, 0.0), RangeError);
    CHECK_THROWS_AS(centrifugal_solution(Parity::Even, 1.0, 2.5, 0.5, 4.0), RangeError);
  }

  TEST_CASE("admissible mu and sigma") {
    check_values(centrifugal_admissible_mu(Parity::Even, 2.0, 4), {0.5, 1.5, 2.5, 3.5});
    check_values(centrifugal_admissible_mu(Parity::Odd, 2.0, 4), {0.5, 1.5, 2.5, 3.5});
    check_values(centrifugal_admissible_mu(Parity::Even, 0.3, 3), {0.2, 1.2, 2.2});
    check_values(centrifugal_admissible_sigma(2.0, 0, 3), {2.5, 1.5, 0.5});
    check_values(centrifugal_admissible_sigma(2.0, 1, 4), {3.5, 2.5, 1.5, 0.5});
    check_values(centrifugal_admissible_sigma(0.6, 0, 2), {1.1, 0.1});
    // Every listed mu really makes the order an integer.
    for (double a : {2.0, 0.3, -0.7, 3.25}) {
      for (Parity p : {Parity::Even, Parity::Odd}) {
        const auto mus = centrifugal_admissible_mu(p, a, 5);
        for (std::size_t i = 0; i < mus.size(); ++i) {
          CHECK(mus[i] > -0.5);
          if (i > 0) CHECK(mus[i] > mus[i - 1]);
          const double order = p == Parity::Even ? std::fabs(a + mus[i] - 0.5) : std::fabs(a - mus[i] - 0.5);
          CHECK(std::fabs(order - std::round(order)) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("oscillator descriptors") {
    const double g_odd = oscillator_gamma_for_parity(Parity::Odd, 4.3, 0.6, 2);
    CHECK(g_odd == doctest::Approx(-0.48).epsilon(1e-14));
    const auto o = oscillator_solution(Parity::Odd, 4.3, DunklParams::tp(0.6, g_odd), 2);
    CHECK(o.alpha == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(o.power == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(o.beta == doctest::Approx(1.48));
    CHECK(o.lambda == doctest::Approx(8.0 * 0.52));
    CHECK(o.admissible);

    const double g_even = oscillator_gamma_for_parity(Parity::Even, 4.3, 0.6, 3);
    CHECK(g_even == doctest::Approx(13.0 / 30.0).epsilon(1e-14));
    const auto e = oscillator_solution(Parity::Even, 4.3, DunklParams::tp(0.6, g_even), 0);
    CHECK(e.lambda == 0.0);
    CHECK(e.power == doctest::Approx(6.0).epsilon(1e-13));
    // Exact rational oracle: 18/17 - 1/2 + 3 = 121/34.
    CHECK(e.alpha == doctest::Approx(121.0 / 34.0).epsilon(1e-13));
    CHECK(e.admissible);
    CHECK(render(e) == "e^{-x^2/(43/30)} x^{6} L_{0}^{121/34}(x^2/(43/30))");

    CHECK_THROWS_AS(oscillator_gamma_for_parity(Parity::Even, 4.3, 0.6, 2), RangeError);
    CHECK_THROWS_AS(oscillator_gamma_for_parity(Parity::Odd, 4.3, 0.6, 1), RangeError);
    CHECK_THROWS_AS(oscillator_solution(Parity::Odd, 0.0, DunklParams::tp(0.6, 0.0), 1), AlphaError);
    CHECK_THROWS_AS(oscillator_solution(Parity::Odd, 4.3, DunklParams::ch(1.0, 0.6), 1), KindError);
  }

  TEST_CASE("gamma = 0 reduces to the Dunkl oscillator") {
    const DunklParams p = DunklParams::tp(0.6, 0.0);
    for (int n = 0; n < 5; ++n) {
      const auto e = oscillator_solution(Parity::Even, 4.3, p, n);
      const auto o = oscillator_solution(Parity::Odd, 4.3, p, n);
      CHECK(e.alpha == doctest::Approx(0.6 - 0.5 + 4.3));
      CHECK(e.lambda == doctest::Approx(4.0 * n));
      CHECK(o.lambda == doctest::Approx(4.0 * n));
    }
  }

  TEST_CASE("evaluation and parity") {
    const auto rows = generate_table1();
    for (double x = 0.05; x < 10.0; x += 0.37) {
      CHECK(eval_descriptor(rows[0].even, x) == doctest::Approx(std::cyl_bessel_j(2.0, 2.0 * x)).epsilon(1e-10));
    }
    const auto d = oscillator_solution(Parity::Even, 4.3, DunklParams::tp(0.6, 13.0 / 30.0), 1);
    for (double x : {0.2, 1.0, 2.5}) {
      const double u = x * x / d.beta;
      CHECK(eval_descriptor(d, x) == doctest::Approx(std::exp(-u) * std::pow(x, d.power) * (d.alpha + 1 - u)));
    }
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const double sign = p == Parity::Even ? 1.0 : -1.0;
      for (const auto& bd : figure1_descriptors(p))
        for (double x : {0.1, 1.0, 3.7, 9.9}) CHECK(eval_descriptor(bd, -x) == sign * eval_descriptor(bd, x));
      for (const auto& ld : figure2_descriptors(p))
        for (double x : {0.1, 1.0, 3.7}) CHECK(eval_descriptor(ld, -x) == sign * eval_descriptor(ld, x));
    }
    CHECK_THROWS_AS(eval_descriptor(rows[1].even, 0.0), DomainError);
    CHECK(eval_descriptor(rows[0].even, 0.0) == 0.0);
  }

  TEST_CASE("regularity of admissible descriptors") {
    for (const auto& row : generate_table1()) {
      for (const auto& d : {row.even, row.odd}) {
        REQUIRE(d.admissible);
        // Leading behaviour x^(n+m) (sqrt(lambda)/2)^m / m!.
        const double x = 1e-6;
        const double lead = std::pow(x, d.power + d.order) * std::pow(1.0, d.order) / std::tgamma(d.order + 1.0);
        CHECK(std::fabs(eval_descriptor(d, x)) <= 1.01 * std::fabs(lead) + 1e-300);
        CHECK(std::fabs(eval_descriptor(d, x)) <= 1.0);
      }
    }
  }

  TEST_CASE("normalization") {
    const DunklParams p = DunklParams::tp(0.6, 13.0 / 30.0);
    for (int n = 0; n < 4; ++n) {
      const auto d = normalize(oscillator_solution(Parity::Even, 4.3, p, n));
      CHECK(normalization_integral(d) == doctest::Approx(1.0).epsilon(1e-12));
      // Independent check: composite Simpson on [0, 12] with |x|^(2 eta).
      const int m = 24000;
      const double h = 12.0 / m;
      double s = 0.0;
      for (int i = 0; i <= m; ++i) {
        const double x = i * h;
        const double f = x == 0.0 ? 0.0 : std::pow(eval_descriptor(d, x), 2) * std::pow(x, 2 * p.eta());
        s += f * (i == 0 || i == m ? 1.0 : (i % 2 ? 4.0 : 2.0));
      }
      CHECK(2.0 * s * h / 3.0 == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("tables") {
    const auto t1 = generate_table1();
    REQUIRE(t1.size() == 3);
    CHECK(render(t1[2].even) == "x^{-2} J_{6}(2 x)");
    CHECK(render(t1[2].odd) == "x^{-2} J_{3}(2 x)");

    const auto t2 = generate_table2(default_table2_m(Parity::Even), Parity::Even);
    REQUIRE(t2.size() == 4);
    CHECK(t2[0].coefficients.size() == 1);
    CHECK(render_alpha_polynomial(t2[0].coefficients[0]) == "1");
    CHECK(t2[0].descriptor.power == doctest::Approx(6.0));
    CHECK(render_alpha_polynomial(t2[3].coefficients[0]) == "1/6*alpha^3 + alpha^2 + 11/6*alpha + 1");
    CHECK(render_alpha_polynomial(t2[2].coefficients[1]) == "-alpha - 2");
    const auto odd = generate_table2(2, Parity::Odd);
    CHECK(odd[1].descriptor.power == doctest::Approx(5.0));
    CHECK(odd[1].descriptor.beta == doctest::Approx(1.48));
  }

  TEST_CASE("figure data") {
    const auto f = figure_data(Figure::F2a, 10.0, 100, false);
    CHECK(f.header.back() == "alpha_e=121/34");
    CHECK(f.rows.size() == 100);
    CHECK(f.rows.front()[0] == doctest::Approx(0.1));
    const auto g = figure_data(Figure::F1b, 10.0, 50, true);
    CHECK(g.rows.size() == 100);
    CHECK(g.rows[50][0] == doctest::Approx(0.2));
    CHECK(g.rows.front()[0] == doctest::Approx(-10.0));
    // Odd curves: mirrored rows flip sign.
    for (std::size_t c = 1; c < 4; ++c) CHECK(g.rows[0][c] == -g.rows[99][c]);
    CHECK_THROWS_AS(parse_figure("3c"), ConfigError);
  }
}
