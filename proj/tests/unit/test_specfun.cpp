#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dunklfp/errors.hpp"
#include "dunklfp/specfun.hpp"

using namespace dunklfp;
using namespace dunklfp::specfun;

namespace {

// Ascending series in long double, truncated at 40 terms.
double series_oracle(double nu, double x) {
  long double sum = 0.0L;
  const long double half = 0.5L * x;
  for (int k = 0; k < 40; ++k) {
    const long double term = std::pow(half, 2.0L * k + nu) / (std::tgamma(k + 1.0L) * std::tgamma(k + nu + 1.0L));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

// int_0^inf u^(alpha + j) e^-u du = Gamma(alpha + j + 1), applied term by
// term to the product of two Laguerre coefficient lists.
double laguerre_product_oracle(int n, int m, double alpha) {
  const auto a = laguerre_coefficients(n, alpha);
  const auto b = laguerre_coefficients(m, alpha);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      sum += static_cast<long double>(a[i]) * b[j] * std::tgamma(alpha + static_cast<long double>(i + j) + 1.0L);
  return static_cast<double>(sum);
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("gamma") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    // Gamma(7.5) = 6.5 * 5.5 * ... * 0.5 * Gamma(0.5).
    double prod = std::sqrt(std::numbers::pi);
    for (double f = 0.5; f < 7.0; f += 1.0) prod *= f;
    CHECK(gamma_fn(7.5) == doctest::Approx(prod).epsilon(1e-13));
    for (double x : {0.0, -1.0, -2.0, -10.0}) CHECK_THROWS_AS(gamma_fn(x), PoleError);
    // Reflection formula across [-10, 30].
    for (double x = -9.7; x < 29.0; x += 0.61) {
      const double lhs = gamma_fn(x) * gamma_fn(1.0 - x);
      const double rhs = std::numbers::pi / std::sin(std::numbers::pi * x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  TEST_CASE("Bessel J examples") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(2.0, 0.0) == 0.0);
    CHECK(bessel_j(2.0, 2.0) == doctest::Approx(series_oracle(2.0, 2.0)).epsilon(1e-14));
    CHECK(bessel_j(2.0, 2.0) == doctest::Approx(0.352834).epsilon(1e-6));
    CHECK(bessel_j(7.0, 2.0) == doctest::Approx(series_oracle(7.0, 2.0)).epsilon(1e-13));
    CHECK(std::fabs(bessel_j(7.0, 2.0)) < std::fabs(bessel_j(2.0, 2.0)));
  }

  TEST_CASE("Bessel J against two oracles") {
    for (double nu = 0.0; nu <= 10.0; nu += 0.5) {
      for (double x = 0.1; x <= 50.0; x += 0.7) {
        const double v = bessel_j(nu, x);
        const double ref = std::cyl_bessel_j(nu, x);
        // Ten significant digits, read absolutely near zeros.
        CHECK(std::fabs(v - ref) <= 1e-10 * std::max(std::fabs(ref), 1e-2));
        if (x <= 8.0) CHECK(std::fabs(v - series_oracle(nu, x)) <= 1e-12 * std::max(std::fabs(v), 1e-3));
      }
    }
  }

  TEST_CASE("Bessel three-term recurrence") {
    for (int nu = 1; nu <= 8; ++nu) {
      for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
        const double rhs = 2.0 * nu / x * bessel_j(nu, x);
        CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::fabs(rhs));
      }
    }
  }

  TEST_CASE("integer-order parity") {
    for (int m = 0; m <= 8; ++m) {
      for (double x : {0.3, 1.0, 4.5, 13.0, 27.0}) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK(bessel_j_integer(m, -x) == sign * bessel_j_integer(m, x));
        if (x < 12.0) CHECK(bessel_j_integer(m, -x) == doctest::Approx(sign * series_oracle(m, x)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("Laguerre examples") {
    for (double alpha : {-0.5, 0.5, 2.0, 3.5}) {
      for (double u : {0.0, 0.3, 1.7, 6.0}) {
        CHECK(laguerre(0, alpha, u) == 1.0);
        CHECK(laguerre(1, alpha, u) == doctest::Approx(alpha + 1 - u));
        CHECK(laguerre(2, alpha, u) ==
              doctest::Approx((alpha + 1) * (alpha + 2) / 2 - (alpha + 2) * u + u * u / 2));
        // Explicit coefficients reproduce the recurrence.
        for (int n = 0; n <= 8; ++n) {
          const auto c = laguerre_coefficients(n, alpha);
          double v = 0.0;
          for (std::size_t j = c.size(); j-- > 0;) v = v * u + c[j];
          CHECK(v == doctest::Approx(laguerre(n, alpha, u)).epsilon(1e-12));
        }
      }
    }
    CHECK_THROWS_AS(laguerre(2, -1.0, 0.5), RangeError);
  }

  TEST_CASE("Laguerre coefficients as polynomials in alpha") {
    // c_0 of L_3 is (a+1)(a+2)(a+3)/6 = 1 + 11/6 a + a^2 + 1/6 a^3.
    const auto c = laguerre_coefficient_in_alpha(3, 0);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(11.0 / 6.0));
    CHECK(c[2] == doctest::Approx(1.0));
    CHECK(c[3] == doctest::Approx(1.0 / 6.0));
    for (double alpha : {0.25, 2.0, 121.0 / 34.0}) {
      for (int n = 0; n <= 5; ++n) {
        const auto numeric = laguerre_coefficients(n, alpha);
        for (int j = 0; j <= n; ++j) {
          const auto poly = laguerre_coefficient_in_alpha(n, j);
          double v = 0.0;
          for (std::size_t r = poly.size(); r-- > 0;) v = v * alpha + poly[r];
          CHECK(v == doctest::Approx(numeric[static_cast<std::size_t>(j)]).epsilon(1e-13));
        }
      }
    }
  }

  TEST_CASE("Gauss-Laguerre exactness") {
    for (double alpha : {0.0, 0.5, 2.0, 3.5}) {
      const auto rule = QuadratureRule::gauss_laguerre(20, alpha);
      for (std::size_t i = 1; i < rule.size(); ++i) CHECK(rule.nodes()[i] > rule.nodes()[i - 1]);
      for (double w : rule.weights()) CHECK(w > 0.0);
      for (std::size_t k = 0; k <= rule.exactness_degree(); ++k) {
        const double v = rule.apply([&](double u) { return std::pow(u, static_cast<double>(k)); });
        const double exact = std::tgamma(alpha + static_cast<double>(k) + 1.0);
        CHECK(std::fabs(v - exact) <= 1e-12 * exact);
      }
    }
    const auto leg = QuadratureRule::gauss_legendre(8, -1.0, 3.0);
    for (int k = 0; k <= 15; ++k) {
      const double exact = (std::pow(3.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
      CHECK(leg.apply([&](double u) { return std::pow(u, k); }) == doctest::Approx(exact).epsilon(1e-13));
    }
  }

  TEST_CASE("weighted inner products") {
    const auto one = [](double) { return 1.0; };
    for (double alpha : {0.5, 2.0, 3.5}) {
      const auto rule = QuadratureRule::gauss_laguerre(16, alpha);
      const auto weight = [alpha](double u) { return std::pow(u, alpha) * std::exp(-u); };
      CHECK(weighted_inner_product(one, one, weight, rule).value ==
            doctest::Approx(std::tgamma(alpha + 1.0)).epsilon(1e-12));
      for (int n = 0; n <= 6; ++n) {
        const auto ln = [n, alpha](double u) { return laguerre(n, alpha, u); };
        for (int m = 0; m <= 6; ++m) {
          const auto lm = [m, alpha](double u) { return laguerre(m, alpha, u); };
          const auto r = weighted_inner_product(ln, lm, weight, rule);
          if (n == m) {
            const double norm = std::tgamma(n + alpha + 1.0) / std::tgamma(n + 1.0);
            CHECK(r.value == doctest::Approx(norm).epsilon(1e-12));
            CHECK(laguerre_product_oracle(n, n, alpha) == doctest::Approx(norm).epsilon(1e-10));
          } else {
            CHECK(std::fabs(r.value) < 1e-8);
            CHECK(std::fabs(laguerre_product_oracle(n, m, alpha)) < 1e-8 * std::tgamma(alpha + 13.0));
          }
        }
      }
    }
  }

  TEST_CASE("node doubling reports non-convergence") {
    const auto rule = QuadratureRule::gauss_laguerre(6, 0.0);
    const auto f = [](double u) { return std::cos(25.0 * u); };
    const auto one = [](double) { return 1.0; };
    const auto weight = [](double u) { return std::exp(-u); };
    CHECK_THROWS_AS(weighted_inner_product(f, one, weight, rule, 1e-10), NonConvergence);
  }
}
