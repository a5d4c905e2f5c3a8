#include "dunklfp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dunklfp/errors.hpp"
#include "lapack.hpp"

namespace dunklfp::specfun {

namespace {

constexpr double kSeriesLimit = 12.0;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double bessel_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum) && k > half) break;
  }
  return sum;
}

// Downward recurrence from a large order, normalized with
//   (x/2)^nu0 = sum_k (nu0 + 2k) Gamma(nu0 + k)/k! J_{nu0+2k}(x),
// which reduces to 1 = J_0 + 2 sum J_2k at nu0 = 0.
double bessel_miller(double nu, double x) {
  const double nu0 = nu - std::floor(nu);
  const int target = static_cast<int>(std::floor(nu));
  int top = static_cast<int>(std::max(nu, x)) + 40 + static_cast<int>(std::sqrt(60.0 * x));
  if (top % 2 != 0) ++top;

  double next = 0.0;  // J_{nu0+k+1}
  double cur = 1e-300;  // J_{nu0+k}
  double at_target = 0.0;
  double norm = 0.0;

  // Weights (nu0 + 2k) Gamma(nu0 + k)/k! for even orders 2k <= top.
  std::vector<double> even_weight(static_cast<std::size_t>(top / 2) + 1);
  even_weight[0] = std::tgamma(nu0 + 1.0);
  double g = std::tgamma(nu0 + 1.0);  // Gamma(nu0 + k)/k! at k = 1
  for (std::size_t k = 1; k < even_weight.size(); ++k) {
    if (k > 1) g *= (nu0 + static_cast<double>(k) - 1.0) / static_cast<double>(k);
    even_weight[k] = (nu0 + 2.0 * static_cast<double>(k)) * g;
  }

  for (int k = top; k >= 0; --k) {
    if (k == target) at_target = cur;
    if (k % 2 == 0) norm += even_weight[static_cast<std::size_t>(k / 2)] * cur;
    if (k == 0) break;
    const double prev = 2.0 * (nu0 + k) / x * cur - next;
    next = cur;
    cur = prev;
    if (std::fabs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      at_target *= 1e-250;
      norm *= 1e-250;
    }
  }
  const double lhs = nu0 == 0.0 ? 1.0 : std::pow(0.5 * x, nu0);
  return at_target * lhs / norm;
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma function pole at " + std::to_string(x));
  }
  return std::tgamma(x);
}

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0)) throw DomainError("bessel_j needs nu >= 0 and x >= 0");
  if (x <= kSeriesLimit) return bessel_series(nu, x);
  return bessel_miller(nu, x);
}

double bessel_j_integer(int m, double x) {
  const int order = std::abs(m);
  double value = bessel_j(static_cast<double>(order), std::fabs(x));
  // J_{-m} = (-1)^m J_m and J_m(-x) = (-1)^m J_m(x).
  if (m < 0 && order % 2 != 0) value = -value;
  if (x < 0.0 && order % 2 != 0) value = -value;
  return value;
}

double laguerre(int n, double alpha, double u) {
  if (!(alpha > -1.0)) throw RangeError("laguerre needs alpha > -1");
  if (n < 0) throw RangeError("laguerre needs n >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - u;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - u) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_coefficients(int n, double alpha) {
  if (!(alpha > -1.0)) throw RangeError("laguerre needs alpha > -1");
  if (n < 0) throw RangeError("laguerre needs n >= 0");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    double v = (j % 2 == 0) ? 1.0 : -1.0;
    for (int i = j + 1; i <= n; ++i) v *= alpha + i;
    v /= std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0);
    c[static_cast<std::size_t>(j)] = v;
  }
  return c;
}

std::vector<double> laguerre_coefficient_in_alpha(int n, int j) {
  if (n < 0 || j < 0 || j > n) throw RangeError("laguerre coefficient index out of range");
  std::vector<double> poly{1.0};
  for (int i = j + 1; i <= n; ++i) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t r = 0; r < poly.size(); ++r) {
      next[r] += i * poly[r];
      next[r + 1] += poly[r];
    }
    poly = std::move(next);
  }
  const double scale =
      ((j % 2 == 0) ? 1.0 : -1.0) / (std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0));
  for (double& v : poly) v *= scale;
  return poly;
}

namespace {

// Eigenvalues of the symmetric tridiagonal Jacobi matrix, ascending.
std::vector<double> jacobi_nodes(std::vector<double> diag, std::vector<double> off) {
  const int n = static_cast<int>(diag.size());
  int info = 0;
  const int ldz = 1;
  double z = 0.0;
  std::vector<double> work(1);
  off.resize(std::max<std::size_t>(diag.size(), 1));
  dstev_("N", &n, diag.data(), off.data(), &z, &ldz, work.data(), &info);
  if (info != 0) throw NonConvergence("tridiagonal eigenvalue solve failed");
  return diag;
}

// L_{n}^alpha and L_{n+1}^alpha at u.
std::pair<double, double> laguerre_pair(int n, double alpha, double u) {
  double prev = 1.0;
  double cur = 1.0 + alpha - u;
  if (n == 0) return {prev, cur};
  for (int k = 1; k < n + 1; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - u) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

// P_n and P_{n-1} at x.
std::pair<double, double> legendre_pair(int n, double x) {
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule QuadratureRule::gauss_laguerre(std::size_t n, double alpha) {
  if (n == 0 || n > kMaxLaguerreNodes) throw RangeError("Gauss-Laguerre node count out of range");
  if (!(alpha > -1.0)) throw RangeError("Gauss-Laguerre needs alpha > -1");
  const int ni = static_cast<int>(n);
  std::vector<double> diag(n);
  std::vector<double> off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < ni; ++k) diag[static_cast<std::size_t>(k)] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < ni; ++k) off[static_cast<std::size_t>(k - 1)] = std::sqrt(k * (k + alpha));

  QuadratureRule rule;
  rule.domain_ = QuadratureDomain::HalfLine;
  rule.alpha_ = alpha;
  rule.nodes_ = jacobi_nodes(diag, off);
  rule.weights_.resize(n);
  const double log_scale = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rule.nodes_[i];
    // Newton on L_n using L_n' = (n L_n - (n + alpha) L_{n-1})/u.
    for (int it = 0; it < 3; ++it) {
      const auto [lm1, ln] = laguerre_pair(ni - 1, alpha, u);
      const double dl = (ni * ln - (ni + alpha) * lm1) / u;
      if (dl == 0.0) break;
      u -= ln / dl;
    }
    rule.nodes_[i] = u;
    const double lnp1 = laguerre_pair(ni, alpha, u).second;
    rule.weights_[i] =
        std::exp(log_scale) * u / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1);
  }
  return rule;
}

QuadratureRule QuadratureRule::gauss_legendre(std::size_t n, double lo, double hi) {
  if (n == 0 || n > 4 * kMaxLaguerreNodes) throw RangeError("Gauss-Legendre node count out of range");
  if (!(hi > lo)) throw RangeError("Gauss-Legendre needs lo < hi");
  const int ni = static_cast<int>(n);
  std::vector<double> diag(n, 0.0);
  std::vector<double> off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < ni; ++k)
    off[static_cast<std::size_t>(k - 1)] = k / std::sqrt(4.0 * k * k - 1.0);

  QuadratureRule rule;
  rule.domain_ = QuadratureDomain::Interval;
  rule.lo_ = lo;
  rule.hi_ = hi;
  const std::vector<double> t = jacobi_nodes(diag, off);
  rule.nodes_.resize(n);
  rule.weights_.resize(n);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < n; ++i) {
    double x = t[i];
    double dp = 1.0;
    for (int it = 0; it < 3; ++it) {
      const auto [pn, pm1] = legendre_pair(ni, x);
      dp = ni * (x * pn - pm1) / (x * x - 1.0);
      x -= pn / dp;
    }
    const auto [pn, pm1] = legendre_pair(ni, x);
    dp = ni * (x * pn - pm1) / (x * x - 1.0);
    rule.nodes_[i] = mid + half * x;
    rule.weights_[i] = half * 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double QuadratureRule::intrinsic_weight(double u) const {
  if (domain_ == QuadratureDomain::Interval) return 1.0;
  return std::exp(alpha_ * std::log(u) - u);
}

QuadratureRule QuadratureRule::refined() const {
  if (domain_ == QuadratureDomain::Interval) return gauss_legendre(2 * size(), lo_, hi_);
  return gauss_laguerre(std::min(2 * size(), kMaxLaguerreNodes), alpha_);
}

double QuadratureRule::apply(const std::function<double(double)>& g) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    sum += weights_[i] * g(nodes_[i]);
  }
  return sum;
}

QuadratureResult weighted_inner_product(const RealFunction& f, const RealFunction& g,
                                        const RealFunction& weight, const QuadratureRule& rule,
                                        double tol) {
  const auto integrand = [&](const QuadratureRule& r) {
    return r.apply([&](double u) {
      const double iw = r.intrinsic_weight(u);
      return iw == 0.0 ? 0.0 : f(u) * g(u) * weight(u) / iw;
    });
  };
  const QuadratureRule fine = rule.refined();
  const double coarse_value = integrand(rule);
  const double fine_value = integrand(fine);
  QuadratureResult result{fine_value, std::fabs(fine_value - coarse_value), fine.size()};
  if (!std::isfinite(fine_value) ||
      result.error_estimate > tol * std::max(1.0, std::fabs(fine_value))) {
    throw NonConvergence("quadrature did not converge: node doubling changed the value by " +
                         std::to_string(result.error_estimate));
  }
  return result;
}

}  // namespace dunklfp::specfun
