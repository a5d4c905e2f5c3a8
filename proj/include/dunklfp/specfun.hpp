#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dunklfp::specfun {

// Gamma function; throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);

// J_nu(x) for nu >= 0, x >= 0. Ascending series up to x = 12, normalized
// Miller recurrence beyond.
double bessel_j(double nu, double x);

// J_m(x) of integer order on the whole line, J_m(-x) = (-1)^m J_m(x).
double bessel_j_integer(int m, double x);

// Generalized Laguerre L_n^alpha(u) by the three-term recurrence in n.
// Throws RangeError for alpha <= -1.
double laguerre(int n, double alpha, double u);

// Coefficients c_0..c_n of L_n^alpha(u) = sum_j c_j u^j.
std::vector<double> laguerre_coefficients(int n, double alpha);

/// c_j as a polynomial in alpha: entry r is the coefficient of alpha^r.
/// Exact rational arithmetic is not needed at these degrees; the values are
/// small integers divided by j!(n-j)!.
std::vector<double> laguerre_coefficient_in_alpha(int n, int j);

enum class QuadratureDomain { HalfLine, Interval };

/// Gaussian rule. HalfLine rules integrate g(u) u^alpha e^-u; Interval
/// rules integrate g(u) on [lo, hi] with unit weight.
class QuadratureRule {
 public:
  static QuadratureRule gauss_laguerre(std::size_t n, double alpha = 0.0);
  static QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  QuadratureDomain domain() const { return domain_; }
  double alpha() const { return alpha_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return nodes_.size(); }
  // Polynomial degree integrated exactly against the intrinsic weight.
  std::size_t exactness_degree() const { return 2 * nodes_.size() - 1; }
  // Weight function the rule integrates against (u^alpha e^-u or 1).
  double intrinsic_weight(double u) const;

  // Same family with twice the nodes.
  QuadratureRule refined() const;

  // sum_i w_i g(u_i): the integral of g times the intrinsic weight.
  double apply(const std::function<double(double)>& g) const;

 private:
  QuadratureRule() = default;

  std::vector<double> nodes_;
  std::vector<double> weights_;
  QuadratureDomain domain_ = QuadratureDomain::HalfLine;
  double alpha_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline constexpr std::size_t kMaxLaguerreNodes = 256;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
};

using RealFunction = std::function<double(double)>;

/// Integral of f g weight over the rule's domain. The integrand is divided
/// by the rule's intrinsic weight, evaluated with the rule and with its
/// refinement; the difference is the error estimate. Throws NonConvergence
/// when the estimate exceeds tol.
QuadratureResult weighted_inner_product(const RealFunction& f, const RealFunction& g,
                                        const RealFunction& weight, const QuadratureRule& rule,
                                        double tol = 1e-10);

}  // namespace dunklfp::specfun
