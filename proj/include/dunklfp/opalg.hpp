#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dunklfp/core.hpp"

namespace dunklfp::opalg {

/// Finite sum of c_k x^k over integer k, negative powers allowed.
///
/// Coefficients are kept in extended precision; terms whose coefficient
/// becomes exactly zero are erased so two equal polynomials have identical
/// term maps.
class LaurentPolynomial {
 public:
  using Coefficient = long double;

  LaurentPolynomial() = default;
  static LaurentPolynomial monomial(int k, Coefficient c = 1.0L);
  static LaurentPolynomial constant(Coefficient c) { return monomial(0, c); }

  const std::map<int, Coefficient>& terms() const { return terms_; }
  Coefficient coefficient(int k) const;
  bool is_zero() const { return terms_.empty(); }
  int min_degree() const;
  int max_degree() const;

  void add_term(int k, Coefficient c);

  // Multiplication by x^m.
  LaurentPolynomial shifted(int m) const;
  // Largest |c_k|; 0 for the zero polynomial.
  Coefficient max_abs() const;
  bool is_even() const;
  bool is_odd() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  LaurentPolynomial& operator*=(Coefficient c);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a -= b;
  }
  friend LaurentPolynomial operator*(Coefficient c, LaurentPolynomial p) { return p *= c; }
  friend LaurentPolynomial operator*(LaurentPolynomial p, Coefficient c) { return p *= c; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  std::string to_string() const;

 private:
  std::map<int, Coefficient> terms_;
};

using Operator = std::function<LaurentPolynomial(const LaurentPolynomial&)>;

// Ordinary derivative d/dx.
LaurentPolynomial differentiate(const LaurentPolynomial& p);
// (R p)(x) = p(-x): c_k -> (-1)^k c_k.
LaurentPolynomial apply_reflection(const LaurentPolynomial& p);
// Term-wise action of the derivative selected by params.kind().
LaurentPolynomial apply_derivative(const DunklParams& params, const LaurentPolynomial& p);

/// Second-order operator written directly from the closed forms
///   CH: d2 + (2 sigma/x) d + (sigma^2 - mu^2 - sigma)/x^2 + (mu/x^2) R
///   TP: (1 - gamma^2) (d2 + (2 eta/x) d - eta/x^2 + (eta/x^2) R)
/// assembled from differentiate/apply_reflection/shifted, not from
/// apply_derivative.
LaurentPolynomial apply_closed_form_square(const DunklParams& params, const LaurentPolynomial& p);

// The TP derivative written with (1 - gamma) eta in place of mu.
LaurentPolynomial apply_tp_rewritten(const DunklParams& params, const LaurentPolynomial& p);

// Exact Laurent expansion of w for the Centrifugal family (a x^-1).
// Throws FamilyError for the oscillator family.
LaurentPolynomial superpotential_laurent(const Superpotential& s);

/// A failed comparison on monomial x^k.
struct Violation {
  int degree = 0;
  LaurentPolynomial residual;
  long double max_abs = 0.0L;
};

/// Outcome of a monomial-by-monomial identity check. Failures are data.
struct Report {
  std::string check;
  bool passed = true;
  std::vector<Violation> violations;
  long double worst_residual = 0.0L;
  int monomials_checked = 0;
};

inline constexpr long double kIdentityTolerance = 1e-13L;

// Compares lhs and rhs on every monomial x^k, |k| <= max_degree.
Report compare_on_monomials(std::string check, const Operator& lhs, const Operator& rhs,
                            int max_degree, long double tolerance = kIdentityTolerance);

// R D + D R = 0 on monomials.
Report verify_anticommutation(const DunklParams& params, int max_degree);
Report verify_anticommutation(const Operator& derivative, int max_degree,
                              std::string check = "anticommutation");

// D(D p) against the closed-form square; kind must be CH-family or TP.
Report verify_square_closed_form(const DunklParams& params, int max_degree);
Report verify_square_closed_form(const DunklParams& params, int max_degree,
                                 const Operator& closed_form);

// mu form against (1 - gamma) eta form of the TP derivative.
Report verify_tp_rewrite(const DunklParams& params, int max_degree);

// CH(sigma=0) = Yang, CH(sigma=mu) = Dunkl, TP(gamma=0) = Dunkl.
std::vector<Report> verify_specializations(double mu, int max_degree);

// R(w p) = (R w)(R p) for the Centrifugal family.
Report verify_product_parity(const Superpotential& s, int max_degree);

/// x^shift * body(x) on x > 0, extended to x < 0 with the declared parity.
/// Integer shifts with a body of matching parity coincide with the plain
/// Laurent polynomial; non-integer shifts carry the half-integer powers of
/// the Bessel prefactor.
struct ParitySeries {
  LaurentPolynomial body;
  double shift = 0.0;
  Parity parity = Parity::Even;
};

// Derivative acting on a definite-parity series: R is replaced by the
// series' parity sign. The result has the opposite parity.
ParitySeries apply_derivative(const DunklParams& params, const ParitySeries& f);

// -D^2 f + 2 D(w f) on a definite-parity series. Centrifugal only.
ParitySeries apply_fp_operator(const DunklParams& params, const Superpotential& s,
                               const ParitySeries& f);

/// -D^2 p + 2 D(w p) computed with the exact reflection on an even Laurent
/// polynomial. Throws FamilyError for the oscillator family and
/// ParityMismatch when p has odd terms.
LaurentPolynomial apply_fp_operator_even_sector(const DunklParams& params,
                                                const Superpotential& s,
                                                const LaurentPolynomial& p);

}  // namespace dunklfp::opalg
