#include "dunklfp/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "dunklfp/errors.hpp"

namespace dunklfp::opalg {

namespace {

using Coefficient = LaurentPolynomial::Coefficient;

constexpr Coefficient minus_one_power(int k) { return (k % 2 == 0) ? 1.0L : -1.0L; }

// Coefficient c_k of D x^k = c_k x^{k-1} for the four kinds, with the
// reflection eigenvalue supplied as `refl` and the exponent as a real.
Coefficient derivative_factor(const DunklParams& params, long double exponent,
                              long double refl) {
  const long double mu = params.mu();
  switch (params.kind()) {
    case DerivativeKind::Yang:
      return exponent - mu * refl;
    case DerivativeKind::Dunkl:
      return exponent + mu - mu * refl;
    case DerivativeKind::CH:
      return exponent + static_cast<long double>(params.sigma()) - mu * refl;
    case DerivativeKind::TP:
      return exponent + mu - mu * refl +
             static_cast<long double>(params.gamma()) * exponent * refl;
  }
  return 0.0L;
}

}  // namespace

LaurentPolynomial LaurentPolynomial::monomial(int k, Coefficient c) {
  LaurentPolynomial p;
  p.add_term(k, c);
  return p;
}

LaurentPolynomial::Coefficient LaurentPolynomial::coefficient(int k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? 0.0L : it->second;
}

int LaurentPolynomial::min_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first;
}

int LaurentPolynomial::max_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

void LaurentPolynomial::add_term(int k, Coefficient c) {
  if (c == 0.0L) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0L) terms_.erase(it);
  }
}

LaurentPolynomial LaurentPolynomial::shifted(int m) const {
  LaurentPolynomial out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k + m, c);
  return out;
}

LaurentPolynomial::Coefficient LaurentPolynomial::max_abs() const {
  Coefficient m = 0.0L;
  for (const auto& [k, c] : terms_) m = std::max(m, std::fabs(c));
  return m;
}

bool LaurentPolynomial::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first % 2 == 0; });
}

bool LaurentPolynomial::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first % 2 != 0; });
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(Coefficient c) {
  if (c == 0.0L) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  LaurentPolynomial out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
  return out;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  for (const auto& [k, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%s%.15Lg*x^%d", out.empty() ? "" : " + ", c, k);
    out += buf;
  }
  return out;
}

LaurentPolynomial differentiate(const LaurentPolynomial& p) {
  LaurentPolynomial out;
  for (const auto& [k, c] : p.terms()) out.add_term(k - 1, static_cast<Coefficient>(k) * c);
  return out;
}

LaurentPolynomial apply_reflection(const LaurentPolynomial& p) {
  LaurentPolynomial out;
  for (const auto& [k, c] : p.terms()) out.add_term(k, minus_one_power(k) * c);
  return out;
}

LaurentPolynomial apply_derivative(const DunklParams& params, const LaurentPolynomial& p) {
  LaurentPolynomial out;
  for (const auto& [k, c] : p.terms()) {
    out.add_term(k - 1, derivative_factor(params, k, minus_one_power(k)) * c);
  }
  return out;
}

LaurentPolynomial apply_closed_form_square(const DunklParams& params,
                                           const LaurentPolynomial& p) {
  const LaurentPolynomial dp = differentiate(p);
  const LaurentPolynomial d2p = differentiate(dp);
  const LaurentPolynomial rp = apply_reflection(p);
  if (params.is_ch_family()) {
    const long double sigma = params.sigma();
    const long double mu = params.mu();
    return d2p + (2.0L * sigma) * dp.shifted(-1) +
           (sigma * sigma - mu * mu - sigma) * p.shifted(-2) + mu * rp.shifted(-2);
  }
  const long double gamma = params.gamma();
  const long double eta = params.eta();
  LaurentPolynomial inner = d2p + (2.0L * eta) * dp.shifted(-1) - eta * p.shifted(-2) +
                            eta * rp.shifted(-2);
  return (1.0L - gamma * gamma) * inner;
}

namespace {

// d/dx + (m/x)(1 - R) + gamma (d/dx) R from primitives, with m the
// coefficient of the difference term.
LaurentPolynomial tp_from_primitives(long double m, long double gamma,
                                     const LaurentPolynomial& p) {
  const LaurentPolynomial rp = apply_reflection(p);
  return differentiate(p) + m * p.shifted(-1) - m * rp.shifted(-1) + gamma * differentiate(rp);
}

}  // namespace

LaurentPolynomial apply_tp_rewritten(const DunklParams& params, const LaurentPolynomial& p) {
  if (params.kind() != DerivativeKind::TP) throw KindError("TP rewrite needs TP parameters");
  const long double gamma = params.gamma();
  return tp_from_primitives((1.0L - gamma) * static_cast<long double>(params.eta()), gamma, p);
}

LaurentPolynomial superpotential_laurent(const Superpotential& s) {
  if (s.family() != SuperpotentialFamily::Centrifugal) {
    throw FamilyError("only the Centrifugal superpotential is a Laurent polynomial");
  }
  return LaurentPolynomial::monomial(-1, s.a());
}

Report compare_on_monomials(std::string check, const Operator& lhs, const Operator& rhs,
                            int max_degree, long double tolerance) {
  Report report;
  report.check = std::move(check);
  for (int k = -max_degree; k <= max_degree; ++k) {
    const LaurentPolynomial x_k = LaurentPolynomial::monomial(k);
    const LaurentPolynomial residual = lhs(x_k) - rhs(x_k);
    const long double size = residual.max_abs();
    report.worst_residual = std::max(report.worst_residual, size);
    ++report.monomials_checked;
    if (size > tolerance) {
      report.passed = false;
      report.violations.push_back({k, residual, size});
    }
  }
  return report;
}

Report verify_anticommutation(const Operator& derivative, int max_degree, std::string check) {
  if (max_degree < 1) throw RangeError("max_degree must be at least 1");
  const Operator lhs = [&](const LaurentPolynomial& p) {
    return apply_reflection(derivative(p)) + derivative(apply_reflection(p));
  };
  const Operator zero = [](const LaurentPolynomial&) { return LaurentPolynomial{}; };
  return compare_on_monomials(std::move(check), lhs, zero, max_degree);
}

Report verify_anticommutation(const DunklParams& params, int max_degree) {
  return verify_anticommutation(
      [&](const LaurentPolynomial& p) { return apply_derivative(params, p); }, max_degree,
      "anticommutation[" + std::string(to_string(params.kind())) + "]");
}

Report verify_square_closed_form(const DunklParams& params, int max_degree,
                                 const Operator& closed_form) {
  if (max_degree < 1) throw RangeError("max_degree must be at least 1");
  const Operator twice = [&](const LaurentPolynomial& p) {
    return apply_derivative(params, apply_derivative(params, p));
  };
  return compare_on_monomials(
      "square_closed_form[" + std::string(to_string(params.kind())) + "]", twice, closed_form,
      max_degree);
}

Report verify_square_closed_form(const DunklParams& params, int max_degree) {
  return verify_square_closed_form(
      params, max_degree,
      [&](const LaurentPolynomial& p) { return apply_closed_form_square(params, p); });
}

Report verify_tp_rewrite(const DunklParams& params, int max_degree) {
  if (params.kind() != DerivativeKind::TP) throw KindError("TP rewrite needs TP parameters");
  const long double mu = params.mu();
  const long double gamma = params.gamma();
  return compare_on_monomials(
      "tp_rewrite",
      [&](const LaurentPolynomial& p) { return tp_from_primitives(mu, gamma, p); },
      [&](const LaurentPolynomial& p) { return apply_tp_rewritten(params, p); }, max_degree);
}

std::vector<Report> verify_specializations(double mu, int max_degree) {
  const DunklParams yang = DunklParams::yang(mu);
  const DunklParams dunkl = DunklParams::dunkl(mu);
  const DunklParams ch_zero = DunklParams::ch(0.0, mu);
  const DunklParams ch_mu = DunklParams::ch(mu, mu);
  const DunklParams tp_zero = DunklParams::tp(mu, 0.0);
  const auto as_op = [](const DunklParams& params) -> Operator {
    return [params](const LaurentPolynomial& p) { return apply_derivative(params, p); };
  };
  return {
      compare_on_monomials("CH(sigma=0)=Yang", as_op(ch_zero), as_op(yang), max_degree),
      compare_on_monomials("CH(sigma=mu)=Dunkl", as_op(ch_mu), as_op(dunkl), max_degree),
      compare_on_monomials("TP(gamma=0)=Dunkl", as_op(tp_zero), as_op(dunkl), max_degree),
  };
}

Report verify_product_parity(const Superpotential& s, int max_degree) {
  const LaurentPolynomial w = superpotential_laurent(s);
  return compare_on_monomials(
      "product_parity",
      [&](const LaurentPolynomial& p) { return apply_reflection(w * p); },
      [&](const LaurentPolynomial& p) { return apply_reflection(w) * apply_reflection(p); },
      max_degree);
}

ParitySeries apply_derivative(const DunklParams& params, const ParitySeries& f) {
  const long double refl = parity_sign(f.parity);
  ParitySeries out{{}, f.shift, opposite(f.parity)};
  for (const auto& [k, c] : f.body.terms()) {
    const long double exponent = static_cast<long double>(k) + f.shift;
    out.body.add_term(k - 1, derivative_factor(params, exponent, refl) * c);
  }
  return out;
}

ParitySeries apply_fp_operator(const DunklParams& params, const Superpotential& s,
                               const ParitySeries& f) {
  const LaurentPolynomial w = superpotential_laurent(s);
  const ParitySeries d2f = apply_derivative(params, apply_derivative(params, f));
  // w is odd, so w f has the opposite parity of f.
  const ParitySeries wf{w * f.body, f.shift, opposite(f.parity)};
  const ParitySeries dwf = apply_derivative(params, wf);
  return {dwf.body * 2.0L - d2f.body, f.shift, f.parity};
}

LaurentPolynomial apply_fp_operator_even_sector(const DunklParams& params,
                                                const Superpotential& s,
                                                const LaurentPolynomial& p) {
  const LaurentPolynomial w = superpotential_laurent(s);
  if (!p.is_even()) throw ParityMismatch("even-sector operator applied to a non-even polynomial");
  const LaurentPolynomial d2p = apply_derivative(params, apply_derivative(params, p));
  return 2.0L * apply_derivative(params, w * p) - d2p;
}

}  // namespace dunklfp::opalg
