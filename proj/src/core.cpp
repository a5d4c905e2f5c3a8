#include "dunklfp/core.hpp"

#include <cmath>
#include <sstream>

#include "dunklfp/errors.hpp"

namespace dunklfp {

std::string_view to_string(DerivativeKind kind) {
  switch (kind) {
    case DerivativeKind::Yang:
      return "Yang";
    case DerivativeKind::Dunkl:
      return "Dunkl";
    case DerivativeKind::CH:
      return "CH";
    case DerivativeKind::TP:
      return "TP";
  }
  return "?";
}

DerivativeKind parse_kind(std::string_view name) {
  if (name == "Yang" || name == "yang") return DerivativeKind::Yang;
  if (name == "Dunkl" || name == "dunkl") return DerivativeKind::Dunkl;
  if (name == "CH" || name == "ch") return DerivativeKind::CH;
  if (name == "TP" || name == "tp") return DerivativeKind::TP;
  throw KindError("unknown derivative kind '" + std::string(name) + "'");
}

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parse_parity(std::string_view name) {
  if (name == "even" || name == "Even") return Parity::Even;
  if (name == "odd" || name == "Odd") return Parity::Odd;
  throw ConfigError("unknown parity '" + std::string(name) + "'");
}

DunklParams DunklParams::yang(double mu) { return make_params(DerivativeKind::Yang, 0.0, mu); }
DunklParams DunklParams::dunkl(double mu) { return make_params(DerivativeKind::Dunkl, mu, mu); }
DunklParams DunklParams::ch(double sigma, double mu) {
  return make_params(DerivativeKind::CH, sigma, mu);
}
DunklParams DunklParams::tp(double mu, double gamma) {
  return make_params(DerivativeKind::TP, 0.0, mu, gamma);
}

DunklParams make_params(DerivativeKind kind, double sigma, double mu, double gamma) {
  if (!std::isfinite(sigma) || !std::isfinite(mu) || !std::isfinite(gamma)) {
    throw RangeError("parameters must be finite");
  }
  if (!(mu > -0.5)) {
    throw RangeError("mu must satisfy mu > -1/2, got " + std::to_string(mu));
  }
  if (!(sigma > -0.5)) {
    throw RangeError("sigma must satisfy sigma > -1/2, got " + std::to_string(sigma));
  }
  switch (kind) {
    case DerivativeKind::Yang:
      if (sigma != 0.0) throw KindError("Yang derivative requires sigma = 0");
      break;
    case DerivativeKind::Dunkl:
      if (sigma != mu) throw KindError("Dunkl derivative requires sigma = mu");
      break;
    case DerivativeKind::CH:
      break;
    case DerivativeKind::TP:
      if (sigma != 0.0) throw KindError("TP derivative has no sigma parameter");
      if (!(std::abs(gamma) < 1.0)) {
        throw RangeError("gamma must lie in (-1, 1), got " + std::to_string(gamma));
      }
      break;
  }
  if (kind != DerivativeKind::TP && gamma != 0.0) {
    throw KindError("gamma is only defined for the TP derivative");
  }

  DunklParams params(kind, sigma, mu, gamma);
  if (kind != DerivativeKind::Yang && kind != DerivativeKind::TP && sigma <= 0.5) {
    std::ostringstream note;
    note << "sigma = " << sigma
         << " lies in (-1/2, 1/2]; accepted under the bound sigma > -1/2";
    params.warnings_.push_back(note.str());
  }
  return params;
}

Superpotential Superpotential::centrifugal(double a) {
  if (a == 1.0) throw RangeError("superpotential parameter a = 1 is excluded");
  if (!std::isfinite(a)) throw RangeError("superpotential parameter must be finite");
  return {SuperpotentialFamily::Centrifugal, a};
}

Superpotential Superpotential::oscillator_centrifugal(double a) {
  if (a == 1.0) throw RangeError("superpotential parameter a = 1 is excluded");
  if (!std::isfinite(a)) throw RangeError("superpotential parameter must be finite");
  return {SuperpotentialFamily::OscillatorCentrifugal, a};
}

double Superpotential::w(double x) const {
  if (x == 0.0) throw DomainError("w(x) is singular at x = 0");
  return a_ / x - 2.0 * quadratic_part() * x;
}

double Superpotential::w_prime(double x) const {
  if (x == 0.0) throw DomainError("w'(x) is singular at x = 0");
  return -a_ / (x * x) - 2.0 * quadratic_part();
}

double Superpotential::antiderivative(double x) const {
  if (!(x > 0.0)) throw DomainError("antiderivative is taken on x > 0");
  return a_ * std::log(x) - quadratic_part() * x * x;
}

SuperpotentialValues superpotential_eval(const Superpotential& s, double x) {
  const double w = s.w(x);
  const double wp = s.w_prime(x);
  return {w, wp, s.w(-x), w * w + wp};
}

HalfLineGrid::HalfLineGrid(std::size_t n, double h) : n_(n), h_(h) {
  if (n_ < 3) throw RangeError("grid needs at least 3 nodes");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw RangeError("grid spacing must be positive");
}

HalfLineGrid HalfLineGrid::with_extent(std::size_t n, double xmax) {
  if (!(xmax > 0.0)) throw RangeError("xmax must be positive");
  if (n == 0) throw RangeError("grid needs at least 3 nodes");
  return {n, xmax / static_cast<double>(n)};
}

std::vector<double> HalfLineGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

}  // namespace dunklfp
