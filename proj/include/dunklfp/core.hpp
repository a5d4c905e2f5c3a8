#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dunklfp {

enum class DerivativeKind { Yang, Dunkl, CH, TP };

std::string_view to_string(DerivativeKind kind);
DerivativeKind parse_kind(std::string_view name);

enum class Parity { Even, Odd };

// +1 for Even, -1 for Odd: the eigenvalue of R on the sector.
constexpr int parity_sign(Parity p) { return p == Parity::Even ? 1 : -1; }
constexpr Parity opposite(Parity p) {
  return p == Parity::Even ? Parity::Odd : Parity::Even;
}
std::string_view to_string(Parity p);
Parity parse_parity(std::string_view name);

/// Validated parameters of a reflection-augmented derivative.
///
/// The kind fixes which derivative is in force:
///   Yang   d/dx - (mu/x) R
///   Dunkl  d/dx + (mu/x)(1 - R)
///   CH     d/dx + sigma/x - (mu/x) R
///   TP     d/dx + (mu/x)(1 - R) + gamma (d/dx) R
/// Yang and Dunkl are stored with sigma = 0 and sigma = mu so that code
/// handling the CH family can read sigma() uniformly. eta() is recomputed
/// from mu and gamma on every call.
class DunklParams {
 public:
  static DunklParams yang(double mu);
  static DunklParams dunkl(double mu);
  static DunklParams ch(double sigma, double mu);
  static DunklParams tp(double mu, double gamma);

  DerivativeKind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  double mu() const { return mu_; }
  double gamma() const { return gamma_; }
  double eta() const { return mu_ / (1.0 - gamma_); }

  // True for Yang, Dunkl and CH, which share the CH algebra.
  bool is_ch_family() const { return kind_ != DerivativeKind::TP; }

  // Non-fatal notes produced during validation.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  DunklParams(DerivativeKind kind, double sigma, double mu, double gamma)
      : kind_(kind), sigma_(sigma), mu_(mu), gamma_(gamma) {}

  friend DunklParams make_params(DerivativeKind, double, double, double);

  DerivativeKind kind_;
  double sigma_;
  double mu_;
  double gamma_;
  std::vector<std::string> warnings_;
};

/// Validates raw parameters. sigma is ignored-but-checked-zero for TP and
/// gamma must be zero for the CH family.
///
/// Throws RangeError when mu <= -1/2, sigma <= -1/2 or |gamma| >= 1 (TP), and
/// KindError when the specialization relations do not hold (Yang with
/// sigma != 0, Dunkl with sigma != mu, TP with sigma != 0, CH family with
/// gamma != 0). A sigma in (-1/2, 1/2] is accepted with a warning.
DunklParams make_params(DerivativeKind kind, double sigma, double mu, double gamma = 0.0);

enum class SuperpotentialFamily { Centrifugal, OscillatorCentrifugal };

struct SuperpotentialValues {
  double w;
  double w_prime;
  double reflected;  // w(-x)
  double potential;  // w^2 + w'
};

/// Odd drift-defining function w(x): a/x or a/x - x, with a != 1.
class Superpotential {
 public:
  static Superpotential centrifugal(double a);
  static Superpotential oscillator_centrifugal(double a);

  SuperpotentialFamily family() const { return family_; }
  double a() const { return a_; }

  double w(double x) const;
  double w_prime(double x) const;
  // Antiderivative for x > 0: a ln x, or a ln x - x^2/2.
  double antiderivative(double x) const;
  // Coefficient of -x^2 in the antiderivative; 0 or 1/2.
  double quadratic_part() const {
    return family_ == SuperpotentialFamily::OscillatorCentrifugal ? 0.5 : 0.0;
  }

 private:
  Superpotential(SuperpotentialFamily family, double a) : family_(family), a_(a) {}

  SuperpotentialFamily family_;
  double a_;
};

// Throws DomainError at x = 0.
SuperpotentialValues superpotential_eval(const Superpotential& s, double x);

/// Staggered half-line grid x_i = (i + 1/2) h, i = 0..n-1.
class HalfLineGrid {
 public:
  HalfLineGrid(std::size_t n, double h);
  static HalfLineGrid with_extent(std::size_t n, double xmax);

  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  double xmax() const { return static_cast<double>(n_) * h_; }
  double node(std::size_t i) const { return (static_cast<double>(i) + 0.5) * h_; }
  std::vector<double> nodes() const;

 private:
  std::size_t n_;
  double h_;
};

/// Samples of a definite-parity function on the positive half-line nodes.
/// The value at -x_i is parity_sign(parity) * samples[i].
struct ParityFunction {
  Parity parity = Parity::Even;
  std::vector<double> samples;

  double mirrored(std::size_t i) const { return parity_sign(parity) * samples[i]; }
};

}  // namespace dunklfp
