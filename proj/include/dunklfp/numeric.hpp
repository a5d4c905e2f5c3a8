#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "dunklfp/banded.hpp"
#include "dunklfp/core.hpp"

namespace dunklfp::numeric {

/// Scalar form of the generalized FP operator on one parity sector,
///   L psi = -q x^-kappa (x^kappa J)',  J = p psi' - (2w - c/x) psi,
/// obtained by replacing R with the sector sign. CH family: p = q = 1,
/// kappa = sigma + mu e, c = sigma - mu e. TP: p = 1 + gamma e,
/// q = 1 - gamma e, kappa = mu (1 + e)/(1 - gamma e), c = mu (1 - e).
struct SectorCoefficients {
  double p = 1.0;
  double q = 1.0;
  double kappa = 0.0;
  double c = 0.0;
  // Exponent of the zero-current solution e^Phi near the origin.
  double zero_current_root = 0.0;
  // Exponent of the other (current-carrying) solution, 1 - kappa.
  double current_root = 1.0;
};

SectorCoefficients sector_coefficients(const DunklParams& params, const Superpotential& s,
                                       Parity parity);

/// Discretized sector operator on a staggered half-line grid.
///
/// Fluxes are written on J = p e^Phi (e^-Phi psi)' with Phi' = (2w - c/x)/p,
/// so the zero-current solution is reproduced exactly. The origin closure
/// follows whichever indicial root is an admissible power of the sector
/// parity; the outer boundary is psi(xmax) = 0. The matrix is self-adjoint
/// under the balance weight x^kappa e^-Phi.
class SectorOperator {
 public:
  const HalfLineGrid& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  const DunklParams& params() const { return params_; }
  const Superpotential& superpotential() const { return superpotential_; }
  const SectorCoefficients& coefficients() const { return coeffs_; }
  const Tridiagonal& matrix() const { return matrix_; }

  // Small-x exponent the closure imposes on psi.
  double origin_exponent() const { return origin_exponent_; }
  bool zero_current_closure() const { return zero_current_; }

  // ln of the balance weight x_i^kappa e^-Phi(x_i).
  const std::vector<double>& log_balance_weight() const { return log_weight_; }
  // 2 sigma (CH family) or 2 eta (TP): exponent of the normalization weight.
  double norm_exponent() const;

  std::vector<double> apply(std::span<const double> psi) const { return matrix_.multiply(psi); }

  // W^(1/2) M W^(-1/2), symmetric.
  Tridiagonal symmetrized() const;

 private:
  friend SectorOperator build_sector_operator(const DunklParams&, const Superpotential&, Parity,
                                              const HalfLineGrid&);
  SectorOperator(const DunklParams& params, const Superpotential& s, Parity parity,
                 const HalfLineGrid& grid)
      : grid_(grid), parity_(parity), params_(params), superpotential_(s) {}

  HalfLineGrid grid_;
  Parity parity_;
  DunklParams params_;
  Superpotential superpotential_;
  SectorCoefficients coeffs_;
  Tridiagonal matrix_;
  double origin_exponent_ = 0.0;
  bool zero_current_ = true;
  std::vector<double> log_weight_;
};

SectorOperator build_sector_operator(const DunklParams& params, const Superpotential& s,
                                     Parity parity, const HalfLineGrid& grid);

// Samples f on the operator grid as a ParityFunction of the sector parity.
template <class F>
ParityFunction sample(const SectorOperator& op, F&& f) {
  ParityFunction out{op.parity(), {}};
  out.samples.reserve(op.grid().size());
  for (std::size_t i = 0; i < op.grid().size(); ++i) out.samples.push_back(f(op.grid().node(i)));
  return out;
}

/// Node range used by residual measurements: the outer 5% (at least two
/// nodes) is dropped, and the first two nodes too when the closure exponent
/// is below 1.
struct ResidualWindow {
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
};
ResidualWindow residual_window(const SectorOperator& op);

// Weighted RMS of v over the residual window, weight |x|^norm_exponent.
double weighted_rms(const SectorOperator& op, std::span<const double> v);

// Weighted RMS of op psi - lambda psi. Throws ParityMismatch.
double residual_norm(const SectorOperator& op, const ParityFunction& psi, double lambda);
// residual_norm divided by the weighted RMS of lambda psi (of psi when
// lambda = 0).
double relative_residual(const SectorOperator& op, const ParityFunction& psi, double lambda);

struct Eigenpair {
  double lambda = 0.0;
  ParityFunction psi;
  int iterations = 0;
};

inline constexpr double kEigenTolerance = 1e-10;
inline constexpr int kEigenMaxIterations = 500;

/// The k smallest eigenvalues, ascending, by shift-invert iteration with
/// deflation. Eigenvectors satisfy 2 h sum psi_i^2 x_i^norm_exponent = 1 and
/// have a positive largest-magnitude sample. Oscillator family only.
std::vector<Eigenpair> lowest_eigenpairs(const SectorOperator& op, std::size_t k);

// Eigenvalues of the symmetric tridiagonal matrix below x (Sturm count).
std::size_t sturm_count(const Tridiagonal& symmetric, double x);

enum class TimeScheme { BackwardEuler, CrankNicolson };

TimeScheme parse_scheme(std::string_view name);
std::string_view to_string(TimeScheme s);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double dt = 0.0;
  TimeScheme scheme = TimeScheme::CrankNicolson;
  Parity parity = Parity::Even;
  std::vector<double> nodes;
  std::vector<double> log_weight;
};

/// Integrates dP/dt = -L P. States are recorded at t = 0 and then every
/// `record_every` steps (and always at the final step).
Trajectory evolve(const SectorOperator& op, const ParityFunction& p0, double dt, std::size_t steps,
                  TimeScheme scheme, std::size_t record_every = 1);

// Balance-weighted overlap sum_i W_i probe_i state_i.
double balance_overlap(std::span<const double> log_weight, std::span<const double> probe,
                       std::span<const double> state);

/// Least-squares slope of -log |<probe, P(t)>| against t, using the
/// balance-weighted overlap (the weight in which distinct modes are
/// orthogonal). Needs at least 10 samples; throws SignalError when the
/// overlap drops below 1e-12 of its initial value before that.
double decay_rate(const Trajectory& traj, const ParityFunction& probe);

// 2 h sum |x_i|^exponent P_i: integral of P |x|^exponent over the line.
double weighted_mass(const HalfLineGrid& grid, std::span<const double> state, double exponent);

// CSV with header t,x,value, 12 significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace dunklfp::numeric
