#include "dunklfp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "dunklfp/errors.hpp"

namespace dunklfp::numeric {

namespace {

bool is_parity_power(double r, Parity parity) {
  const double ri = std::nearbyint(r);
  if (r < -1e-12 || std::fabs(r - ri) > 1e-9) return false;
  const long long k = static_cast<long long>(ri);
  return (k % 2 == 0) == (parity == Parity::Even);
}

// Phi(x) = (2 W(x) - c ln x)/p with W' = w.
double phi(const Superpotential& s, const SectorCoefficients& k, double x) {
  return (2.0 * s.antiderivative(x) - k.c * std::log(x)) / k.p;
}

}  // namespace

SectorCoefficients sector_coefficients(const DunklParams& params, const Superpotential& s,
                                       Parity parity) {
  const double e = parity_sign(parity);
  const double mu = params.mu();
  SectorCoefficients k;
  if (params.is_ch_family()) {
    k.p = 1.0;
    k.q = 1.0;
    k.kappa = params.sigma() + mu * e;
    k.c = params.sigma() - mu * e;
  } else {
    const double gamma = params.gamma();
    k.p = 1.0 + gamma * e;
    k.q = 1.0 - gamma * e;
    k.kappa = mu * (1.0 + e) / (1.0 - gamma * e);
    k.c = mu * (1.0 - e);
  }
  k.zero_current_root = (2.0 * s.a() - k.c) / k.p;
  k.current_root = 1.0 - k.kappa;
  return k;
}

double SectorOperator::norm_exponent() const {
  return params_.is_ch_family() ? 2.0 * params_.sigma() : 2.0 * params_.eta();
}

SectorOperator build_sector_operator(const DunklParams& params, const Superpotential& s,
                                     Parity parity, const HalfLineGrid& grid) {
  SectorOperator op(params, s, parity, grid);
  const SectorCoefficients k = sector_coefficients(params, s, parity);
  op.coeffs_ = k;

  const bool zero_ok = is_parity_power(k.zero_current_root, parity);
  const bool current_ok = is_parity_power(k.current_root, parity);
  if (zero_ok != current_ok) {
    op.zero_current_ = zero_ok;
  } else {
    op.zero_current_ = k.zero_current_root >= k.current_root;
  }
  op.origin_exponent_ = op.zero_current_ ? k.zero_current_root : k.current_root;

  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<double> phi_node(n);
  std::vector<double> phi_face(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi_node[i] = phi(s, k, grid.node(i));
    phi_face[i] = phi(s, k, (static_cast<double>(i) + 1.0) * h);
  }

  // Face i sits at (i + 1) h. F_i = x_f^kappa J_i = right[i] psi_{i+1} - left[i] psi_i.
  std::vector<double> right(n, 0.0);
  std::vector<double> left(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double xf = (static_cast<double>(i) + 1.0) * h;
    const double base = std::pow(xf, k.kappa) * k.p / h;
    if (i + 1 < n) {
      right[i] = base * std::exp(phi_face[i] - phi_node[i + 1]);
      left[i] = base * std::exp(phi_face[i] - phi_node[i]);
    } else {
      // Half cell to the Dirichlet boundary.
      left[i] = 2.0 * base * std::exp(phi_face[i] - phi_node[i]);
    }
  }

  Tridiagonal m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pre = -k.q * std::pow(grid.node(i), -k.kappa) / h;
    // (L psi)_i = pre (F_i - F_{i-1})
    m.diag[i] += -pre * left[i];
    if (i + 1 < n) m.upper[i] += pre * right[i];
    if (i > 0) {
      m.diag[i] -= pre * right[i - 1];
      m.lower[i - 1] += pre * left[i - 1];
    }
  }
  if (!op.zero_current_) {
    // Flux through the origin carried by psi ~ x^(1 - kappa).
    const double x0 = grid.node(0);
    const double f0 = k.p * (k.current_root - k.zero_current_root) * std::pow(x0, k.kappa - 1.0);
    m.diag[0] -= -k.q * std::pow(x0, -k.kappa) / h * f0;
  }
  op.matrix_ = std::move(m);

  op.log_weight_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    op.log_weight_[i] = k.kappa * std::log(grid.node(i)) - phi_node[i];
  return op;
}

Tridiagonal SectorOperator::symmetrized() const {
  const std::size_t n = matrix_.size();
  Tridiagonal s(n);
  s.diag = matrix_.diag;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Both off-diagonal entries share the sign of -q p; their geometric
    // mean is the symmetric entry.
    const double prod = matrix_.lower[i] * matrix_.upper[i];
    const double v = -std::sqrt(std::max(prod, 0.0));
    s.lower[i] = v;
    s.upper[i] = v;
  }
  return s;
}

ResidualWindow residual_window(const SectorOperator& op) {
  const std::size_t n = op.grid().size();
  const std::size_t buffer = std::max<std::size_t>(2, n / 20);
  ResidualWindow w;
  w.first = op.origin_exponent() < 1.0 ? 2 : 0;
  w.last = n > buffer ? n - buffer : 0;
  if (w.last <= w.first) throw RangeError("grid too small for a residual window");
  return w;
}

double weighted_rms(const SectorOperator& op, std::span<const double> v) {
  const ResidualWindow win = residual_window(op);
  const double e = op.norm_exponent();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = win.first; i < win.last; ++i) {
    const double w = std::pow(op.grid().node(i), e);
    num += w * v[i] * v[i];
    den += w;
  }
  return std::sqrt(num / den);
}

namespace {

void check_sample(const SectorOperator& op, const ParityFunction& psi) {
  if (psi.parity != op.parity()) throw ParityMismatch("function parity differs from the sector");
  if (psi.samples.size() != op.grid().size()) throw RangeError("samples do not match the grid");
}

}  // namespace

double residual_norm(const SectorOperator& op, const ParityFunction& psi, double lambda) {
  check_sample(op, psi);
  std::vector<double> r = op.apply(psi.samples);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * psi.samples[i];
  return weighted_rms(op, r);
}

double relative_residual(const SectorOperator& op, const ParityFunction& psi, double lambda) {
  const double r = residual_norm(op, psi, lambda);
  const double scale = weighted_rms(op, psi.samples) * (lambda == 0.0 ? 1.0 : std::fabs(lambda));
  if (scale == 0.0) return r == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return r / scale;
}

std::size_t sturm_count(const Tridiagonal& a, double x) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double off2 = i > 0 ? a.lower[i - 1] * a.lower[i - 1] : 0.0;
    d = a.diag[i] - x - (i > 0 ? off2 / d : 0.0);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

struct Interval {
  double lo;
  double hi;
};

Interval gershgorin(const Tridiagonal& a) {
  Interval g{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(a.lower[i - 1]);
    if (i + 1 < a.size()) r += std::fabs(a.upper[i]);
    g.lo = std::min(g.lo, a.diag[i] - r);
    g.hi = std::max(g.hi, a.diag[i] + r);
  }
  return g;
}

// Bisection for the j-th (0-based) eigenvalue inside the Gershgorin interval.
double bisect_eigenvalue(const Tridiagonal& a, std::size_t j) {
  Interval g = gershgorin(a);
  double lo = g.lo;
  double hi = g.hi;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(a, mid) > j) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void normalize(std::vector<double>& y) {
  const double nrm = std::sqrt(dot(y, y));
  for (double& v : y) v /= nrm;
}

void deflate(std::vector<double>& y, const std::vector<std::vector<double>>& basis) {
  for (const auto& b : basis) {
    const double c = dot(y, b);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * b[i];
  }
}

struct InverseIteration {
  double lambda;
  std::vector<double> y;
  int iterations;
};

InverseIteration inverse_iteration(const Tridiagonal& s, double shift,
                                   const std::vector<std::vector<double>>& basis,
                                   std::mt19937& rng) {
  const std::size_t n = s.size();
  Tridiagonal shifted = s.affine(-shift, 1.0);
  std::unique_ptr<BandedLU> lu;
  for (int attempt = 0; attempt < 4 && !lu; ++attempt) {
    try {
      lu = std::make_unique<BandedLU>(shifted);
    } catch (const SolveError&) {
      shift -= 1e-7 * std::max(1.0, std::fabs(shift));
      shifted = s.affine(-shift, 1.0);
    }
  }
  if (!lu) throw ConvergenceError("shifted operator stays singular near " + std::to_string(shift));

  std::normal_distribution<double> normal;
  std::vector<double> y(n);
  for (double& v : y) v = normal(rng);
  deflate(y, basis);
  normalize(y);

  double lambda = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= kEigenMaxIterations; ++it) {
    lu->solve_in_place(y);
    deflate(y, basis);
    normalize(y);
    const std::vector<double> sy = s.multiply(y);
    const double next = dot(y, sy);
    if (std::isfinite(lambda) &&
        std::fabs(next - lambda) < kEigenTolerance * std::max(1.0, std::fabs(next))) {
      return {next, std::move(y), it};
    }
    lambda = next;
  }
  throw ConvergenceError("eigenvalue iteration did not settle in " +
                         std::to_string(kEigenMaxIterations) + " iterations");
}

}  // namespace

std::vector<Eigenpair> lowest_eigenpairs(const SectorOperator& op, std::size_t k) {
  if (k < 1) throw RangeError("need at least one eigenpair");
  if (op.superpotential().family() != SuperpotentialFamily::OscillatorCentrifugal) {
    throw SpectrumError("the centrifugal problem has a continuous spectrum");
  }
  const std::size_t n = op.grid().size();
  if (k > n / 8) throw SpectrumError("requested modes exceed what the grid resolves");

  const auto& lw = op.log_balance_weight();
  const auto [wmin, wmax] = std::minmax_element(lw.begin(), lw.end());
  if (*wmax - *wmin > 1400.0) throw SpectrumError("balance weight range exceeds double precision");

  const Tridiagonal s = op.symmetrized();
  const bool analytic_seeds = op.params().kind() == DerivativeKind::TP;
  const double spacing =
      4.0 * (1.0 - parity_sign(op.parity()) * op.params().gamma());
  std::mt19937 rng(20240613u);

  std::vector<std::vector<double>> basis;
  std::vector<Eigenpair> out;
  for (std::size_t j = 0; j < k; ++j) {
    double seed = analytic_seeds ? spacing * static_cast<double>(j) : bisect_eigenvalue(s, j);
    double offset = analytic_seeds ? 1e-2 * spacing : 1e-8 * std::max(1.0, std::fabs(seed));
    InverseIteration found = inverse_iteration(s, seed - offset, basis, rng);
    // The seed only picks the nearest eigenvalue; confirm it is the j-th.
    const double guard = 1e-6 * std::max(1.0, std::fabs(found.lambda));
    if (sturm_count(s, found.lambda - guard) != j || sturm_count(s, found.lambda + guard) != j + 1) {
      seed = bisect_eigenvalue(s, j);
      offset = 1e-8 * std::max(1.0, std::fabs(seed));
      found = inverse_iteration(s, seed - offset, basis, rng);
    }
    basis.push_back(found.y);

    Eigenpair pair;
    pair.lambda = found.lambda;
    pair.iterations = found.iterations;
    pair.psi.parity = op.parity();
    pair.psi.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      pair.psi.samples[i] = found.y[i] * std::exp(-0.5 * (lw[i] - *wmin));

    const double peak = *std::max_element(pair.psi.samples.begin(), pair.psi.samples.end(),
                                          [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    const std::size_t tail = n - std::max<std::size_t>(2, n / 20);
    for (std::size_t i = tail; i < n; ++i) {
      if (std::fabs(pair.psi.samples[i]) > 1e-6 * std::fabs(peak)) {
        throw SpectrumError("mode " + std::to_string(j) + " is not resolved before xmax");
      }
    }
    const double e = op.norm_exponent();
    const double h = op.grid().spacing();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      norm += pair.psi.samples[i] * pair.psi.samples[i] * std::pow(op.grid().node(i), e);
    const double scale = (peak < 0.0 ? -1.0 : 1.0) / std::sqrt(2.0 * h * norm);
    for (double& v : pair.psi.samples) v *= scale;
    out.push_back(std::move(pair));
  }
  std::sort(out.begin(), out.end(), [](const Eigenpair& a, const Eigenpair& b) { return a.lambda < b.lambda; });
  return out;
}

TimeScheme parse_scheme(std::string_view name) {
  if (name == "cn" || name == "crank-nicolson" || name == "CrankNicolson") return TimeScheme::CrankNicolson;
  if (name == "be" || name == "backward-euler" || name == "BackwardEuler") return TimeScheme::BackwardEuler;
  throw ConfigError("unknown time scheme '" + std::string(name) + "'");
}

std::string_view to_string(TimeScheme s) {
  return s == TimeScheme::CrankNicolson ? "crank-nicolson" : "backward-euler";
}

Trajectory evolve(const SectorOperator& op, const ParityFunction& p0, double dt, std::size_t steps,
                  TimeScheme scheme, std::size_t record_every) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw RangeError("dt must be positive");
  if (record_every == 0) throw RangeError("record_every must be positive");
  check_sample(op, p0);

  Trajectory traj;
  traj.dt = dt;
  traj.scheme = scheme;
  traj.parity = op.parity();
  traj.nodes = op.grid().nodes();
  traj.log_weight = op.log_balance_weight();

  const Tridiagonal& m = op.matrix();
  const double theta = scheme == TimeScheme::CrankNicolson ? 0.5 : 1.0;
  const BandedLU lhs(m.affine(1.0, theta * dt));
  const Tridiagonal rhs = m.affine(1.0, -(1.0 - theta) * dt);

  std::vector<double> state = p0.samples;
  traj.times.push_back(0.0);
  traj.states.push_back(state);
  for (std::size_t step = 1; step <= steps; ++step) {
    if (scheme == TimeScheme::CrankNicolson) state = rhs.multiply(state);
    lhs.solve_in_place(state);
    if (step % record_every == 0 || step == steps) {
      for (double v : state)
        if (!std::isfinite(v)) throw SolveError("evolution produced a non-finite value");
      traj.times.push_back(static_cast<double>(step) * dt);
      traj.states.push_back(state);
    }
  }
  return traj;
}

double balance_overlap(std::span<const double> log_weight, std::span<const double> probe,
                       std::span<const double> state) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (probe[i] == 0.0) continue;
    const double factor = std::exp(log_weight[i] + std::log(std::fabs(probe[i])));
    sum += (probe[i] < 0.0 ? -factor : factor) * state[i];
  }
  return sum;
}

double decay_rate(const Trajectory& traj, const ParityFunction& probe) {
  if (probe.parity != traj.parity) throw ParityMismatch("probe parity differs from the trajectory");
  constexpr std::size_t kMinSamples = 10;
  if (traj.states.size() < kMinSamples) throw SignalError("need at least 10 time samples");

  std::vector<double> t;
  std::vector<double> y;
  const double first = balance_overlap(traj.log_weight, probe.samples, traj.states.front());
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    const double o = balance_overlap(traj.log_weight, probe.samples, traj.states[j]);
    if (!(std::fabs(o) >= 1e-12 * std::fabs(first)) || o == 0.0) {
      if (j < kMinSamples) throw SignalError("probe overlap vanished before 10 samples");
      break;
    }
    t.push_back(traj.times[j]);
    y.push_back(std::log(std::fabs(o)));
  }
  const double nt = static_cast<double>(t.size());
  const double tm = std::accumulate(t.begin(), t.end(), 0.0) / nt;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / nt;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sxy += (t[i] - tm) * (y[i] - ym);
    sxx += (t[i] - tm) * (t[i] - tm);
  }
  return -sxy / sxx;
}

double weighted_mass(const HalfLineGrid& grid, std::span<const double> state, double exponent) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += std::pow(grid.node(i), exponent) * state[i];
  return 2.0 * grid.spacing() * sum;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,x,value\n";
  char buf[96];
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    for (std::size_t i = 0; i < traj.nodes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", traj.times[j], traj.nodes[i],
                    traj.states[j][i]);
      out << buf;
    }
  }
}

}  // namespace dunklfp::numeric
