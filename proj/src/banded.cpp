#include "dunklfp/banded.hpp"

#include <string>

#include "dunklfp/errors.hpp"
#include "lapack.hpp"

namespace dunklfp::numeric {

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw RangeError("vector length does not match matrix size");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += lower[i - 1] * x[i - 1];
    if (i + 1 < n) v += upper[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

Tridiagonal Tridiagonal::affine(double alpha, double beta) const {
  Tridiagonal out(size());
  for (std::size_t i = 0; i < size(); ++i) out.diag[i] = alpha + beta * diag[i];
  for (std::size_t i = 0; i < lower.size(); ++i) {
    out.lower[i] = beta * lower[i];
    out.upper[i] = beta * upper[i];
  }
  return out;
}

// Band storage for kl = ku = 1 with room for the fill-in row:
// ab(kl + ku + i - j, j) = A(i, j), ldab = 2 kl + ku + 1 = 4.
BandedLU::BandedLU(const Tridiagonal& a)
    : n_(static_cast<int>(a.size())), ldab_(4), ab_(static_cast<std::size_t>(4 * a.size()), 0.0),
      ipiv_(a.size()) {
  const int kl = 1;
  const int ku = 1;
  const auto at = [&](int i, int j) -> double& {
    return ab_[static_cast<std::size_t>(j * ldab_ + kl + ku + i - j)];
  };
  for (int j = 0; j < n_; ++j) {
    at(j, j) = a.diag[static_cast<std::size_t>(j)];
    if (j > 0) at(j - 1, j) = a.upper[static_cast<std::size_t>(j - 1)];
    if (j + 1 < n_) at(j + 1, j) = a.lower[static_cast<std::size_t>(j)];
  }
  int info = 0;
  dgbtrf_(&n_, &n_, &kl, &ku, ab_.data(), &ldab_, ipiv_.data(), &info);
  if (info != 0) {
    throw SolveError("banded LU failed (LAPACK info " + std::to_string(info) + ")");
  }
}

void BandedLU::solve_in_place(std::span<double> rhs) const {
  if (rhs.size() != static_cast<std::size_t>(n_)) throw RangeError("right-hand side has wrong length");
  const int kl = 1;
  const int ku = 1;
  const int nrhs = 1;
  int info = 0;
  dgbtrs_("N", &n_, &kl, &ku, &nrhs, ab_.data(), &ldab_, ipiv_.data(), rhs.data(), &n_, &info);
  if (info != 0) throw SolveError("banded solve failed (LAPACK info " + std::to_string(info) + ")");
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

}  // namespace dunklfp::numeric
