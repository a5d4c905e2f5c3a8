#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dunklfp::numeric {

/// Tridiagonal matrix: lower[i] = A(i+1, i), upper[i] = A(i, i+1).
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  explicit Tridiagonal(std::size_t n = 0) : lower(n ? n - 1 : 0), diag(n), upper(n ? n - 1 : 0) {}

  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
  // alpha I + beta A
  Tridiagonal affine(double alpha, double beta) const;
};

/// LU factorization of a tridiagonal matrix through LAPACK dgbtrf/dgbtrs.
/// Throws SolveError when the matrix is singular.
class BandedLU {
 public:
  explicit BandedLU(const Tridiagonal& a);

  std::size_t size() const { return n_; }
  void solve_in_place(std::span<double> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  int n_;
  int ldab_;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
};

}  // namespace dunklfp::numeric
