#pragma once

#include <cstddef>
#include <vector>

namespace flho::tridiag {

/// Symmetric tridiagonal matrix: diag has n entries, offdiag has n-1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
};

/// All eigenvalues (ascending) by implicit-shift QL with Wilkinson shifts.
/// Deflation threshold 1e-14 * (|d_i| + |d_{i+1}|); throws numerical_error
/// after 50 sweeps without deflation on any eigenvalue.
std::vector<double> eig_all(const SymTridiag& t);

/// As eig_all but also accumulates eigenvectors (columns of an n x n
/// row-major matrix). O(n^3); intended for moderate n.
struct EigenSystem {
  std::vector<double> values;          // ascending
  std::vector<double> vectors;         // row-major n x n, column j <-> values[j]
  std::size_t n = 0;

  double vec(std::size_t i, std::size_t j) const { return vectors[i * n + j]; }
};

EigenSystem eig_all_vectors(const SymTridiag& t);

/// The `count` smallest eigenvalues (ascending) by Sturm-sequence bisection.
/// Bisection stops at relative interval width 1e-12 (with an absolute floor
/// tied to the Gershgorin radius). O(count * n * log(1/tol)); scales to
/// n ~ 10^6.
std::vector<double> eig_lowest(const SymTridiag& t, std::size_t count);

/// Eigenvectors for given eigenvalue approximations by inverse iteration on
/// a PLU factorization of (T - lambda I) with zero-pivot replacement.
/// Vectors whose eigenvalues fall within cluster_tol * gershgorin of each
/// other are orthogonalized against one another. Returns row-major
/// n x values.size(); each column has unit norm.
std::vector<double> eig_vectors_for(const SymTridiag& t, const std::vector<double>& values);

/// Number of eigenvalues strictly below x (Sturm count).
std::size_t count_below(const SymTridiag& t, double x);

/// Gershgorin enclosure [lo, hi] of the spectrum.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

Interval gershgorin(const SymTridiag& t);

}  // namespace flho::tridiag
