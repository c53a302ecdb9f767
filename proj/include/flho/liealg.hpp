#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace flho::liealg {

/// Structure tensor of a bracket on an n-dimensional real vector space:
/// c(i,j,k) is the coefficient of e_k in [e_i, e_j]. Antisymmetry in (i,j)
/// is enforced at construction time; entries must be finite.
class StructureConstants {
public:
  explicit StructureConstants(std::size_t dim);

  std::size_t dim() const { return dim_; }

  double at(std::size_t i, std::size_t j, std::size_t k) const;

  /// Sets c(i,j,k) and the antisymmetric partner c(j,i,k) = -value.
  /// i == j requires value == 0; non-finite values are rejected.
  void set(std::size_t i, std::size_t j, std::size_t k, double value);

  /// Largest |c(i,j,k)|.
  double max_abs() const;

  /// Adjoint matrix of basis element a: (ad_a)(k,i) = c(a,i,k).
  Eigen::MatrixXd adjoint(std::size_t a) const;

private:
  std::size_t check(std::size_t i, std::size_t j, std::size_t k) const;

  std::size_t dim_;
  std::vector<double> c_;
};

enum class Verdict { semisimple, compound };

std::string to_string(Verdict v);

/// Stability diagnosis of a bracket: Jacobi residual, Killing form and its
/// numerical rank, and the semisimple/compound verdict (Cartan's criterion).
struct StabilityReport {
  double jacobi_defect = 0.0;
  Eigen::MatrixXd killing;
  double killing_det = 0.0;
  int killing_rank = 0;
  Verdict verdict = Verdict::compound;
  int radical_dim_estimate = 0;  // dim - killing_rank
};

/// Max-norm residual of the cyclic Jacobi sum
///   sum_a c(i,j,a)c(a,k,m) + c(j,k,a)c(a,i,m) + c(k,i,a)c(a,j,m)
/// over all (i,j,k,m). Zero means the bracket is a true Lie bracket.
double jacobi_defect(const StructureConstants& sc);

/// Scale-aware acceptance threshold for the Jacobi defect of an honest
/// bracket: factor * max(1, max|c|)^3 * dim.
double jacobi_tolerance(const StructureConstants& sc, double factor = 1e-10);

/// Killing matrix K(a,b) = sum_{i,j} c(a,i,j) c(b,j,i), symmetrized on
/// output. Throws numerical_error if the Jacobi defect exceeds the
/// jacobi_tolerance() threshold (the bracket is not a Lie bracket).
Eigen::MatrixXd killing_form(const StructureConstants& sc);

/// Rank is counted from singular values above rank_tol * sigma_max.
/// Verdict is semisimple iff the Killing form has full rank.
StabilityReport semisimplicity_report(const StructureConstants& sc, double rank_tol = 1e-10);

/// Three-dimensional bracket [q,p] = hbar i, [i,q] = hbar1 p, [p,i] = hbar2 q
/// in basis order (q, p, i). hbar1 = hbar2 = 0 gives the Heisenberg algebra;
/// hbar1, hbar2 > 0 gives an algebra isomorphic to so(3).
StructureConstants flex_heisenberg(double hbar, double hbar1, double hbar2);

/// Segal's sign pattern [p,x] = -hbar i, [i,p] = -hbar1 x, [x,i] = hbar2 p
/// in basis order (x, p, i). For positive constants the Killing form is
/// indefinite (the algebra is so(2,1)-like rather than so(3)-like).
StructureConstants segal_variant(double hbar, double hbar1, double hbar2);

struct ContractionPoint {
  double t = 0.0;
  double killing_det = 0.0;
  Verdict verdict = Verdict::compound;
};

/// Evaluates flex_heisenberg(hbar, t*hbar1, t*hbar2) along a decreasing
/// scale sequence; |killing_det| shrinks toward zero and the t = 0 endpoint
/// reports compound.
std::vector<ContractionPoint> contraction_trajectory(double hbar, double hbar1, double hbar2,
                                                     const std::vector<double>& scales);

/// Independent scale sequences for hbar1 and hbar2 (equal lengths required).
std::vector<ContractionPoint> contraction_trajectory(double hbar, double hbar1, double hbar2,
                                                     const std::vector<double>& scales1,
                                                     const std::vector<double>& scales2);

/// Default scale sequence {1, 10^-1, ..., 10^-(steps-2), 0} used by the CLI.
std::vector<double> default_contraction_scales(int steps);

}  // namespace flho::liealg
