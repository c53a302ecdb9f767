#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace flho::su2rep {

/// Largest l with l(l+1) exactly representable in a double (l(l+1) < 2^53).
inline constexpr std::int64_t max_exact_l = 94906265;

/// Banded storage of the spin-l angular momentum triple in the real split
/// form over the Lz eigenbasis ordered m = l, l-1, ..., -l:
///   S  (= Lx)   symmetric,      S(r, r+1) = S(r+1, r) = offdiag[r]
///   A  (= iLy)  antisymmetric,  A(r, r+1) = +offdiag[r], A(r+1, r) = -offdiag[r]
///   D  (= Lz)   diagonal,       D(r, r)   = dz[r]
/// where offdiag[r] = (1/2) sqrt(l(l+1) - m(m-1)) at m = l - r.
struct RepData {
  std::int64_t l = 0;
  std::size_t n = 0;  // 2l + 1
  std::vector<double> offdiag;
  std::vector<double> dz;

  Eigen::MatrixXd dense_s() const;
  Eigen::MatrixXd dense_a() const;
  Eigen::MatrixXd dense_d() const;
};

/// Builds the banded generators for integer l >= 1. Rejects l large enough
/// that l(l+1) is not exactly representable in a double (l > 94906265).
RepData build_generators(std::int64_t l);

/// Max-norm residuals of the defining relations in banded arithmetic:
///   [S, A] + D, [A, D] + S, [D, S] - A,
/// plus the Casimir residual max|diag(S^2 - A^2 + D^2) - l(l+1)|.
struct GeneratorResiduals {
  double comm_sa = 0.0;
  double comm_ad = 0.0;
  double comm_ds = 0.0;
  double casimir = 0.0;
};

GeneratorResiduals commutator_residuals(const RepData& rep);

/// Dimensionful scales of the regularized pair: position quantum Q,
/// momentum quantum P, regulator quantum J = 1/l, plus the derived
/// oscillator scales K = P^2/mass and kappa^2 = hbar1*mass*k/hbar2.
struct OscillatorConstants {
  double hbar = 0.0;
  double hbar1 = 0.0;
  double hbar2 = 0.0;
  double mass = 0.0;
  double k = 0.0;
  std::int64_t l = 0;
  double q_quantum = 0.0;  // sqrt(hbar * hbar1)
  double p_quantum = 0.0;  // sqrt(hbar * hbar2)
  double j_quantum = 0.0;  // 1/l after rounding
  double big_k = 0.0;      // p_quantum^2 / mass
  double kappa = 0.0;      // sqrt(hbar1 * mass * k / hbar2)
  double omega = 0.0;      // sqrt(k / mass)
  double rescale = 1.0;    // applied to hbar1 and hbar2 to make l integral
  bool rescale_warning = false;  // |rescale - 1| > 1e-6, requested l was not representable
};

/// Derives l = round(1/sqrt(hbar1*hbar2)) and rescales hbar1, hbar2 by a
/// common factor so that sqrt(hbar1*hbar2) = 1/l holds exactly (their ratio
/// is preserved). Inputs must be positive and give l >= 1.
OscillatorConstants make_constants(double hbar, double hbar1, double hbar2, double mass, double k);

/// Inverse route in the gauge hbar = 1, mass = 1: recovers (hbar1, hbar2, k)
/// from the spectral scales (big_k, kappa, l).
OscillatorConstants constants_from_spectral(double big_k, double kappa, std::int64_t l);

/// Scale factors that dress the dimensionless generators into physical
/// operators: p = p_quantum * S, q = q_quantum * A / i, i-hat = j_quantum * D.
/// The representation and the constants must agree on l.
struct ScaledOperators {
  double p_scale = 0.0;
  double q_scale = 0.0;
  double j_scale = 0.0;
};

ScaledOperators scaled_operators(const RepData& rep, const OscillatorConstants& oc);

/// Max-norm residuals of the dimensionful exchange relations
///   [p, q] = hbar * ihat, [q, ihat] = hbar1 * p, [ihat, p] = hbar2 * q
/// evaluated bandwise on the scaled generators.
struct ExchangeResiduals {
  double pq = 0.0;
  double qi = 0.0;
  double ip = 0.0;
};

ExchangeResiduals exchange_residuals(const RepData& rep, const OscillatorConstants& oc);

}  // namespace flho::su2rep
