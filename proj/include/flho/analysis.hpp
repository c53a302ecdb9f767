#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flho/oscillator.hpp"
#include "flho/su2rep.hpp"

namespace flho::analysis {

// ---------------------------------------------------------------- regimes

enum class Regime { soft, medium, hard };
enum class FrozenAxis { none, momentum, position };

std::string to_string(Regime r);
std::string to_string(FrozenAxis a);

/// Negative entries select the defaults soft = l^(-1/2), hard = l^(+1/2).
struct RegimeThresholds {
  double soft = -1.0;
  double hard = -1.0;
};

struct RegimeDiagnostics {
  double kappa = 0.0;
  Regime regime = Regime::medium;
  FrozenAxis frozen_axis = FrozenAxis::none;
  double soft_threshold = 0.0;
  double hard_threshold = 0.0;
};

/// soft iff kappa <= soft threshold (momentum frozen), hard iff kappa >=
/// hard threshold (position frozen), medium between.
RegimeDiagnostics classify_regime(std::int64_t l, double kappa, RegimeThresholds th = {});
RegimeDiagnostics classify_regime(const su2rep::OscillatorConstants& oc, RegimeThresholds th = {});

// ------------------------------------------------- closed forms at kappa=1

/// E_n = (K/2)(l(l+1) - (n-l)^2) for n = 0..n_max; requires 0 <= n_max <= 2l.
std::vector<double> medium_closed_form(std::int64_t l, double big_k, std::int64_t n_max);
double medium_level(std::int64_t l, double big_k, std::int64_t n);
double medium_ground(std::int64_t l, double big_k);  // K l / 2
double medium_max(std::int64_t l, double big_k);     // (K/2) l(l+1)

// -------------------------------------------------- perturbative estimates

/// First-order level estimates labeled by the eigenvalue m of the dominant
/// axis. out_of_regime flags a call outside the regime the expansion
/// assumes (soft wants kappa <= 1, hard wants kappa >= 1).
struct PerturbativeSpectrum {
  std::vector<std::int64_t> m;
  std::vector<double> energy;
  double e0 = 0.0;
  double e_max = 0.0;
  bool out_of_regime = false;
};

/// Soft expansion around the kinetic term:
///   E_m = (K/2)m^2 + (K/4)kappa^2 (l(l+1) - m^2),
///   e0 = (K/4)kappa^2 l(l+1), e_max = (K/2)l^2 (1 + kappa^2/(2l)).
PerturbativeSpectrum soft_perturbative(std::int64_t l, double big_k, double kappa,
                                       std::int64_t m_lo, std::int64_t m_hi);

/// Hard expansion via the substitution kappa -> 1/kappa, K -> K kappa^2;
/// in particular e0 = (K/4) l(l+1) at leading order.
PerturbativeSpectrum hard_perturbative(std::int64_t l, double big_k, double kappa,
                                       std::int64_t m_lo, std::int64_t m_hi);

/// Ground estimate of the regime the given kappa falls in (medium uses the
/// exact K l / 2).
double regime_ground_estimate(std::int64_t l, double big_k, double kappa);

// -------------------------------------------------------- bounds and limits

/// <m=l| H |m=l> = (K/4)(1 + kappa^2) l, an upper bound on the ground
/// energy. Evaluated by applying the banded H to the basis vector; throws
/// numerical_error if the result departs from the closed form by more than
/// 1e-12 relative.
double variational_bound(std::int64_t l, double big_k, double kappa);

/// Relative deviation of level n from the equal-spacing ladder
/// hbar*omega*(n + 1/2) with hbar*omega = K*l at kappa = 1:
///   analytic = (n^2 / 2l) / (n + 1/2), numerical from the computed
/// spectrum. Requires n_max <= sqrt(l).
struct LimitDeviation {
  std::int64_t n = 0;
  double energy = 0.0;
  double numerical = 0.0;
  double analytic = 0.0;
};

std::vector<LimitDeviation> qho_limit_deviation(std::int64_t l, double big_k, std::int64_t n_max);

// ------------------------------------------------------------- uncertainty

/// Variances on a normalized real state v with the real split operators:
/// <Ly> = 0 identically, Var(q)/Q^2 = v^T A^T A v, Var(p)/P^2 =
/// v^T S^2 v - (v^T S v)^2. robertson_bound = (1/2) hbar J |<Lz>| is the
/// state-dependent lower bound on the product; the fixed hbar/2 bound is
/// reported as a ratio and may legitimately fall below 1.
struct UncertaintyReport {
  std::string state_id;
  double dq = 0.0;
  double dp = 0.0;
  double product = 0.0;
  double robertson_raw = 0.0;    // (1/2) |<Lz>|, dimensionless
  double robertson_bound = 0.0;  // (1/2) hbar J |<Lz>|
  double hbar_half_ratio = 0.0;  // product / (hbar/2)
};

UncertaintyReport uncertainty_product(const su2rep::RepData& rep,
                                      const su2rep::OscillatorConstants& oc,
                                      const std::vector<double>& state,
                                      std::string state_id = "");

/// <(K/2)Lx^2> / <(K kappa^2/2)Ly^2> on a normalized state; +infinity when
/// the potential expectation vanishes (kappa = 0 or an Ly null state).
double equipartition_ratio(const su2rep::RepData& rep, double big_k, double kappa,
                           const std::vector<double>& state);

// -------------------------------------------------------------- interaction

/// Pair interaction energy from a ladder of level energies:
///   delta(n1, n2) = (E_{n1+n2} - E_0) - (E_{n1} - E_0) - (E_{n2} - E_0).
/// Negative means combining quanta is cheaper than separate ones.
double excitation_interaction(const std::vector<double>& levels, std::size_t n1, std::size_t n2);

/// Level ladder read off a computed spectrum: the n-th level is the lowest
/// member of the n-th degeneracy group.
std::vector<double> group_levels(const oscillator::SpectrumResult& s);

// -------------------------------------------------------------- sweeps

struct ZeroPointRow {
  double kappa = 0.0;
  double e0_numerical = 0.0;
  double e0_formula = 0.0;       // regime-selected estimate
  Regime regime = Regime::medium;
  double half_hbar_omega = 0.0;  // K l kappa / 2
  double ratio = 0.0;            // e0_numerical / half_hbar_omega
};

ZeroPointRow zero_point_at(std::int64_t l, double big_k, double kappa);
std::vector<ZeroPointRow> zero_point_sweep(std::int64_t l, double big_k,
                                           const std::vector<double>& kappa_grid,
                                           unsigned threads = 1);

}  // namespace flho::analysis
