#include "flho/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "flho/errors.hpp"

namespace flho::analysis {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::soft: return "soft";
    case Regime::hard: return "hard";
    default: return "medium";
  }
}

std::string to_string(FrozenAxis a) {
  switch (a) {
    case FrozenAxis::momentum: return "momentum";
    case FrozenAxis::position: return "position";
    default: return "none";
  }
}

RegimeDiagnostics classify_regime(std::int64_t l, double kappa, RegimeThresholds th) {
  if (l < 1) throw std::invalid_argument("classify_regime: l must be positive");
  if (!(kappa >= 0.0)) throw std::invalid_argument("classify_regime: kappa must be >= 0");
  RegimeDiagnostics d;
  d.kappa = kappa;
  d.soft_threshold = th.soft >= 0.0 ? th.soft : 1.0 / std::sqrt(static_cast<double>(l));
  d.hard_threshold = th.hard >= 0.0 ? th.hard : std::sqrt(static_cast<double>(l));
  if (kappa <= d.soft_threshold) {
    d.regime = Regime::soft;
    d.frozen_axis = FrozenAxis::momentum;
  } else if (kappa >= d.hard_threshold) {
    d.regime = Regime::hard;
    d.frozen_axis = FrozenAxis::position;
  } else {
    d.regime = Regime::medium;
    d.frozen_axis = FrozenAxis::none;
  }
  return d;
}

RegimeDiagnostics classify_regime(const su2rep::OscillatorConstants& oc, RegimeThresholds th) {
  return classify_regime(oc.l, oc.kappa, th);
}

double medium_level(std::int64_t l, double big_k, std::int64_t n) {
  if (n < 0 || n > 2 * l) throw std::invalid_argument("medium_level: n out of [0, 2l]");
  const double cas = static_cast<double>(l) * static_cast<double>(l + 1);
  const double d = static_cast<double>(n - l);
  return 0.5 * big_k * (cas - d * d);
}

std::vector<double> medium_closed_form(std::int64_t l, double big_k, std::int64_t n_max) {
  if (n_max < 0 || n_max > 2 * l)
    throw std::invalid_argument("medium_closed_form: n_max out of [0, 2l]");
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) e.push_back(medium_level(l, big_k, n));
  return e;
}

double medium_ground(std::int64_t l, double big_k) { return 0.5 * big_k * static_cast<double>(l); }

double medium_max(std::int64_t l, double big_k) {
  return 0.5 * big_k * static_cast<double>(l) * static_cast<double>(l + 1);
}

PerturbativeSpectrum soft_perturbative(std::int64_t l, double big_k, double kappa,
                                       std::int64_t m_lo, std::int64_t m_hi) {
  if (l < 1) throw std::invalid_argument("soft_perturbative: l must be positive");
  if (m_lo > m_hi || m_lo < -l || m_hi > l)
    throw std::invalid_argument("soft_perturbative: m range out of [-l, l]");
  PerturbativeSpectrum out;
  out.out_of_regime = kappa > 1.0;
  const double cas = static_cast<double>(l) * static_cast<double>(l + 1);
  const double k2 = kappa * kappa;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    const double md = static_cast<double>(m);
    out.m.push_back(m);
    out.energy.push_back(0.5 * big_k * md * md + 0.25 * big_k * k2 * (cas - md * md));
  }
  out.e0 = 0.25 * big_k * k2 * cas;
  const double ld = static_cast<double>(l);
  out.e_max = 0.5 * big_k * ld * ld * (1.0 + k2 / (2.0 * ld));
  return out;
}

PerturbativeSpectrum hard_perturbative(std::int64_t l, double big_k, double kappa,
                                       std::int64_t m_lo, std::int64_t m_hi) {
  if (!(kappa > 0.0)) throw std::invalid_argument("hard_perturbative: kappa must be positive");
  PerturbativeSpectrum out =
      soft_perturbative(l, big_k * kappa * kappa, 1.0 / kappa, m_lo, m_hi);
  out.out_of_regime = kappa < 1.0;
  return out;
}

double regime_ground_estimate(std::int64_t l, double big_k, double kappa) {
  const RegimeDiagnostics d = classify_regime(l, kappa);
  switch (d.regime) {
    case Regime::soft: return soft_perturbative(l, big_k, kappa, 0, 0).e0;
    case Regime::hard: return hard_perturbative(l, big_k, kappa, 0, 0).e0;
    default: return medium_ground(l, big_k);
  }
}

double variational_bound(std::int64_t l, double big_k, double kappa) {
  const oscillator::BandedHamiltonian h = oscillator::build_hamiltonian(l, big_k, kappa);
  std::vector<double> trial(h.n, 0.0);
  trial[0] = 1.0;  // |m = l>
  const std::vector<double> ht = oscillator::apply(h, trial);
  const double numeric = ht[0];
  const double closed = 0.25 * big_k * (1.0 + kappa * kappa) * static_cast<double>(l);
  if (std::abs(numeric - closed) > 1e-12 * std::max(1.0, std::abs(closed)))
    throw numerical_error("variational_bound: banded evaluation departs from closed form");
  return numeric;
}

std::vector<LimitDeviation> qho_limit_deviation(std::int64_t l, double big_k, std::int64_t n_max) {
  if (n_max < 0 || static_cast<double>(n_max) > std::sqrt(static_cast<double>(l)))
    throw std::invalid_argument("qho_limit_deviation: need n_max <= sqrt(l)");
  const oscillator::BandedHamiltonian h = oscillator::build_hamiltonian(l, big_k, 1.0);
  oscillator::SpectrumOptions opt;
  opt.lowest = static_cast<std::size_t>(2 * n_max + 2);  // doublets cover levels 0..n_max
  const oscillator::SpectrumResult s = oscillator::spectrum(h, opt);
  const double homega = big_k * static_cast<double>(l);  // K l kappa at kappa = 1
  std::vector<LimitDeviation> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    LimitDeviation row;
    row.n = n;
    row.energy = s.energies[static_cast<std::size_t>(2 * n)];
    const double ladder = homega * (static_cast<double>(n) + 0.5);
    row.numerical = std::abs(row.energy - ladder) / ladder;
    const double nd = static_cast<double>(n);
    row.analytic = (nd * nd / (2.0 * static_cast<double>(l))) / (nd + 0.5);
    rows.push_back(row);
  }
  return rows;
}

UncertaintyReport uncertainty_product(const su2rep::RepData& rep,
                                      const su2rep::OscillatorConstants& oc,
                                      const std::vector<double>& state, std::string state_id) {
  if (rep.l != oc.l)
    throw std::invalid_argument("uncertainty_product: representation/constants l mismatch");
  if (state.size() != rep.n)
    throw std::invalid_argument("uncertainty_product: state length mismatch");
  double nrm2 = 0.0;
  for (double v : state) nrm2 += v * v;
  if (std::abs(nrm2 - 1.0) > 1e-10)
    throw std::invalid_argument("uncertainty_product: state must be normalized");

  const std::size_t n = rep.n;
  // sv = S state, av = A state, both O(N) band products.
  std::vector<double> sv(n, 0.0), av(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double s_acc = 0.0, a_acc = 0.0;
    if (r > 0) {
      s_acc += rep.offdiag[r - 1] * state[r - 1];
      a_acc -= rep.offdiag[r - 1] * state[r - 1];
    }
    if (r + 1 < n) {
      s_acc += rep.offdiag[r] * state[r + 1];
      a_acc += rep.offdiag[r] * state[r + 1];
    }
    sv[r] = s_acc;
    av[r] = a_acc;
  }
  double mean_s = 0.0, var_s = 0.0, var_a = 0.0, mean_d = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    mean_s += state[r] * sv[r];
    var_s += sv[r] * sv[r];
    var_a += av[r] * av[r];  // <Ly^2> = ||A state||^2; <Ly> = 0 on real states
    mean_d += state[r] * state[r] * rep.dz[r];
  }
  var_s -= mean_s * mean_s;

  UncertaintyReport rep_out;
  rep_out.state_id = std::move(state_id);
  rep_out.dp = oc.p_quantum * std::sqrt(std::max(0.0, var_s));
  rep_out.dq = oc.q_quantum * std::sqrt(std::max(0.0, var_a));
  rep_out.product = rep_out.dp * rep_out.dq;
  rep_out.robertson_raw = 0.5 * std::abs(mean_d);
  rep_out.robertson_bound = 0.5 * oc.hbar * oc.j_quantum * std::abs(mean_d);
  rep_out.hbar_half_ratio = rep_out.product / (0.5 * oc.hbar);
  return rep_out;
}

double equipartition_ratio(const su2rep::RepData& rep, double big_k, double kappa,
                           const std::vector<double>& state) {
  if (state.size() != rep.n) throw std::invalid_argument("equipartition_ratio: state length mismatch");
  if (!(big_k > 0.0)) throw std::invalid_argument("equipartition_ratio: K must be positive");
  const std::size_t n = rep.n;
  double kin = 0.0, pot = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double s_acc = 0.0, a_acc = 0.0;
    if (r > 0) {
      s_acc += rep.offdiag[r - 1] * state[r - 1];
      a_acc -= rep.offdiag[r - 1] * state[r - 1];
    }
    if (r + 1 < n) {
      s_acc += rep.offdiag[r] * state[r + 1];
      a_acc += rep.offdiag[r] * state[r + 1];
    }
    kin += s_acc * s_acc;
    pot += a_acc * a_acc;
  }
  kin *= 0.5 * big_k;
  pot *= 0.5 * big_k * kappa * kappa;
  if (pot == 0.0) return std::numeric_limits<double>::infinity();
  return kin / pot;
}

double excitation_interaction(const std::vector<double>& levels, std::size_t n1, std::size_t n2) {
  const std::size_t top = n1 + n2;
  if (top >= levels.size())
    throw std::invalid_argument("excitation_interaction: n1 + n2 beyond available levels");
  return (levels[top] - levels[0]) - (levels[n1] - levels[0]) - (levels[n2] - levels[0]);
}

std::vector<double> group_levels(const oscillator::SpectrumResult& s) {
  std::vector<double> levels;
  levels.reserve(s.groups.size());
  for (const auto& g : s.groups) levels.push_back(g.value);
  return levels;
}

ZeroPointRow zero_point_at(std::int64_t l, double big_k, double kappa) {
  ZeroPointRow row;
  row.kappa = kappa;
  const oscillator::BandedHamiltonian h = oscillator::build_hamiltonian(l, big_k, kappa);
  oscillator::SpectrumOptions opt;
  opt.lowest = 1;
  row.e0_numerical = oscillator::spectrum(h, opt).energies.front();
  row.regime = classify_regime(l, kappa).regime;
  row.e0_formula = regime_ground_estimate(l, big_k, kappa);
  row.half_hbar_omega = 0.5 * big_k * static_cast<double>(l) * kappa;
  row.ratio = row.half_hbar_omega > 0.0
                  ? row.e0_numerical / row.half_hbar_omega
                  : std::numeric_limits<double>::infinity();
  return row;
}

std::vector<ZeroPointRow> zero_point_sweep(std::int64_t l, double big_k,
                                           const std::vector<double>& kappa_grid,
                                           unsigned threads) {
  if (kappa_grid.empty()) throw std::invalid_argument("zero_point_sweep: empty grid");
  std::vector<ZeroPointRow> rows(kappa_grid.size());
  const unsigned nthreads =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(kappa_grid.size())));
  if (nthreads == 1) {
    for (std::size_t i = 0; i < kappa_grid.size(); ++i)
      rows[i] = zero_point_at(l, big_k, kappa_grid[i]);
    return rows;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned w = 0; w < nthreads; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < kappa_grid.size(); i += nthreads)
        rows[i] = zero_point_at(l, big_k, kappa_grid[i]);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace flho::analysis
