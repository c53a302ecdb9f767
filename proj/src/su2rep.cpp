#include "flho/su2rep.hpp"

#include <cmath>
#include <stdexcept>

#include "flho/errors.hpp"

namespace flho::su2rep {

namespace {

constexpr std::int64_t kMaxL = max_exact_l;

Eigen::MatrixXd zero_dense(std::size_t n) {
  return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

void require_dense(std::size_t n) {
  if (n > 4096)
    throw std::invalid_argument("dense generator materialization limited to N <= 4096");
}

}  // namespace

Eigen::MatrixXd RepData::dense_s() const {
  require_dense(n);
  Eigen::MatrixXd m = zero_dense(n);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + 1)) = offdiag[r];
    m(static_cast<Eigen::Index>(r + 1), static_cast<Eigen::Index>(r)) = offdiag[r];
  }
  return m;
}

Eigen::MatrixXd RepData::dense_a() const {
  require_dense(n);
  Eigen::MatrixXd m = zero_dense(n);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + 1)) = offdiag[r];
    m(static_cast<Eigen::Index>(r + 1), static_cast<Eigen::Index>(r)) = -offdiag[r];
  }
  return m;
}

Eigen::MatrixXd RepData::dense_d() const {
  require_dense(n);
  Eigen::MatrixXd m = zero_dense(n);
  for (std::size_t r = 0; r < n; ++r)
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = dz[r];
  return m;
}

RepData build_generators(std::int64_t l) {
  if (l < 1) throw std::invalid_argument("build_generators: l must be a positive integer");
  if (l > kMaxL)
    throw std::invalid_argument("build_generators: l(l+1) exceeds exact double range");
  RepData rep;
  rep.l = l;
  rep.n = static_cast<std::size_t>(2 * l + 1);
  const double cas = static_cast<double>(l) * static_cast<double>(l + 1);
  rep.offdiag.resize(rep.n - 1);
  rep.dz.resize(rep.n);
  for (std::size_t r = 0; r < rep.n; ++r) rep.dz[r] = static_cast<double>(l - static_cast<std::int64_t>(r));
  for (std::size_t r = 0; r + 1 < rep.n; ++r) {
    const double m = rep.dz[r];
    rep.offdiag[r] = 0.5 * std::sqrt(cas - m * (m - 1.0));
  }
  return rep;
}

GeneratorResiduals commutator_residuals(const RepData& rep) {
  GeneratorResiduals res;
  const std::size_t n = rep.n;
  const double cas = static_cast<double>(rep.l) * static_cast<double>(rep.l + 1);
  // [S, A] is diagonal with entries 2(o_{r-1}^2 - o_r^2); target is -D.
  // [A, D] and [D, S] live on the first off-diagonals; targets -S and +A.
  // S^2 - A^2 + D^2 is diagonal (the off-band products cancel exactly).
  for (std::size_t r = 0; r < n; ++r) {
    const double prev = r > 0 ? rep.offdiag[r - 1] : 0.0;
    const double next = r + 1 < n ? rep.offdiag[r] : 0.0;
    const double comm = 2.0 * (prev * prev - next * next);
    res.comm_sa = std::max(res.comm_sa, std::abs(comm + rep.dz[r]));
    const double casimir = 2.0 * (prev * prev + next * next) + rep.dz[r] * rep.dz[r];
    res.casimir = std::max(res.casimir, std::abs(casimir - cas));
  }
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const double o = rep.offdiag[r];
    const double step = rep.dz[r + 1] - rep.dz[r];  // -1 on an honest chain
    res.comm_ad = std::max(res.comm_ad, std::abs(o * step + o));
    res.comm_ds = std::max(res.comm_ds, std::abs(o * (-step) - o));
  }
  return res;
}

OscillatorConstants make_constants(double hbar, double hbar1, double hbar2, double mass,
                                   double k) {
  if (!(hbar > 0.0) || !(hbar1 > 0.0) || !(hbar2 > 0.0) || !(mass > 0.0) || !(k > 0.0))
    throw std::invalid_argument("make_constants: all inputs must be positive");
  const double j_raw = std::sqrt(hbar1 * hbar2);
  const double l_raw = 1.0 / j_raw;
  // Range check on the double BEFORE llround; the quotient can overflow int64.
  if (!(l_raw < static_cast<double>(kMaxL) + 0.5))
    throw std::invalid_argument("make_constants: derived l exceeds exact range");
  const std::int64_t l = std::llround(l_raw);
  if (l < 1)
    throw std::invalid_argument("make_constants: sqrt(hbar1*hbar2) >= 1 leaves no room for l >= 1");
  // Uniform rescale of hbar1, hbar2 pins sqrt(hbar1*hbar2) = 1/l exactly
  // while preserving their ratio.
  const double s = (1.0 / static_cast<double>(l)) / j_raw;
  OscillatorConstants oc;
  oc.hbar = hbar;
  oc.hbar1 = hbar1 * s;
  oc.hbar2 = hbar2 * s;
  oc.mass = mass;
  oc.k = k;
  oc.l = l;
  oc.rescale = s;
  oc.j_quantum = 1.0 / static_cast<double>(l);
  oc.rescale_warning = std::abs(s - 1.0) > 1e-6;
  oc.q_quantum = std::sqrt(oc.hbar * oc.hbar1);
  oc.p_quantum = std::sqrt(oc.hbar * oc.hbar2);
  oc.big_k = oc.p_quantum * oc.p_quantum / mass;
  oc.kappa = std::sqrt(oc.hbar1 * mass * k / oc.hbar2);
  oc.omega = std::sqrt(k / mass);
  return oc;
}

OscillatorConstants constants_from_spectral(double big_k, double kappa, std::int64_t l) {
  if (!(big_k > 0.0)) throw std::invalid_argument("constants_from_spectral: K must be positive");
  if (!(kappa >= 0.0)) throw std::invalid_argument("constants_from_spectral: kappa must be >= 0");
  if (l < 1 || l > kMaxL) throw std::invalid_argument("constants_from_spectral: l out of range");
  // Gauge hbar = 1, mass = 1: K = hbar2, hbar1 = 1/(K l^2), k = (kappa K l)^2.
  OscillatorConstants oc;
  oc.hbar = 1.0;
  oc.mass = 1.0;
  oc.l = l;
  oc.j_quantum = 1.0 / static_cast<double>(l);
  oc.hbar2 = big_k;
  oc.hbar1 = oc.j_quantum * oc.j_quantum / big_k;
  const double homega = kappa * big_k * static_cast<double>(l);  // hbar*omega identity
  oc.k = homega * homega;
  oc.omega = homega;
  oc.big_k = big_k;
  oc.kappa = kappa;
  oc.q_quantum = std::sqrt(oc.hbar * oc.hbar1);
  oc.p_quantum = std::sqrt(oc.hbar * oc.hbar2);
  oc.rescale = 1.0;
  return oc;
}

ScaledOperators scaled_operators(const RepData& rep, const OscillatorConstants& oc) {
  if (rep.l != oc.l) throw std::invalid_argument("scaled_operators: representation/constants l mismatch");
  return {oc.p_quantum, oc.q_quantum, oc.j_quantum};
}

ExchangeResiduals exchange_residuals(const RepData& rep, const OscillatorConstants& oc) {
  if (rep.l != oc.l)
    throw std::invalid_argument("exchange_residuals: representation/constants l mismatch");
  const double qq = oc.q_quantum, pp = oc.p_quantum, jj = oc.j_quantum;
  const double hb = oc.hbar, h1 = oc.hbar1, h2 = oc.hbar2;
  ExchangeResiduals res;
  const std::size_t n = rep.n;
  // [p, q] = hbar ihat: QP [S, A] = -QP D must equal -hbar J D.
  for (std::size_t r = 0; r < n; ++r) {
    const double prev = r > 0 ? rep.offdiag[r - 1] : 0.0;
    const double next = r + 1 < n ? rep.offdiag[r] : 0.0;
    const double comm = 2.0 * (prev * prev - next * next);
    res.pq = std::max(res.pq, std::abs(qq * pp * comm + hb * jj * rep.dz[r]));
  }
  // [q, ihat] = hbar1 p: QJ [A, D] = -QJ S must equal -hbar1 P S.
  // [ihat, p] = hbar2 q: JP [D, S] = JP A must equal hbar2 Q A.
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const double o = rep.offdiag[r];
    const double step = rep.dz[r + 1] - rep.dz[r];
    res.qi = std::max(res.qi, std::abs(qq * jj * o * step + h1 * pp * o));
    res.ip = std::max(res.ip, std::abs(jj * pp * o * (-step) - h2 * qq * o));
  }
  return res;
}

}  // namespace flho::su2rep
