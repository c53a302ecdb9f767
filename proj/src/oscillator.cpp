#include "flho/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "flho/errors.hpp"

namespace flho::oscillator {

Eigen::MatrixXd BandedHamiltonian::dense(std::size_t max_n) const {
  if (n > max_n) throw std::invalid_argument("BandedHamiltonian: dense form limited to small N");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r)
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = diag[r];
  for (std::size_t r = 0; r + 2 < n; ++r) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + 2)) = off2[r];
    m(static_cast<Eigen::Index>(r + 2), static_cast<Eigen::Index>(r)) = off2[r];
  }
  return m;
}

BandedHamiltonian build_hamiltonian(std::int64_t l, double big_k, double kappa) {
  if (!(big_k > 0.0)) throw std::invalid_argument("build_hamiltonian: K must be positive");
  if (!(kappa >= 0.0)) throw std::invalid_argument("build_hamiltonian: kappa must be >= 0");
  if (l < 1 || l > su2rep::max_exact_l)
    throw std::invalid_argument("build_hamiltonian: l out of range");
  BandedHamiltonian h;
  h.l = l;
  h.n = static_cast<std::size_t>(2 * l + 1);
  h.big_k = big_k;
  h.kappa = kappa;
  const double cas = static_cast<double>(l) * static_cast<double>(l + 1);
  const double dcoef = 0.25 * big_k * (1.0 + kappa * kappa);
  const double ocoef = 0.125 * big_k * (1.0 - kappa * kappa);
  h.diag.resize(h.n);
  h.off2.resize(h.n - 2);
  for (std::size_t r = 0; r < h.n; ++r) {
    const double m = static_cast<double>(l - static_cast<std::int64_t>(r));
    h.diag[r] = dcoef * (cas - m * m);
  }
  for (std::size_t r = 0; r + 2 < h.n; ++r) {
    const double m = static_cast<double>(l - static_cast<std::int64_t>(r));
    h.off2[r] = ocoef * std::sqrt((cas - m * (m - 1.0)) * (cas - (m - 1.0) * (m - 2.0)));
  }
  return h;
}

BandedHamiltonian build_hamiltonian(const su2rep::RepData& rep, double big_k, double kappa) {
  return build_hamiltonian(rep.l, big_k, kappa);
}

void apply(const BandedHamiltonian& h, const double* x, double* y) {
  const std::size_t n = h.n;
  for (std::size_t r = 0; r < n; ++r) {
    double acc = h.diag[r] * x[r];
    if (r >= 2) acc += h.off2[r - 2] * x[r - 2];
    if (r + 2 < n) acc += h.off2[r] * x[r + 2];
    y[r] = acc;
  }
}

std::vector<double> apply(const BandedHamiltonian& h, const std::vector<double>& x) {
  if (x.size() != h.n) throw std::invalid_argument("apply: state length mismatch");
  std::vector<double> y(h.n);
  apply(h, x.data(), y.data());
  return y;
}

double norm_bound(const BandedHamiltonian& h) {
  double bound = 0.0;
  for (std::size_t r = 0; r < h.n; ++r) {
    double row = std::abs(h.diag[r]);
    if (r >= 2) row += std::abs(h.off2[r - 2]);
    if (r + 2 < h.n) row += std::abs(h.off2[r]);
    bound = std::max(bound, row);
  }
  return bound;
}

ParityBlocks parity_blocks(const BandedHamiltonian& h) {
  ParityBlocks pb;
  // Rows with even m = l - r form one chain, odd m the other; off2[r]
  // couples r and r+2, which are consecutive within a chain.
  const std::size_t even_start = (h.l % 2 == 0) ? 0 : 1;
  const std::size_t odd_start = 1 - even_start;
  for (std::size_t r = even_start; r < h.n; r += 2) pb.even_rows.push_back(r);
  for (std::size_t r = odd_start; r < h.n; r += 2) pb.odd_rows.push_back(r);
  auto fill = [&](const std::vector<std::size_t>& rows, tridiag::SymTridiag& t) {
    t.diag.reserve(rows.size());
    for (std::size_t r : rows) t.diag.push_back(h.diag[r]);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) t.offdiag.push_back(h.off2[rows[i]]);
  };
  fill(pb.even_rows, pb.even);
  fill(pb.odd_rows, pb.odd);
  return pb;
}

SpectrumResult spectrum(const BandedHamiltonian& h, const SpectrumOptions& opt) {
  const ParityBlocks pb = parity_blocks(h);
  const tridiag::SymTridiag* blocks[2] = {&pb.even, &pb.odd};
  const std::vector<std::size_t>* rows[2] = {&pb.even_rows, &pb.odd_rows};

  // (energy, parity, index within block's ascending list)
  std::vector<std::tuple<double, int, std::size_t>> merged;
  merged.reserve(h.n);
  for (int b = 0; b < 2; ++b) {
    const std::size_t sz = blocks[b]->size();
    std::vector<double> vals;
    if (opt.lowest == 0 || opt.lowest >= h.n) {
      vals = tridiag::eig_all(*blocks[b]);
    } else {
      vals = tridiag::eig_lowest(*blocks[b], std::min(opt.lowest, sz));
    }
    for (std::size_t i = 0; i < vals.size(); ++i) merged.emplace_back(vals[i], b, i);
  }
  std::sort(merged.begin(), merged.end());
  if (opt.lowest > 0 && merged.size() > opt.lowest) merged.resize(opt.lowest);

  SpectrumResult out;
  out.n = h.n;
  const double cas = static_cast<double>(h.l) * static_cast<double>(h.l + 1);
  out.group_tol_used = opt.group_tol >= 0.0 ? opt.group_tol : 1e-9 * h.big_k * cas;
  out.energies.reserve(merged.size());
  out.parities.reserve(merged.size());
  out.group_index.reserve(merged.size());
  for (const auto& [e, b, i] : merged) {
    if (!out.energies.empty() && e - out.energies.back() <= out.group_tol_used) {
      ++out.groups.back().multiplicity;
    } else {
      out.groups.push_back({e, 1});
    }
    out.group_index.push_back(out.groups.size() - 1);
    out.energies.push_back(e);
    out.parities.push_back(b);
  }

  const std::size_t want = std::min(opt.vectors, merged.size());
  if (want > 0) {
    out.vector_count = want;
    out.vectors.assign(out.n * want, 0.0);
    for (int b = 0; b < 2; ++b) {
      std::vector<double> vals;
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < want; ++j) {
        if (std::get<1>(merged[j]) == b) {
          vals.push_back(std::get<0>(merged[j]));
          cols.push_back(j);
        }
      }
      if (vals.empty()) continue;
      const std::vector<double> bv = tridiag::eig_vectors_for(*blocks[b], vals);
      const std::size_t bn = blocks[b]->size();
      for (std::size_t i = 0; i < bn; ++i)
        for (std::size_t c = 0; c < cols.size(); ++c)
          out.vectors[(*rows[b])[i] * want + cols[c]] = bv[i * vals.size() + c];
    }
  }
  return out;
}

double max_vector_residual(const BandedHamiltonian& h, const SpectrumResult& s) {
  if (s.vector_count == 0) return 0.0;
  double worst = 0.0;
  std::vector<double> v(h.n), hv(h.n);
  for (std::size_t j = 0; j < s.vector_count; ++j) {
    for (std::size_t i = 0; i < h.n; ++i) v[i] = s.vec(i, j);
    apply(h, v.data(), hv.data());
    double acc = 0.0;
    for (std::size_t i = 0; i < h.n; ++i) {
      const double r = hv[i] - s.energies[j] * v[i];
      acc += r * r;
    }
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

}  // namespace flho::oscillator
