#include "flho/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "flho/errors.hpp"

namespace flho::tridiag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafMin = std::numeric_limits<double>::min();
constexpr int kMaxSweeps = 50;
constexpr double kDeflate = 1e-14;   // off-diagonal deflation factor
constexpr double kBisectRel = 1e-12; // relative interval width target

void require_nonempty(const SymTridiag& t) {
  if (t.diag.empty()) throw std::invalid_argument("tridiag: empty matrix");
  if (t.offdiag.size() + 1 != t.diag.size())
    throw std::invalid_argument("tridiag: offdiag must have n-1 entries");
}

// One QL pass over d, e with optional eigenvector accumulation into z
// (row-major n x n). Classic implicit-shift iteration with Wilkinson shift.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z,
                 std::size_t n) {
  e.push_back(0.0);
  for (std::size_t l0 = 0; l0 < n; ++l0) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l0; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kDeflate * dd) break;
      }
      if (m != l0) {
        if (iter++ == kMaxSweeps)
          throw numerical_error("eig: QL iteration failed to converge in 50 sweeps");
        double g = (d[l0 + 1] - d[l0]) / (2.0 * e[l0]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l0] + e[l0] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i1 = m; i1 > l0; --i1) {
          const std::size_t i = i1 - 1;
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            double* zi = z->data() + i;
            for (std::size_t k = 0; k < n; ++k, zi += n) {
              f = zi[1];
              zi[1] = s * zi[0] + c * f;
              zi[0] = c * zi[0] - s * f;
            }
          }
        }
        if (!underflow) {
          d[l0] -= p;
          e[l0] = g;
          e[m] = 0.0;
        }
      }
    } while (m != l0);
  }
}

struct SturmData {
  std::vector<double> e2;  // squared off-diagonals
  double pivmin = 0.0;
};

SturmData sturm_setup(const SymTridiag& t) {
  SturmData s;
  s.e2.resize(t.offdiag.size());
  double emax2 = 1.0;
  for (std::size_t i = 0; i < t.offdiag.size(); ++i) {
    s.e2[i] = t.offdiag[i] * t.offdiag[i];
    emax2 = std::max(emax2, s.e2[i]);
  }
  s.pivmin = emax2 * kSafMin;
  return s;
}

std::size_t sturm_count(const std::vector<double>& d, const SturmData& sd, double x) {
  std::size_t cnt = 0;
  double q = d[0] - x;
  if (std::abs(q) < sd.pivmin) q = -sd.pivmin;
  if (q < 0.0) ++cnt;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - x - sd.e2[i - 1] / q;
    if (std::abs(q) < sd.pivmin) q = -sd.pivmin;
    if (q < 0.0) ++cnt;
  }
  return cnt;
}

// PLU factorization of (T - lambda I) with partial pivoting; tiny pivots are
// replaced so inverse iteration can always solve.
struct TriFactor {
  std::vector<double> dd, du, du2, dl;
  std::vector<char> swapped;
};

TriFactor factor_shifted(const SymTridiag& t, double lambda, double scale) {
  const std::size_t n = t.size();
  TriFactor f;
  f.dd.resize(n);
  f.du.assign(n > 1 ? n - 1 : 0, 0.0);
  f.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  f.dl.assign(n > 1 ? n - 1 : 0, 0.0);
  f.swapped.assign(n > 1 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) f.dd[i] = t.diag[i] - lambda;
  const std::vector<double>& sub = t.offdiag;  // subdiagonal, untouched by row swaps
  for (std::size_t i = 0; i + 1 < n; ++i) f.du[i] = t.offdiag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(f.dd[i]) >= std::abs(sub[i])) {
      if (f.dd[i] != 0.0) {
        const double fact = sub[i] / f.dd[i];
        f.dl[i] = fact;
        f.dd[i + 1] -= fact * f.du[i];
      }
    } else {
      const double fact = f.dd[i] / sub[i];
      f.dl[i] = fact;
      f.swapped[i] = 1;
      f.dd[i] = sub[i];
      const double tmp = f.du[i];
      f.du[i] = f.dd[i + 1];
      f.dd[i + 1] = tmp - fact * f.dd[i + 1];
      if (i + 2 < n) {
        f.du2[i] = f.du[i + 1];
        f.du[i + 1] = -fact * f.du[i + 1];
      }
    }
  }
  const double ptiny = std::max(kEps * scale, kSafMin / kEps);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(f.dd[i]) < ptiny) f.dd[i] = (f.dd[i] < 0.0 ? -ptiny : ptiny);
  return f;
}

void solve_factored(const TriFactor& f, std::vector<double>& b) {
  const std::size_t n = f.dd.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!f.swapped[i]) {
      b[i + 1] -= f.dl[i] * b[i];
    } else {
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f.dl[i] * b[i];
    }
  }
  b[n - 1] /= f.dd[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - f.du[n - 2] * b[n - 1]) / f.dd[n - 2];
  for (std::size_t i1 = n; i1 >= 3; --i1) {
    const std::size_t i = i1 - 3;
    b[i] = (b[i] - f.du[i] * b[i + 1] - f.du2[i] * b[i + 2]) / f.dd[i];
  }
}

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

Interval gershgorin(const SymTridiag& t) {
  require_nonempty(t);
  Interval iv{t.diag[0], t.diag[0]};
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.offdiag[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(t.offdiag[i]) : 0.0);
    iv.lo = std::min(iv.lo, t.diag[i] - r);
    iv.hi = std::max(iv.hi, t.diag[i] + r);
  }
  return iv;
}

std::vector<double> eig_all(const SymTridiag& t) {
  require_nonempty(t);
  std::vector<double> d = t.diag;
  std::vector<double> e = t.offdiag;
  ql_implicit(d, e, nullptr, t.size());
  std::sort(d.begin(), d.end());
  return d;
}

EigenSystem eig_all_vectors(const SymTridiag& t) {
  require_nonempty(t);
  const std::size_t n = t.size();
  EigenSystem sys;
  sys.n = n;
  std::vector<double> d = t.diag;
  std::vector<double> e = t.offdiag;
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  ql_implicit(d, e, &z, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  sys.values.resize(n);
  sys.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    sys.values[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) sys.vectors[i * n + j] = z[i * n + order[j]];
  }
  return sys;
}

std::size_t count_below(const SymTridiag& t, double x) {
  require_nonempty(t);
  return sturm_count(t.diag, sturm_setup(t), x);
}

std::vector<double> eig_lowest(const SymTridiag& t, std::size_t count) {
  require_nonempty(t);
  const std::size_t n = t.size();
  if (count < 1 || count > n) throw std::invalid_argument("eig_lowest: count out of range");
  const SturmData sd = sturm_setup(t);
  const Interval g = gershgorin(t);
  const double radius = std::max({std::abs(g.lo), std::abs(g.hi), 1e-300});
  const double pad = 2.0 * kEps * radius + 2.0 * sd.pivmin;
  const double glo = g.lo - pad, ghi = g.hi + pad;
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    double lo = glo, hi = ghi;
    for (int it = 0; it < 220; ++it) {
      const double tol = std::max(kBisectRel * std::max(std::abs(lo), std::abs(hi)),
                                  4.0 * kEps * radius + 2.0 * sd.pivmin);
      if (hi - lo <= tol) break;
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(t.diag, sd, mid) >= j + 1)
        hi = mid;
      else
        lo = mid;
    }
    out[j] = 0.5 * (lo + hi);
  }
  return out;
}

std::vector<double> eig_vectors_for(const SymTridiag& t, const std::vector<double>& values) {
  require_nonempty(t);
  const std::size_t n = t.size();
  const std::size_t k = values.size();
  std::vector<double> vecs(n * k, 0.0);
  if (k == 0) return vecs;
  const Interval g = gershgorin(t);
  const double radius = std::max({std::abs(g.lo), std::abs(g.hi), 1e-300});
  const double ortol = 1e-3 * radius;
  const double goal = 0.1 / (kEps * radius * std::sqrt(static_cast<double>(n)));
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);  // fixed seed: runs are reproducible
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(n);
  std::size_t cluster_start = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0 && std::abs(values[j] - values[j - 1]) > ortol) cluster_start = j;
    const TriFactor f = factor_shifted(t, values[j], radius);
    for (std::size_t i = 0; i < n; ++i) x[i] = uni(rng);
    double nrm = norm2(x);
    for (std::size_t i = 0; i < n; ++i) x[i] /= nrm;
    for (int pass = 0; pass < 5; ++pass) {
      solve_factored(f, x);
      // Orthogonalize within the near-degenerate cluster so repeated
      // eigenvalues come out as an orthonormal set, not the same vector.
      for (std::size_t p = cluster_start; p < j; ++p) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * vecs[i * k + p];
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot * vecs[i * k + p];
      }
      nrm = norm2(x);
      if (nrm == 0.0) {
        for (std::size_t i = 0; i < n; ++i) x[i] = uni(rng);
        nrm = norm2(x);
      }
      for (std::size_t i = 0; i < n; ++i) x[i] /= nrm;
      if (nrm >= goal && pass >= 1) break;
    }
    for (std::size_t i = 0; i < n; ++i) vecs[i * k + j] = x[i];
  }
  return vecs;
}

}  // namespace flho::tridiag
