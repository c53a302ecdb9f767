#include "flho/liealg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "flho/errors.hpp"

namespace flho::liealg {

StructureConstants::StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim, 0.0) {
  if (dim == 0) throw std::invalid_argument("StructureConstants: dim must be positive");
}

std::size_t StructureConstants::check(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= dim_ || j >= dim_ || k >= dim_)
    throw std::invalid_argument("StructureConstants: index out of range");
  return (i * dim_ + j) * dim_ + k;
}

double StructureConstants::at(std::size_t i, std::size_t j, std::size_t k) const {
  return c_[check(i, j, k)];
}

void StructureConstants::set(std::size_t i, std::size_t j, std::size_t k, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("StructureConstants: non-finite entry");
  if (i == j && value != 0.0)
    throw std::invalid_argument("StructureConstants: [e_i, e_i] must vanish");
  c_[check(i, j, k)] = value;
  c_[check(j, i, k)] = -value;
}

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::MatrixXd StructureConstants::adjoint(std::size_t a) const {
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                             static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k)
      ad(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = at(a, i, k);
  return ad;
}

std::string to_string(Verdict v) { return v == Verdict::semisimple ? "semisimple" : "compound"; }

double jacobi_defect(const StructureConstants& sc) {
  const std::size_t n = sc.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          double sum = 0.0;
          for (std::size_t a = 0; a < n; ++a)
            sum += sc.at(i, j, a) * sc.at(a, k, m) + sc.at(j, k, a) * sc.at(a, i, m) +
                   sc.at(k, i, a) * sc.at(a, j, m);
          worst = std::max(worst, std::abs(sum));
        }
  return worst;
}

double jacobi_tolerance(const StructureConstants& sc, double factor) {
  const double scale = std::max(1.0, sc.max_abs());
  return factor * scale * scale * scale * static_cast<double>(sc.dim());
}

Eigen::MatrixXd killing_form(const StructureConstants& sc) {
  const double defect = jacobi_defect(sc);
  if (defect > jacobi_tolerance(sc))
    throw numerical_error("killing_form: Jacobi defect " + std::to_string(defect) +
                          " exceeds tolerance; not a Lie bracket");
  const std::size_t n = sc.dim();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sum += sc.at(a, i, j) * sc.at(b, j, i);
      k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  return 0.5 * (k + k.transpose()).eval();
}

StabilityReport semisimplicity_report(const StructureConstants& sc, double rank_tol) {
  StabilityReport rep;
  rep.jacobi_defect = jacobi_defect(sc);
  rep.killing = killing_form(sc);
  rep.killing_det = rep.killing.determinant();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep.killing);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  rep.killing_rank = rank;
  rep.verdict = (rank == static_cast<int>(sc.dim())) ? Verdict::semisimple : Verdict::compound;
  rep.radical_dim_estimate = static_cast<int>(sc.dim()) - rank;
  return rep;
}

namespace {

void require_constants(double hbar, double hbar1, double hbar2) {
  if (!(hbar > 0.0)) throw std::invalid_argument("quantum constant hbar must be positive");
  if (!(hbar1 >= 0.0) || !(hbar2 >= 0.0))
    throw std::invalid_argument("quantum constants hbar1, hbar2 must be nonnegative");
}

}  // namespace

StructureConstants flex_heisenberg(double hbar, double hbar1, double hbar2) {
  require_constants(hbar, hbar1, hbar2);
  StructureConstants sc(3);
  sc.set(0, 1, 2, hbar);   // [q, p] = hbar i
  sc.set(2, 0, 1, hbar1);  // [i, q] = hbar1 p
  sc.set(1, 2, 0, hbar2);  // [p, i] = hbar2 q
  return sc;
}

StructureConstants segal_variant(double hbar, double hbar1, double hbar2) {
  require_constants(hbar, hbar1, hbar2);
  StructureConstants sc(3);
  sc.set(1, 0, 2, -hbar);   // [p, x] = -hbar i
  sc.set(2, 1, 0, -hbar1);  // [i, p] = -hbar1 x
  sc.set(0, 2, 1, hbar2);   // [x, i] = hbar2 p
  return sc;
}

std::vector<ContractionPoint> contraction_trajectory(double hbar, double hbar1, double hbar2,
                                                     const std::vector<double>& scales) {
  return contraction_trajectory(hbar, hbar1, hbar2, scales, scales);
}

std::vector<ContractionPoint> contraction_trajectory(double hbar, double hbar1, double hbar2,
                                                     const std::vector<double>& scales1,
                                                     const std::vector<double>& scales2) {
  if (scales1.size() != scales2.size())
    throw std::invalid_argument("contraction_trajectory: scale sequences differ in length");
  if (scales1.empty())
    throw std::invalid_argument("contraction_trajectory: empty scale sequence");
  std::vector<ContractionPoint> out;
  out.reserve(scales1.size());
  for (std::size_t s = 0; s < scales1.size(); ++s) {
    const auto rep =
        semisimplicity_report(flex_heisenberg(hbar, scales1[s] * hbar1, scales2[s] * hbar2));
    out.push_back({scales1[s], rep.killing_det, rep.verdict});
  }
  return out;
}

std::vector<double> default_contraction_scales(int steps) {
  if (steps < 2) throw std::invalid_argument("contraction scales: need at least 2 steps");
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps - 1; ++s) t.push_back(std::pow(10.0, -s));
  t.push_back(0.0);
  return t;
}

}  // namespace flho::liealg
