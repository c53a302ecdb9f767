#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "flho/analysis.hpp"
#include "flho/liealg.hpp"
#include "flho/oscillator.hpp"
#include "flho/su2rep.hpp"

namespace py = pybind11;
using namespace flho;

namespace {

py::dict spectrum_dict(std::int64_t l, double big_k, double kappa, std::size_t lowest,
                       std::size_t vectors, double group_tol) {
  const auto h = oscillator::build_hamiltonian(l, big_k, kappa);
  oscillator::SpectrumOptions opt;
  opt.lowest = lowest;
  opt.vectors = vectors;
  opt.group_tol = group_tol;
  const auto s = oscillator::spectrum(h, opt);
  py::dict d;
  d["energies"] = s.energies;
  d["parities"] = s.parities;
  d["group_index"] = s.group_index;
  py::list groups;
  for (const auto& g : s.groups) groups.append(py::make_tuple(g.value, g.multiplicity));
  d["groups"] = groups;
  d["group_tol_used"] = s.group_tol_used;
  if (s.vector_count > 0) {
    py::list vecs;
    for (std::size_t j = 0; j < s.vector_count; ++j) {
      py::list state;
      for (std::size_t r = 0; r < s.n; ++r) state.append(s.vec(r, j));
      vecs.append(state);
    }
    d["vectors"] = vecs;
    d["max_residual"] = oscillator::max_vector_residual(h, s);
  }
  return d;
}

std::vector<double> ground_state_vec(std::int64_t l, double big_k, double kappa) {
  const auto h = oscillator::build_hamiltonian(l, big_k, kappa);
  oscillator::SpectrumOptions opt;
  opt.lowest = 1;
  opt.vectors = 1;
  const auto s = oscillator::spectrum(h, opt);
  std::vector<double> v(s.n);
  for (std::size_t r = 0; r < s.n; ++r) v[r] = s.vec(r, 0);
  return v;
}

py::dict uncertainty_dict(std::int64_t l, double big_k, double kappa,
                          const std::vector<double>& state) {
  const auto rep = su2rep::build_generators(l);
  const auto oc = su2rep::constants_from_spectral(big_k, kappa, l);
  const auto u = analysis::uncertainty_product(rep, oc, state);
  py::dict d;
  d["dq"] = u.dq;
  d["dp"] = u.dp;
  d["product"] = u.product;
  d["robertson_raw"] = u.robertson_raw;
  d["robertson_bound"] = u.robertson_bound;
  d["hbar_half_ratio"] = u.hbar_half_ratio;
  d["hbar"] = oc.hbar;
  return d;
}

py::dict classify_dict(std::int64_t l, double kappa) {
  const auto r = analysis::classify_regime(l, kappa);
  py::dict d;
  d["regime"] = analysis::to_string(r.regime);
  d["frozen_axis"] = analysis::to_string(r.frozen_axis);
  d["soft_threshold"] = r.soft_threshold;
  d["hard_threshold"] = r.hard_threshold;
  return d;
}

py::dict zero_point_dict(const analysis::ZeroPointRow& row) {
  py::dict d;
  d["kappa"] = row.kappa;
  d["e0_numerical"] = row.e0_numerical;
  d["e0_formula"] = row.e0_formula;
  d["regime"] = analysis::to_string(row.regime);
  d["half_hbar_omega"] = row.half_hbar_omega;
  d["ratio"] = row.ratio;
  return d;
}

py::dict report_dict(const liealg::StabilityReport& r) {
  py::dict d;
  d["jacobi_defect"] = r.jacobi_defect;
  py::list killing;
  for (Eigen::Index i = 0; i < r.killing.rows(); ++i) {
    py::list row;
    for (Eigen::Index j = 0; j < r.killing.cols(); ++j) row.append(r.killing(i, j));
    killing.append(row);
  }
  d["killing"] = killing;
  d["killing_det"] = r.killing_det;
  d["killing_rank"] = r.killing_rank;
  d["radical_dim"] = r.radical_dim_estimate;
  d["verdict"] = liealg::to_string(r.verdict);
  return d;
}

py::dict constants_dict(const su2rep::OscillatorConstants& oc) {
  py::dict d;
  d["hbar"] = oc.hbar;
  d["hbar1"] = oc.hbar1;
  d["hbar2"] = oc.hbar2;
  d["mass"] = oc.mass;
  d["stiffness"] = oc.k;
  d["l"] = oc.l;
  d["Q"] = oc.q_quantum;
  d["P"] = oc.p_quantum;
  d["J"] = oc.j_quantum;
  d["K"] = oc.big_k;
  d["kappa"] = oc.kappa;
  d["omega"] = oc.omega;
  d["rescale"] = oc.rescale;
  d["rescale_warning"] = oc.rescale_warning;
  return d;
}

liealg::StructureConstants from_entries(
    std::size_t dim, const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, double>>& entries) {
  liealg::StructureConstants sc(dim);
  for (const auto& [i, j, k, v] : entries) sc.set(i, j, k, v);
  return sc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite oscillator spectra and scale-algebra stability checks";

  m.def("spectrum", &spectrum_dict, py::arg("l"), py::arg("K"), py::arg("kappa"),
        py::arg("lowest") = 0, py::arg("vectors") = 0, py::arg("group_tol") = -1.0,
        "Eigenvalues (and optionally eigenvectors) of H = (K/2)(Lx^2 + kappa^2 Ly^2), "
        "grouped by degeneracy");

  m.def("ground_state", &ground_state_vec, py::arg("l"), py::arg("K"), py::arg("kappa"),
        "Normalized ground-state vector over the m = l..-l basis");

  m.def("closed_ladder", &analysis::medium_closed_form, py::arg("l"), py::arg("K"),
        py::arg("n_max"), "Exact levels (K/2)(l(l+1) - (n-l)^2) at equal stiffness");

  m.def("ground_estimate", &analysis::regime_ground_estimate, py::arg("l"), py::arg("K"),
        py::arg("kappa"), "Regime-selected closed-form ground energy estimate");

  m.def("variational_bound", &analysis::variational_bound, py::arg("l"), py::arg("K"),
        py::arg("kappa"), "Upper bound on the ground energy from the top basis state");

  m.def("classify", &classify_dict, py::arg("l"), py::arg("kappa"),
        "Regime and frozen-axis diagnosis for the given anisotropy");

  m.def(
      "limit_deviation",
      [](std::int64_t l, double big_k, std::int64_t n_max) {
        py::list rows;
        for (const auto& r : analysis::qho_limit_deviation(l, big_k, n_max)) {
          py::dict d;
          d["n"] = r.n;
          d["energy"] = r.energy;
          d["numerical"] = r.numerical;
          d["analytic"] = r.analytic;
          rows.append(d);
        }
        return rows;
      },
      py::arg("l"), py::arg("K"), py::arg("n_max"),
      "Relative deviation of the low levels from the equal-spacing ladder");

  m.def("uncertainty", &uncertainty_dict, py::arg("l"), py::arg("K"), py::arg("kappa"),
        py::arg("state"), "Position/momentum spreads and Robertson bound on a normalized state");

  m.def(
      "equipartition",
      [](std::int64_t l, double big_k, double kappa, const std::vector<double>& state) {
        return analysis::equipartition_ratio(su2rep::build_generators(l), big_k, kappa, state);
      },
      py::arg("l"), py::arg("K"), py::arg("kappa"), py::arg("state"),
      "Kinetic over potential expectation on a normalized state");

  m.def("excitation_interaction", &analysis::excitation_interaction, py::arg("levels"),
        py::arg("n1"), py::arg("n2"),
        "Pair energy E(n1+n2) - E(n1) - E(n2) + E(0) from a level ladder");

  m.def(
      "zero_point", [](std::int64_t l, double big_k,
                       double kappa) { return zero_point_dict(analysis::zero_point_at(l, big_k, kappa)); },
      py::arg("l"), py::arg("K"), py::arg("kappa"),
      "Ground energy against the naive hbar*omega/2 yardstick");

  m.def(
      "zero_point_sweep",
      [](std::int64_t l, double big_k, const std::vector<double>& grid, unsigned threads) {
        py::list rows;
        for (const auto& r : analysis::zero_point_sweep(l, big_k, grid, threads)) rows.append(zero_point_dict(r));
        return rows;
      },
      py::arg("l"), py::arg("K"), py::arg("grid"), py::arg("threads") = 1,
      "zero_point() rows over a kappa grid");

  m.def(
      "flex_report",
      [](double hbar, double hbar1, double hbar2) {
        return report_dict(liealg::semisimplicity_report(liealg::flex_heisenberg(hbar, hbar1, hbar2)));
      },
      py::arg("hbar") = 1.0, py::arg("hbar1") = 1.0, py::arg("hbar2") = 1.0,
      "Stability report of the three-scale bracket [q,p]=hbar i, [i,q]=hbar1 p, [p,i]=hbar2 q");

  m.def(
      "segal_report",
      [](double hbar, double hbar1, double hbar2) {
        return report_dict(liealg::semisimplicity_report(liealg::segal_variant(hbar, hbar1, hbar2)));
      },
      py::arg("hbar") = 1.0, py::arg("hbar1") = 1.0, py::arg("hbar2") = 1.0,
      "Stability report of the sign-flipped bracket (indefinite Killing form)");

  m.def(
      "stability_report",
      [](std::size_t dim,
         const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, double>>& entries) {
        return report_dict(liealg::semisimplicity_report(from_entries(dim, entries)));
      },
      py::arg("dim"), py::arg("entries"),
      "Stability report of an arbitrary bracket given as (i, j, k, value) entries");

  m.def(
      "contraction",
      [](double hbar, double hbar1, double hbar2, int steps) {
        py::list rows;
        for (const auto& p : liealg::contraction_trajectory(
                 hbar, hbar1, hbar2, liealg::default_contraction_scales(steps))) {
          py::dict d;
          d["t"] = p.t;
          d["killing_det"] = p.killing_det;
          d["verdict"] = liealg::to_string(p.verdict);
          rows.append(d);
        }
        return rows;
      },
      py::arg("hbar") = 1.0, py::arg("hbar1") = 1.0, py::arg("hbar2") = 1.0,
      py::arg("steps") = 8,
      "Killing determinant along the scale contraction hbar1, hbar2 -> 0");

  m.def(
      "constants",
      [](double hbar, double hbar1, double hbar2, double mass, double stiffness) {
        return constants_dict(su2rep::make_constants(hbar, hbar1, hbar2, mass, stiffness));
      },
      py::arg("hbar"), py::arg("hbar1"), py::arg("hbar2"), py::arg("mass"), py::arg("stiffness"),
      "Representation size and derived scales from the three fundamental constants");

  m.def(
      "constants_from_spectral",
      [](double big_k, double kappa, std::int64_t l) {
        return constants_dict(su2rep::constants_from_spectral(big_k, kappa, l));
      },
      py::arg("K"), py::arg("kappa"), py::arg("l"),
      "Fundamental constants recovered from the spectral scales in the hbar = mass = 1 gauge");

  m.attr("max_exact_l") = su2rep::max_exact_l;
}
