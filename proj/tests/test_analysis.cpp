#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "flho/analysis.hpp"
#include "flho/errors.hpp"
#include "flho/oscillator.hpp"
#include "flho/su2rep.hpp"

using namespace flho::analysis;
using flho::oscillator::build_hamiltonian;
using flho::oscillator::spectrum;
using flho::oscillator::SpectrumOptions;
using flho::su2rep::build_generators;
using flho::su2rep::constants_from_spectral;

namespace {

std::vector<double> ground_state(std::int64_t l, double big_k, double kappa) {
  const auto h = build_hamiltonian(l, big_k, kappa);
  SpectrumOptions opt;
  opt.lowest = 1;
  opt.vectors = 1;
  const auto s = spectrum(h, opt);
  std::vector<double> v(s.n);
  for (std::size_t r = 0; r < s.n; ++r) v[r] = s.vec(r, 0);
  return v;
}

}  // namespace

TEST_CASE("equal-stiffness ladder: closed form and spectrum coincide everywhere") {
  const auto levels = medium_closed_form(2, 1.0, 4);
  REQUIRE(levels.size() == 5);
  CHECK(levels[0] == doctest::Approx(1.0));
  CHECK(levels[1] == doctest::Approx(2.5));
  CHECK(levels[2] == doctest::Approx(3.0));
  CHECK(levels[3] == doctest::Approx(2.5));  // mirror n <-> 2l-n
  CHECK(levels[4] == doctest::Approx(1.0));
  CHECK(medium_ground(2, 1.0) == doctest::Approx(1.0));
  CHECK(medium_max(2, 1.0) == doctest::Approx(3.0));

  // Sorted spectrum index j maps to ladder level j/2 (doublets, top singlet).
  const std::int64_t l = 20;
  const auto s = spectrum(build_hamiltonian(l, 0.7, 1.0));
  for (std::size_t j = 0; j < s.energies.size(); ++j) {
    const auto n = static_cast<std::int64_t>(j / 2);
    CHECK(s.energies[j] ==
          doctest::Approx(medium_level(l, 0.7, n)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(medium_closed_form(2, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(medium_level(2, 1.0, -1), std::invalid_argument);
}

TEST_CASE("soft estimates: suppressed zero point") {
  const auto p = soft_perturbative(100, 1.0, 1e-3, -2, 2);
  CHECK(p.e0 == doctest::Approx(2.525e-3).epsilon(1e-12));
  CHECK_FALSE(p.out_of_regime);
  REQUIRE(p.m.size() == 5);
  CHECK(p.m.front() == -2);
  CHECK(p.energy[2] == doctest::Approx(0.25 * 1e-6 * 10100.0).epsilon(1e-12));  // m = 0
  // m = +-1 entries are symmetric.
  CHECK(p.energy[1] == doctest::Approx(p.energy[3]).epsilon(1e-15));

  const auto free = soft_perturbative(10, 2.0, 0.0, 0, 10);
  for (std::size_t i = 0; i < free.m.size(); ++i) {
    const double md = static_cast<double>(free.m[i]);
    CHECK(free.energy[i] == doctest::Approx(0.5 * 2.0 * md * md));
  }
  CHECK(free.e_max == doctest::Approx(0.5 * 2.0 * 100.0));
  CHECK(free.e0 == 0.0);

  // Numerical ground at l=100, kappa=1e-3 sits within 1% of the estimate.
  const auto s = spectrum(build_hamiltonian(100, 1.0, 1e-3), [] {
    SpectrumOptions o;
    o.lowest = 1;
    return o;
  }());
  CHECK(std::abs(s.energies[0] - p.e0) <= 0.01 * p.e0);

  CHECK(soft_perturbative(10, 1.0, 2.0, 0, 0).out_of_regime);
  CHECK_THROWS_AS(soft_perturbative(10, 1.0, 0.5, -11, 0), std::invalid_argument);
}

TEST_CASE("hard estimates are the soft estimates of the swapped problem") {
  const auto hard = hard_perturbative(100, 1.0, 1e3, -3, 3);
  CHECK(hard.e0 == doctest::Approx(2525.0).epsilon(1e-12));
  CHECK_FALSE(hard.out_of_regime);
  const auto soft = soft_perturbative(100, 1.0 * 1e6, 1e-3, -3, 3);
  for (std::size_t i = 0; i < hard.energy.size(); ++i)
    CHECK(hard.energy[i] == doctest::Approx(soft.energy[i]).epsilon(1e-15));

  // Numerical ground within 1%.
  SpectrumOptions opt;
  opt.lowest = 1;
  const auto s = spectrum(build_hamiltonian(100, 1.0, 1e3), opt);
  CHECK(std::abs(s.energies[0] - hard.e0) <= 0.01 * hard.e0);

  CHECK(hard_perturbative(10, 1.0, 0.5, 0, 0).out_of_regime);
  CHECK_THROWS_AS(hard_perturbative(10, 1.0, 0.0, 0, 0), std::invalid_argument);
}

TEST_CASE("variational bound from the top basis state") {
  CHECK(variational_bound(2, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(variational_bound(10, 1.0, 0.5) == doctest::Approx(3.125).epsilon(1e-14));

  std::mt19937_64 rng(606);
  std::uniform_int_distribution<std::int64_t> li(1, 50);
  std::uniform_real_distribution<double> ku(0.2, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t l = li(rng);
    const double kappa = ku(rng);
    const double bound = variational_bound(l, 1.0, kappa);
    SpectrumOptions opt;
    opt.lowest = 1;
    const auto s = spectrum(build_hamiltonian(l, 1.0, kappa), opt);
    CHECK(s.energies[0] <= bound * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("deviation from the equal-spacing ladder shrinks as 1/l") {
  const auto rows = qho_limit_deviation(10000, 1.0, 5);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].analytic == 0.0);
  CHECK(rows[0].numerical <= 1e-12);
  CHECK(rows[1].analytic == doctest::Approx((1.0 / 20000.0) / 1.5).epsilon(1e-12));
  for (const auto& r : rows) CHECK(std::abs(r.numerical - r.analytic) <= 1e-8);
  CHECK_THROWS_AS(qho_limit_deviation(10000, 1.0, 101), std::invalid_argument);
}

TEST_CASE("top state saturates the canonical bound at equal stiffness") {
  for (std::int64_t l : {1, 5, 40}) {
    const auto rep = build_generators(l);
    const auto oc = constants_from_spectral(1.0, 1.0, l);
    std::vector<double> top(rep.n, 0.0);
    top[0] = 1.0;
    const auto u = uncertainty_product(rep, oc, top, "lz-top");
    CHECK(u.product == doctest::Approx(0.5 * oc.hbar).epsilon(1e-12));
    CHECK(u.hbar_half_ratio == doctest::Approx(1.0).epsilon(1e-12));
    // Saturation: Robertson bound equals the product here.
    CHECK(u.robertson_bound == doctest::Approx(u.product).epsilon(1e-12));
    CHECK(u.robertson_raw == doctest::Approx(0.5 * static_cast<double>(l)));
    CHECK(u.product == doctest::Approx(u.dq * u.dp).epsilon(1e-14));
  }
}

TEST_CASE("momentum-axis eigenstate has zero momentum spread") {
  // Ground of the kappa = 0 Hamiltonian is the S = 0 eigenstate.
  const std::int64_t l = 12;
  const auto v = ground_state(l, 1.0, 0.0);
  const auto rep = build_generators(l);
  const auto oc = constants_from_spectral(1.0, 0.0, l);
  const auto u = uncertainty_product(rep, oc, v, "lx-zero");
  CHECK(u.dp <= 1e-7 * oc.p_quantum);
  CHECK(u.product <= 1e-6 * 0.5 * oc.hbar);
  // Robertson still holds: <Lz> vanishes on this state.
  CHECK(u.robertson_bound <= u.product + 1e-9);
}

TEST_CASE("soft ground state beats the fixed hbar/2 bound") {
  const std::int64_t l = 100;
  const auto v = ground_state(l, 1.0, 1e-3);
  const auto rep = build_generators(l);
  const auto oc = constants_from_spectral(1.0, 1e-3, l);
  const auto u = uncertainty_product(rep, oc, v, "ground");
  CHECK(u.hbar_half_ratio < 0.1);
  CHECK(u.product + 1e-9 >= u.robertson_bound);
}

TEST_CASE("Robertson inequality on random states") {
  const std::int64_t l = 20;
  const auto rep = build_generators(l);
  const auto oc = constants_from_spectral(1.0, 0.7, l);
  std::mt19937_64 rng(20240816);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(rep.n);
    double nrm = 0.0;
    for (auto& x : v) {
      x = g(rng);
      nrm += x * x;
    }
    nrm = std::sqrt(nrm);
    for (auto& x : v) x /= nrm;
    const auto u = uncertainty_product(rep, oc, v);
    CHECK(u.product >= u.robertson_bound - 1e-9 * std::max(1.0, u.product));
  }
}

TEST_CASE("states must be normalized") {
  const auto rep = build_generators(3);
  const auto oc = constants_from_spectral(1.0, 1.0, 3);
  std::vector<double> v(rep.n, 0.5);
  CHECK_THROWS_AS(uncertainty_product(rep, oc, v), std::invalid_argument);
  std::vector<double> wrong(rep.n + 1, 0.0);
  CHECK_THROWS_AS(uncertainty_product(rep, oc, wrong), std::invalid_argument);
}

TEST_CASE("kinetic/potential split on characteristic states") {
  const std::int64_t l = 9;
  const auto rep = build_generators(l);
  std::vector<double> top(rep.n, 0.0);
  top[0] = 1.0;
  CHECK(equipartition_ratio(rep, 1.0, 1.0, top) == doctest::Approx(1.0).epsilon(1e-13));

  // Soft ground: kinetic side suppressed. Hard ground: the reciprocal.
  const auto rep100 = build_generators(100);
  const auto soft = ground_state(100, 1.0, 1e-3);
  CHECK(equipartition_ratio(rep100, 1.0, 1e-3, soft) < 0.1);
  const auto hard = ground_state(100, 1.0, 1e3);
  CHECK(equipartition_ratio(rep100, 1.0, 1e3, hard) > 10.0);

  // Zero potential coefficient reports the infinity marker.
  CHECK(equipartition_ratio(rep, 1.0, 0.0, top) == std::numeric_limits<double>::infinity());
}

TEST_CASE("pair interaction: attractive at equal stiffness, repulsive when soft") {
  // Closed-form ladder at kappa = 1.
  const auto ladder = medium_closed_form(2, 1.0, 2);
  CHECK(excitation_interaction(ladder, 1, 1) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(excitation_interaction(ladder, 1, 0) == 0.0);
  CHECK(excitation_interaction(ladder, 0, 0) == 0.0);

  // Numerical route through degeneracy-grouped levels.
  const auto s = spectrum(build_hamiltonian(50, 1.0, 1.0));
  const auto levels = group_levels(s);
  REQUIRE(levels.size() == 51);
  CHECK(excitation_interaction(levels, 1, 1) == doctest::Approx(-1.0).epsilon(1e-10));

  // Soft limit: repulsion equal to the separate excitation energies.
  SpectrumOptions opt;
  opt.group_tol = 1e-2;
  const auto soft = spectrum(build_hamiltonian(100, 1.0, 1e-3), opt);
  const auto soft_levels = group_levels(soft);
  const double delta = excitation_interaction(soft_levels, 1, 1);
  const double separate = 2.0 * (soft_levels[1] - soft_levels[0]);
  CHECK(delta > 0.0);
  CHECK(std::abs(delta - separate) <= 0.05 * separate);

  CHECK_THROWS_AS(excitation_interaction(ladder, 2, 1), std::invalid_argument);
}

TEST_CASE("regime classification and frozen axes") {
  const auto med = classify_regime(100, 1.0);
  CHECK(med.regime == Regime::medium);
  CHECK(med.frozen_axis == FrozenAxis::none);
  CHECK(med.soft_threshold == doctest::Approx(0.1));
  CHECK(med.hard_threshold == doctest::Approx(10.0));

  const auto soft = classify_regime(100, 1e-3);
  CHECK(soft.regime == Regime::soft);
  CHECK(soft.frozen_axis == FrozenAxis::momentum);

  const auto hard = classify_regime(100, 1e3);
  CHECK(hard.regime == Regime::hard);
  CHECK(hard.frozen_axis == FrozenAxis::position);

  // Boundary kappa classifies as the extreme regime (<= and >=).
  CHECK(classify_regime(100, 0.1).regime == Regime::soft);
  CHECK(classify_regime(100, 10.0).regime == Regime::hard);

  RegimeThresholds th;
  th.soft = 0.5;
  th.hard = 2.0;
  CHECK(classify_regime(100, 0.4, th).regime == Regime::soft);
  CHECK(classify_regime(100, 1.9, th).regime == Regime::medium);

  CHECK(to_string(Regime::soft) == "soft");
  CHECK(to_string(FrozenAxis::position) == "position");
}

TEST_CASE("zero-point table rows") {
  const auto medium = zero_point_at(50, 1.0, 1.0);
  CHECK(medium.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(medium.e0_numerical == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(medium.e0_formula == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(medium.regime == Regime::medium);

  const auto soft = zero_point_at(100, 1.0, 1e-3);
  CHECK(soft.ratio < 0.1);
  CHECK(soft.half_hbar_omega == doctest::Approx(0.05));
  CHECK(std::abs(soft.e0_numerical - soft.e0_formula) <= 0.01 * soft.e0_formula);

  const auto frozen = zero_point_at(10, 1.0, 0.0);
  CHECK(frozen.ratio == std::numeric_limits<double>::infinity());
}

TEST_CASE("zero point is non-decreasing in kappa") {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  const auto rows = zero_point_sweep(30, 1.0, grid);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i].e0_numerical <= rows[i + 1].e0_numerical * (1.0 + 1e-12));
}

TEST_CASE("sweep rows are identical across thread counts") {
  std::vector<double> grid{1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0};
  const auto a = zero_point_sweep(40, 1.0, grid, 1);
  const auto b = zero_point_sweep(40, 1.0, grid, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].kappa == b[i].kappa);
    CHECK(a[i].e0_numerical == b[i].e0_numerical);  // bitwise: same code path
    CHECK(a[i].e0_formula == b[i].e0_formula);
    CHECK(a[i].ratio == b[i].ratio);
  }
  CHECK_THROWS_AS(zero_point_sweep(10, 1.0, {}, 1), std::invalid_argument);
}
