#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flho/analysis.hpp"
#include "flho/errors.hpp"
#include "flho/io.hpp"
#include "flho/liealg.hpp"
#include "flho/oscillator.hpp"
#include "flho/su2rep.hpp"

namespace {

using flho::io::Cell;
using flho::io::RunMeta;
using flho::io::Table;

struct Common {
  std::string format = "csv";
  std::string out;
  bool plot = false;
  unsigned threads = 0;  // 0 = resolve from FLHO_THREADS or 1
  std::int64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c, bool with_plot = false) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "Output path (default: stdout)");
  sub->add_option("--threads", c.threads, "Worker threads for sweeps");
  sub->add_option("--seed", c.seed, "Seed recorded with the run")->capture_default_str();
  if (with_plot) sub->add_flag("--plot", c.plot, "Also emit a gnuplot script (needs --out)");
}

unsigned resolve_threads(const Common& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("FLHO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

void emit(const Common& c, const Table& t, RunMeta meta) {
  meta.params.emplace_back("seed", Cell{c.seed});
  flho::io::write_table(c.out, c.format, t, meta);
}

void emit_plot(const Common& c, std::size_t x, const std::vector<std::size_t>& ys, bool logx,
               const std::string& title) {
  if (!c.plot) return;
  if (c.out.empty()) throw std::invalid_argument("--plot requires --out");
  const std::string script = flho::io::gnuplot_script(c.out, x, ys, logx, title);
  const std::string path = c.out + ".gp";
  std::ofstream os(path, std::ios::binary);
  if (!os) throw flho::io_error("cannot open " + path);
  os << script;
  if (!os) throw flho::io_error("write failed for " + path);
}

// ------------------------------------------------------------ subcommands

struct SpectrumArgs {
  std::int64_t l = 0;
  double big_k = 0.0;
  double kappa = 0.0;
  std::size_t lowest = 0;
  std::size_t vectors = 0;
  double group_tol = -1.0;
  Common common;
};

void run_spectrum(const SpectrumArgs& a) {
  if (a.vectors > 64) throw std::invalid_argument("--vectors is limited to 64 states");
  if (a.vectors > 0 && a.common.format == "csv" && a.common.out.empty())
    throw std::invalid_argument("--vectors with csv output requires --out");
  const auto h = flho::oscillator::build_hamiltonian(a.l, a.big_k, a.kappa);
  flho::oscillator::SpectrumOptions opt;
  opt.lowest = a.lowest;
  opt.vectors = a.vectors;
  opt.group_tol = a.group_tol;
  const auto s = flho::oscillator::spectrum(h, opt);

  Table t;
  t.columns = {"index", "energy", "parity", "multiplicity_group"};
  for (std::size_t i = 0; i < s.energies.size(); ++i)
    t.add_row({static_cast<std::int64_t>(i), s.energies[i],
               std::string(s.parities[i] == 0 ? "even" : "odd"),
               static_cast<std::int64_t>(s.group_index[i])});
  RunMeta meta{"spectrum",
               {{"l", Cell{a.l}},
                {"K", Cell{a.big_k}},
                {"kappa", Cell{a.kappa}},
                {"lowest", Cell{static_cast<std::int64_t>(a.lowest)}},
                {"vectors", Cell{static_cast<std::int64_t>(a.vectors)}},
                {"group_tol", Cell{s.group_tol_used}}}};
  emit(a.common, t, meta);

  if (a.vectors > 0 && a.common.format == "csv") {
    Table vt;
    vt.columns = {"m"};
    for (std::size_t j = 0; j < s.vector_count; ++j) vt.columns.push_back("state_" + std::to_string(j));
    for (std::size_t r = 0; r < s.n; ++r) {
      std::vector<Cell> row;
      row.emplace_back(a.l - static_cast<std::int64_t>(r));
      for (std::size_t j = 0; j < s.vector_count; ++j) row.emplace_back(s.vec(r, j));
      vt.add_row(std::move(row));
    }
    flho::io::write_table(a.common.out + ".vectors.csv", "csv", vt, meta);
  }
  emit_plot(a.common, 1, {2}, false, "spectrum");
}

struct GroundArgs {
  std::int64_t l = 0;
  double big_k = 0.0;
  double kappa = 0.0;
  Common common;
};

void run_ground(const GroundArgs& a) {
  const auto row = flho::analysis::zero_point_at(a.l, a.big_k, a.kappa);
  const double vb = flho::analysis::variational_bound(a.l, a.big_k, a.kappa);
  Table t;
  t.columns = {"l",          "K",          "kappa",     "regime",
               "e0_numerical", "e0_formula", "variational_bound",
               "formula_ratio", "half_hbar_omega_ratio"};
  t.add_row({a.l, a.big_k, a.kappa, flho::analysis::to_string(row.regime), row.e0_numerical,
             row.e0_formula, vb, row.e0_numerical / row.e0_formula, row.ratio});
  emit(a.common, t,
       {"ground", {{"l", Cell{a.l}}, {"K", Cell{a.big_k}}, {"kappa", Cell{a.kappa}}}});
}

struct UncertaintyArgs {
  std::int64_t l = 0;
  double big_k = 0.0;
  double kappa = 0.0;
  std::string state = "ground";
  Common common;
};

std::vector<double> pick_state(const UncertaintyArgs& a) {
  const std::size_t n = static_cast<std::size_t>(2 * a.l + 1);
  if (a.state == "lz-top") {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    return v;
  }
  double kappa = a.kappa;
  std::size_t index = 0;
  if (a.state == "lx-zero") {
    kappa = 0.0;  // ground of the pure kinetic term is the Lx = 0 state
  } else if (a.state.rfind("index:", 0) == 0) {
    const std::string num = a.state.substr(6);
    std::size_t pos = 0;
    long idx = -1;
    try {
      idx = std::stol(num, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("--state index:N with malformed N");
    }
    if (pos != num.size() || idx < 0 || idx > 63)
      throw std::invalid_argument("--state index:N requires 0 <= N <= 63");
    index = static_cast<std::size_t>(idx);
    if (index >= n) throw std::invalid_argument("--state index exceeds the dimension 2l+1");
  } else if (a.state != "ground") {
    throw std::invalid_argument("--state must be ground, lz-top, lx-zero, or index:N");
  }
  const auto h = flho::oscillator::build_hamiltonian(a.l, a.big_k, kappa);
  flho::oscillator::SpectrumOptions opt;
  opt.lowest = index + 1;
  opt.vectors = index + 1;
  const auto s = flho::oscillator::spectrum(h, opt);
  std::vector<double> v(n);
  for (std::size_t r = 0; r < n; ++r) v[r] = s.vec(r, index);
  return v;
}

void run_uncertainty(const UncertaintyArgs& a) {
  const auto rep = flho::su2rep::build_generators(a.l);
  const auto oc = flho::su2rep::constants_from_spectral(a.big_k, a.kappa, a.l);
  const auto u = flho::analysis::uncertainty_product(rep, oc, pick_state(a), a.state);
  Table t;
  t.columns = {"state", "l",    "K",           "kappa",
               "dq",    "dp",   "product",     "robertson_raw",
               "robertson_bound", "hbar_half_ratio"};
  t.add_row({u.state_id, a.l, a.big_k, a.kappa, u.dq, u.dp, u.product, u.robertson_raw,
             u.robertson_bound, u.hbar_half_ratio});
  emit(a.common, t,
       {"uncertainty",
        {{"l", Cell{a.l}}, {"K", Cell{a.big_k}}, {"kappa", Cell{a.kappa}},
         {"state", Cell{a.state}}}});
}

struct SweepArgs {
  std::int64_t l = 0;
  double big_k = 0.0;
  std::string grid;
  Common common;
};

void run_sweep(const SweepArgs& a) {
  const std::vector<double> grid = flho::io::parse_grid(a.grid);
  const auto rows =
      flho::analysis::zero_point_sweep(a.l, a.big_k, grid, resolve_threads(a.common));
  Table t;
  t.columns = {"kappa", "e0_numerical", "e0_formula", "regime", "half_hbar_omega", "ratio"};
  for (const auto& r : rows)
    t.add_row({r.kappa, r.e0_numerical, r.e0_formula, flho::analysis::to_string(r.regime),
               r.half_hbar_omega, r.ratio});
  emit(a.common, t,
       {"sweep", {{"l", Cell{a.l}}, {"K", Cell{a.big_k}}, {"kappa_grid", Cell{a.grid}}}});
  emit_plot(a.common, 1, {2, 3}, a.grid.rfind("LOG:", 0) == 0, "zero-point sweep");
}

struct LimitArgs {
  std::int64_t l = 0;
  double big_k = 1.0;
  std::int64_t levels = 0;
  Common common;
};

void run_limit(const LimitArgs& a) {
  if (a.levels < 1) throw std::invalid_argument("--levels must be at least 1");
  const auto rows = flho::analysis::qho_limit_deviation(a.l, a.big_k, a.levels - 1);
  Table t;
  t.columns = {"n", "energy", "deviation_numerical", "deviation_analytic"};
  for (const auto& r : rows) t.add_row({r.n, r.energy, r.numerical, r.analytic});
  emit(a.common, t,
       {"limit", {{"l", Cell{a.l}}, {"K", Cell{a.big_k}}, {"levels", Cell{a.levels}}}});
  emit_plot(a.common, 1, {3, 4}, false, "equal-spacing limit");
}

struct InteractArgs {
  std::int64_t l = 0;
  double big_k = 0.0;
  double kappa = 0.0;
  std::int64_t n1 = 1;
  std::int64_t n2 = 1;
  double group_tol = -1.0;
  Common common;
};

void run_interact(const InteractArgs& a) {
  if (a.n1 < 0 || a.n2 < 0) throw std::invalid_argument("--n1/--n2 must be nonnegative");
  const auto h = flho::oscillator::build_hamiltonian(a.l, a.big_k, a.kappa);
  flho::oscillator::SpectrumOptions opt;
  opt.group_tol = a.group_tol;
  const auto s = flho::oscillator::spectrum(h, opt);
  const auto levels = flho::analysis::group_levels(s);
  const auto need = static_cast<std::size_t>(a.n1 + a.n2);
  if (need >= levels.size())
    throw std::invalid_argument("n1 + n2 exceeds the number of distinct levels");
  const double delta = flho::analysis::excitation_interaction(
      levels, static_cast<std::size_t>(a.n1), static_cast<std::size_t>(a.n2));
  const double separate = (levels[static_cast<std::size_t>(a.n1)] - levels[0]) +
                          (levels[static_cast<std::size_t>(a.n2)] - levels[0]);
  Table t;
  t.columns = {"l", "K", "kappa", "n1", "n2", "delta", "separate_sum", "levels_used"};
  t.add_row({a.l, a.big_k, a.kappa, a.n1, a.n2, delta, separate,
             static_cast<std::int64_t>(levels.size())});
  emit(a.common, t,
       {"interact",
        {{"l", Cell{a.l}}, {"K", Cell{a.big_k}}, {"kappa", Cell{a.kappa}},
         {"n1", Cell{a.n1}}, {"n2", Cell{a.n2}}}});
}

Table stability_table(const flho::liealg::StructureConstants& sc) {
  const double defect = flho::liealg::jacobi_defect(sc);
  const auto rep = flho::liealg::semisimplicity_report(sc);
  Table t;
  t.columns = {"dim", "jacobi_defect", "killing_det", "killing_rank", "radical_dim", "verdict"};
  t.add_row({static_cast<std::int64_t>(sc.dim()), defect, rep.killing_det,
             static_cast<std::int64_t>(rep.killing_rank),
             static_cast<std::int64_t>(rep.radical_dim_estimate),
             flho::liealg::to_string(rep.verdict)});
  return t;
}

struct AlgebraArgs {
  std::string file;
  double hbar = 1.0, hbar1 = 1.0, hbar2 = 1.0;
  std::int64_t steps = 8;
  Common common;
};

void run_algebra_check(const AlgebraArgs& a) {
  const auto sc = flho::io::load_structure_constants(a.file);
  emit(a.common, stability_table(sc), {"algebra check", {{"file", Cell{a.file}}}});
}

void run_algebra_flex(const AlgebraArgs& a) {
  const auto sc = flho::liealg::flex_heisenberg(a.hbar, a.hbar1, a.hbar2);
  emit(a.common, stability_table(sc),
       {"algebra flex",
        {{"hbar", Cell{a.hbar}}, {"hbar1", Cell{a.hbar1}}, {"hbar2", Cell{a.hbar2}}}});
}

void run_algebra_contract(const AlgebraArgs& a) {
  const auto scales = flho::liealg::default_contraction_scales(static_cast<int>(a.steps));
  const auto traj = flho::liealg::contraction_trajectory(a.hbar, a.hbar1, a.hbar2, scales);
  Table t;
  t.columns = {"t", "killing_det", "verdict"};
  for (const auto& p : traj)
    t.add_row({p.t, p.killing_det, flho::liealg::to_string(p.verdict)});
  emit(a.common, t,
       {"algebra contract",
        {{"hbar", Cell{a.hbar}}, {"hbar1", Cell{a.hbar1}}, {"hbar2", Cell{a.hbar2}},
         {"steps", Cell{a.steps}}}});
}

struct ConstantsArgs {
  double hbar = 0.0, hbar1 = 0.0, hbar2 = 0.0, mass = 0.0, stiffness = 0.0;
  Common common;
};

void run_constants(const ConstantsArgs& a) {
  const auto oc =
      flho::su2rep::make_constants(a.hbar, a.hbar1, a.hbar2, a.mass, a.stiffness);
  const auto reg = flho::analysis::classify_regime(oc);
  Table t;
  t.columns = {"hbar", "hbar1", "hbar2", "mass", "stiffness", "l",     "Q",
               "P",    "J",     "K",     "kappa", "omega",    "regime", "rescale",
               "rescale_warning"};
  t.add_row({oc.hbar, oc.hbar1, oc.hbar2, oc.mass, oc.k, oc.l, oc.q_quantum, oc.p_quantum,
             oc.j_quantum, oc.big_k, oc.kappa, oc.omega, flho::analysis::to_string(reg.regime),
             oc.rescale, std::string(oc.rescale_warning ? "yes" : "no")});
  emit(a.common, t,
       {"constants",
        {{"hbar", Cell{a.hbar}}, {"hbar1", Cell{a.hbar1}}, {"hbar2", Cell{a.hbar2}},
         {"mass", Cell{a.mass}}, {"stiffness", Cell{a.stiffness}}}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite oscillator spectra and Lie-algebra stability toolkit"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues of the finite oscillator");
  sp->add_option("--l", sa.l, "Angular momentum quantum number")->required();
  sp->add_option("--K", sa.big_k, "Energy scale")->required();
  sp->add_option("--kappa", sa.kappa, "Stiffness ratio")->required();
  sp->add_option("--lowest", sa.lowest, "Only this many lowest levels");
  sp->add_option("--vectors", sa.vectors, "Export eigenvectors for this many lowest states");
  sp->add_option("--group-tol", sa.group_tol, "Degeneracy grouping tolerance");
  add_common(sp, sa.common, true);

  GroundArgs ga;
  auto* gr = app.add_subcommand("ground", "Zero-point energy against the closed forms");
  gr->add_option("--l", ga.l)->required();
  gr->add_option("--K", ga.big_k)->required();
  gr->add_option("--kappa", ga.kappa)->required();
  add_common(gr, ga.common);

  UncertaintyArgs ua;
  auto* un = app.add_subcommand("uncertainty", "Position/momentum spreads on a state");
  un->add_option("--l", ua.l)->required();
  un->add_option("--K", ua.big_k)->required();
  un->add_option("--kappa", ua.kappa)->required();
  un->add_option("--state", ua.state, "ground|lz-top|lx-zero|index:N")->capture_default_str();
  add_common(un, ua.common);

  SweepArgs wa;
  auto* sw = app.add_subcommand("sweep", "Zero-point energy across a kappa grid");
  sw->add_option("--l", wa.l)->required();
  sw->add_option("--K", wa.big_k)->required();
  sw->add_option("--kappa-grid", wa.grid, "LOG:a:b:step | LIN:a:b:step | number")->required();
  add_common(sw, wa.common, true);

  LimitArgs la;
  auto* li = app.add_subcommand("limit", "Deviation from the equal-spacing ladder at kappa=1");
  li->add_option("--l", la.l)->required();
  li->add_option("--K", la.big_k)->capture_default_str();
  li->add_option("--levels", la.levels, "Number of levels, starting at the ground state")
      ->required();
  add_common(li, la.common, true);

  InteractArgs ia;
  auto* in = app.add_subcommand("interact", "Pair interaction energy of excitation quanta");
  in->add_option("--l", ia.l)->required();
  in->add_option("--K", ia.big_k)->required();
  in->add_option("--kappa", ia.kappa)->required();
  in->add_option("--n1", ia.n1)->required();
  in->add_option("--n2", ia.n2)->required();
  in->add_option("--group-tol", ia.group_tol, "Degeneracy grouping tolerance");
  add_common(in, ia.common);

  AlgebraArgs aa;
  auto* al = app.add_subcommand("algebra", "Bracket validity, Killing form, contraction");
  al->require_subcommand(1);
  auto* ch = al->add_subcommand("check", "Diagnose structure constants from a JSON file");
  ch->add_option("--file", aa.file, "Structure constants JSON")->required();
  add_common(ch, aa.common);
  auto* fl = al->add_subcommand("flex", "Diagnose the flexed bracket at given constants");
  fl->add_option("--hbar", aa.hbar)->capture_default_str();
  fl->add_option("--hbar1", aa.hbar1)->capture_default_str();
  fl->add_option("--hbar2", aa.hbar2)->capture_default_str();
  add_common(fl, aa.common);
  auto* co = al->add_subcommand("contract", "Flatten the bracket back toward Heisenberg");
  co->add_option("--steps", aa.steps, "Scale points including the final 0")
      ->capture_default_str();
  co->add_option("--hbar", aa.hbar)->capture_default_str();
  co->add_option("--hbar1", aa.hbar1)->capture_default_str();
  co->add_option("--hbar2", aa.hbar2)->capture_default_str();
  add_common(co, aa.common);

  ConstantsArgs ca;
  auto* cn = app.add_subcommand("constants", "Derived scales from physical inputs");
  cn->add_option("--hbar", ca.hbar)->required();
  cn->add_option("--hbar1", ca.hbar1)->required();
  cn->add_option("--hbar2", ca.hbar2)->required();
  cn->add_option("--mass", ca.mass)->required();
  cn->add_option("--stiffness", ca.stiffness)->required();
  add_common(cn, ca.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 1;
  }

  try {
    if (sp->parsed()) run_spectrum(sa);
    else if (gr->parsed()) run_ground(ga);
    else if (un->parsed()) run_uncertainty(ua);
    else if (sw->parsed()) run_sweep(wa);
    else if (li->parsed()) run_limit(la);
    else if (in->parsed()) run_interact(ia);
    else if (al->parsed()) {
      if (ch->parsed()) run_algebra_check(aa);
      else if (fl->parsed()) run_algebra_flex(aa);
      else run_algebra_contract(aa);
    } else if (cn->parsed()) {
      run_constants(ca);
    }
    return 0;
  } catch (const flho::numerical_error& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return 2;
  } catch (const flho::io_error& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return 2;
  }
}
