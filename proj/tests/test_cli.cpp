#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

// Spawns the installed command-line binary and checks its observable
// contract: exit codes, CSV/JSON shape, determinism, file side effects.

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "\"" FLHO_CLI_PATH "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("flho_cli_test_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("spectrum: csv shape, values, determinism") {
  const std::string args = "spectrum --l 2 --K 1 --kappa 1";
  const auto r1 = run_cli(args);
  REQUIRE(r1.status == 0);
  const auto rows = parse_csv(r1.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"index", "energy", "parity", "multiplicity_group"});
  CHECK(std::stod(rows[1][1]) == 1.0);
  CHECK(std::stod(rows[2][1]) == 1.0);
  CHECK(std::stod(rows[3][1]) == 2.5);
  CHECK(std::stod(rows[4][1]) == 2.5);
  CHECK(std::stod(rows[5][1]) == 3.0);
  // Doublets share a group label; the top singlet gets its own.
  CHECK(rows[1][3] == rows[2][3]);
  CHECK(rows[3][3] == rows[4][3]);
  CHECK(rows[5][3] != rows[4][3]);
  // parity column is textual
  CHECK((rows[1][2] == "even" || rows[1][2] == "odd"));

  const auto r2 = run_cli(args);
  CHECK(r2.status == 0);
  CHECK(r2.out == r1.out);  // byte-identical reruns
}

TEST_CASE("spectrum: json document") {
  const auto r = run_cli("spectrum --l 2 --K 1 --kappa 1 --format json");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "spectrum");
  CHECK(doc["params"]["l"] == 2);
  CHECK(doc["columns"].size() == 4);
  REQUIRE(doc["rows"].size() == 5);
  CHECK(doc["rows"][4][1].get<double>() == 3.0);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("spectrum --K 1 --kappa 1").status == 1);            // missing --l
  CHECK(run_cli("nosuchcommand").status == 1);
  CHECK(run_cli("spectrum --l 2 --K 1 --kappa 1 --format xml").status == 1);
  CHECK(run_cli("spectrum --l 2 --K 1 --kappa 1 --vectors 2").status == 1);  // vectors need --out
  CHECK(run_cli("").status == 1);                                    // a subcommand is required
  const auto help = run_cli("--help");
  CHECK(help.status == 0);
  CHECK(help.out.find("spectrum") != std::string::npos);
}

TEST_CASE("spectrum: eigenvector side file and --out determinism") {
  const auto out = temp_file("spec.csv");
  const std::string args = "spectrum --l 6 --K 1 --kappa 0.7 --vectors 3 --lowest 3 --out " + out.string();
  REQUIRE(run_cli(args).status == 0);
  const auto main1 = slurp(out);
  const auto side = fs::path(out.string() + ".vectors.csv");
  REQUIRE(fs::exists(side));
  const auto vec1 = slurp(side);
  const auto vrows = parse_csv(vec1);
  REQUIRE(vrows.size() == 14);  // header + 2l+1 rows
  REQUIRE(vrows[0].size() == 4);
  CHECK(vrows[0][0] == "m");
  CHECK(vrows[0][1] == "state_0");
  CHECK(std::stod(vrows[1][0]) == 6.0);    // m runs l..-l
  CHECK(std::stod(vrows[13][0]) == -6.0);

  REQUIRE(run_cli(args).status == 0);
  CHECK(slurp(out) == main1);
  CHECK(slurp(side) == vec1);
  fs::remove(out);
  fs::remove(side);
}

TEST_CASE("ground: suppressed zero point in the soft regime") {
  const auto r = run_cli("ground --l 100 --K 1 --kappa 1e-3");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].size() == 9);
  CHECK(rows[0][4] == "e0_numerical");
  CHECK(rows[1][3] == "soft");
  const double e0 = std::stod(rows[1][4]);
  CHECK(std::abs(e0 - 2.525e-3) <= 0.01 * 2.525e-3);
  CHECK(std::stod(rows[1][8]) < 0.1);  // far below the fixed hbar*omega/2
}

TEST_CASE("uncertainty: top state saturates hbar/2 at kappa = 1") {
  const auto r = run_cli("uncertainty --l 20 --K 1 --kappa 1 --state lz-top");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][9] == "hbar_half_ratio");
  CHECK(std::abs(std::stod(rows[1][9]) - 1.0) <= 1e-10);
  CHECK(rows[1][0] == "lz-top");

  CHECK(run_cli("uncertainty --l 20 --K 1 --kappa 1 --state index:99").status == 1);
  CHECK(run_cli("uncertainty --l 20 --K 1 --kappa 1 --state bogus").status == 1);
}

TEST_CASE("sweep: plot script, log axis, thread-count independence") {
  CHECK(run_cli("sweep --l 30 --K 1 --kappa-grid LOG:-3:0:1 --plot").status == 1);

  const auto out = temp_file("sweep.csv");
  const std::string args =
      "sweep --l 30 --K 1 --kappa-grid LOG:-3:0:1 --plot --out " + out.string();
  REQUIRE(run_cli(args).status == 0);
  const auto gp = fs::path(out.string() + ".gp");
  REQUIRE(fs::exists(gp));
  const auto script = slurp(gp);
  CHECK(script.find(out.string()) != std::string::npos);
  CHECK(script.find("set logscale x") != std::string::npos);
  const auto csv1 = slurp(out);
  const auto rows = parse_csv(csv1);
  REQUIRE(rows.size() == 5);  // header + 4 grid points
  CHECK(rows[0][0] == "kappa");

  // FLHO_THREADS env and --threads produce identical bytes.
  fs::remove(out);
  REQUIRE(run_cli(args + " --threads 4").status == 0);
  const auto csv_t4 = slurp(out);
  fs::remove(out);
  REQUIRE(run_cli(args, "FLHO_THREADS=3 ").status == 0);
  const auto csv_env = slurp(out);
  CHECK(csv_t4 == csv1);
  CHECK(csv_env == csv1);
  fs::remove(out);
  fs::remove(gp);
}

TEST_CASE("limit: deviation table matches the 1/l law") {
  const auto r = run_cli("limit --l 10000 --levels 5");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][3] == "deviation_analytic");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double n = std::stod(rows[i][0]);
    const double analytic = std::stod(rows[i][3]);
    const double expect = (n * n / 20000.0) / (n + 0.5);
    CHECK(std::abs(analytic - expect) <= 1e-12);
    CHECK(std::abs(std::stod(rows[i][2]) - analytic) <= 1e-8);
  }
  CHECK(run_cli("limit --l 10000 --levels 0").status == 1);
}

TEST_CASE("interact: attractive pair energy at equal stiffness") {
  const auto r = run_cli("interact --l 30 --K 1 --kappa 1 --n1 1 --n2 1");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][5] == "delta");
  CHECK(std::abs(std::stod(rows[1][5]) + 1.0) <= 1e-9);
  CHECK(run_cli("interact --l 2 --K 1 --kappa 1 --n1 5 --n2 5").status == 1);
}

TEST_CASE("algebra check: verdicts and the numerical exit path") {
  CHECK(run_cli("algebra check --file /nonexistent_zz.json").status == 3);

  const auto heis = temp_file("heis.json");
  {
    std::ofstream os(heis);
    os << R"({"dim": 3, "entries": [[0, 1, 2, 1.0]]})";
  }
  const auto r = run_cli("algebra check --file " + heis.string());
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][5] == "verdict");
  CHECK(rows[1][5] == "compound");
  CHECK(std::stod(rows[1][2]) == 0.0);  // killing_det
  fs::remove(heis);

  // A basis that fails the closure identity cannot be classified.
  const auto broken = temp_file("broken.json");
  {
    std::ofstream os(broken);
    os << R"({"dim": 3, "entries": [[0, 1, 2, 1.0], [1, 2, 0, 1.0], [2, 0, 1, 1.0], [0, 1, 0, 0.5]]})";
  }
  const auto rb = run_cli("algebra check --file " + broken.string());
  CHECK(rb.status == 2);
  CHECK(rb.out.find("numerical") != std::string::npos);
  fs::remove(broken);
}

TEST_CASE("algebra flex and contract") {
  const auto r = run_cli("algebra flex --hbar 1 --hbar1 1 --hbar2 1");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][5] == "semisimple");
  CHECK(std::abs(std::stod(rows[1][2]) + 8.0) <= 1e-12);

  const auto rc = run_cli("algebra contract --hbar 1 --hbar1 1 --hbar2 1 --steps 8");
  REQUIRE(rc.status == 0);
  const auto crows = parse_csv(rc.out);
  REQUIRE(crows.size() == 9);
  CHECK(crows[0][0] == "t");
  double prev = 1e300;
  for (std::size_t i = 1; i < crows.size(); ++i) {
    const double det = std::abs(std::stod(crows[i][1]));
    CHECK(det < prev);
    prev = det;
  }
  CHECK(crows[1][2] == "semisimple");
  CHECK(crows[8][2] == "compound");
  CHECK(std::stod(crows[8][1]) == 0.0);
}

TEST_CASE("constants: representation size from the scale product") {
  const auto r = run_cli("constants --hbar 1 --hbar1 0.25 --hbar2 0.25 --mass 1 --stiffness 1");
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].size() == 15);
  CHECK(rows[0][5] == "l");
  CHECK(rows[1][5] == "4");
  CHECK(std::stod(rows[1][6]) == 0.5);   // Q
  CHECK(std::stod(rows[1][7]) == 0.5);   // P
  CHECK(std::stod(rows[1][8]) == 0.25);  // J
  CHECK(rows[1][14] == "no");            // no rescale warning
}
