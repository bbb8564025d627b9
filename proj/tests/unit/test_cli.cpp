#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("shellgap_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run shellgap(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("SHELLGAP_THREADS=2 '") + SHELLGAP_BIN + "' " + args + " >'" + out.string() +
                          "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string config(const std::string& name) { return std::string(SHELLGAP_CONFIGS) + "/" + name; }

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("gaps with the default method set") {
  const Run r = shellgap("gaps -c '" + config("default.cfg") + "'");
  CHECK(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(r.out.rfind("method,n_mode,f_lower_hz,f_upper_hz,width_hz,status\n", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "ok");
}

TEST_CASE("gaps at tiny filling fraction: Foldy and CPA coincide") {
  const double a = std::sqrt(1e-3 / 3.141592653589793) * 0.08;
  const auto cfg = write_config("sparse.cfg", "shell.a = " + std::to_string(a) + "\nshell.thickness = 0.00002\n");
  const Run r = shellgap("gaps -m foldy,cpa -c '" + cfg.string() + "'");
  CHECK(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  for (int mode = 0; mode < 2; ++mode) {
    for (int edge : {2, 3}) {
      const double f = std::stod(rows[1 + mode][edge]);
      const double c = std::stod(rows[3 + mode][edge]);
      CAPTURE(mode);
      CAPTURE(edge);
      CHECK(std::abs(f / c - 1.0) <= 1e-3);
    }
  }
}

TEST_CASE("gaps: MAE has a single row; empty method list is a usage error") {
  const Run mae = shellgap("gaps -m mae -c '" + config("default.cfg") + "'");
  CHECK(mae.code == 0);
  const auto rows = csv(mae.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "mae");
  CHECK(rows[1][1] == "0");

  CHECK(shellgap("gaps -m '' -c '" + config("default.cfg") + "'").code == 2);
  CHECK(shellgap("gaps -m bogus -c '" + config("default.cfg") + "'").code == 2);
}

TEST_CASE("every requested method failing is a numerical failure") {
  const auto cfg = write_config("small.cfg", "shell.a = 0.005\nshell.thickness = 0.0002\n");
  const Run r = shellgap("gaps -m mae -c '" + cfg.string() + "'");
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(r.err.find("NoRootFound") != std::string::npos);
}

TEST_CASE("malformed config: exit 2 and no output file") {
  const auto bad = write_config("bad.cfg", "shell.a = 0.02\nshell.radius = 3\n");
  const fs::path out = scratch() / "never.csv";
  fs::remove(out);
  const Run r = shellgap("gaps -c '" + bad.string() + "' -o '" + out.string() + "'");
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(r.err.find("unknown key") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  CHECK(shellgap("gaps -c /nonexistent.cfg").code == 2);
  CHECK(shellgap("gaps").code == 2);
  CHECK(shellgap("frobnicate -c x").code == 2);
}

TEST_CASE("band structure, Foldy: curves avoid the closed-form gaps") {
  const Run r = shellgap("band-structure -m foldy --grid 4000 -c '" + config("default.cfg") + "'");
  CHECK(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() > 100);
  CHECK(r.out.rfind("betaL,k_oL,frequency_hz,branch,method\n", 0) == 0);
  // Closed-form edges from the gaps command.
  const auto gaps = csv(shellgap("gaps -m foldy -c '" + config("default.cfg") + "'").out);
  for (int mode = 0; mode < 2; ++mode) {
    const double lo = std::stod(gaps[1 + mode][2]);
    const double hi = std::stod(gaps[1 + mode][3]);
    int inside = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double f = std::stod(rows[i][2]);
      inside += (f > lo && f < lo + 0.5 * (hi - lo));
    }
    CAPTURE(mode);
    CHECK(inside == 0);
  }
}

TEST_CASE("band structure, Rayleigh: JSON output") {
  const fs::path out = scratch() / "bands.json";
  const Run r = shellgap("band-structure -m rayleigh -N 2 --grid 300 --points 6 --gamma-x-only -c '" +
                         config("default.cfg") + "' -o '" + out.string() + "'");
  CHECK(r.code == 0);
  REQUIRE(fs::exists(out));
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("method") == "rayleigh");
  CHECK(j.at("curves").size() >= 3);
  CHECK(j.at("config").at("lattice").at("L") == 0.08);

  CHECK(shellgap("band-structure -m mae -c '" + config("default.cfg") + "'").code == 2);
  CHECK(shellgap("band-structure -m foldy --f-lo 500 --f-hi 100 -c '" + config("default.cfg") + "'").code == 2);
}

TEST_CASE("sweeps") {
  const Run r = shellgap("sweep --var radius --lo 0.005 --hi 0.0395 --samples 60 -c '" + config("default.cfg") + "'");
  CHECK(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 61);
  CHECK(rows[0][0] == "x");
  CHECK(rows[0].back() == "flags");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(3.141592653589793 * 2.5e-5 / 0.0064));
  CHECK(std::stod(rows[60][1]) == doctest::Approx(3.141592653589793 * 0.0395 * 0.0395 / 0.0064));
  CHECK(rows[1].back().find("n0_above_bragg") != std::string::npos);

  const Run e = shellgap("sweep --var youngs --lo 1e5 --hi 2e7 --samples 4 -m foldy -c '" + config("default.cfg") + "'");
  CHECK(e.code == 0);
  CHECK(csv(e.out)[0].size() == 9);

  const fs::path out = scratch() / "sweep.json";
  CHECK(shellgap("sweep --var thickness --lo 0.00025 --hi 0.0015 --samples 3 -c '" + config("default.cfg") +
                 "' -o '" + out.string() + "'")
            .code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("rows").size() == 3);
  CHECK(j.at("variable") == "thickness");

  CHECK(shellgap("sweep --var radius --lo 0.01 --hi 0.03 --samples 1 -c '" + config("default.cfg") + "'").code == 2);
  CHECK(shellgap("sweep --var radius --lo 0.03 --hi 0.01 --samples 3 -c '" + config("default.cfg") + "'").code == 2);
  CHECK(shellgap("sweep --var density --lo 1 --hi 2 --samples 3 -c '" + config("default.cfg") + "'").code == 2);
}
