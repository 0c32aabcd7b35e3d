#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qdiscord/cli.hpp"
#include "qdiscord/csv.hpp"
#include "qdiscord/svg.hpp"
#include "qdiscord/xstate.hpp"

using namespace qdiscord;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qdiscord_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

csv::Table read_table(const fs::path& p) {
  std::ifstream f(p);
  return csv::parse(f);
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(csv::format_number(0.0) == "0");
  CHECK(csv::format_number(0.5) == "0.5");
  CHECK(csv::format_number(std::log(2.0)) == "0.69314718056");
  CHECK(csv::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(csv::format_number(1.5e-5) == "1.50000000000e-05");
  CHECK(csv::format_number(-2.5e-7) == "-2.50000000000e-07");
  CHECK(csv::format_number(1e-4) == "0.0001");
  CHECK(csv::format_number(123456789.0) == "123456789");
  CHECK(csv::format_number(std::nan("")) == "nan");
}

TEST_CASE("csv round trip") {
  csv::Table t;
  t.metadata = {{"model", "tfim h=2"}, {"regime", "TFIM_Para"}};
  t.header = {"a", "b"};
  t.add_row({"1", "x"});
  t.add_row({"2", ""});
  CHECK_THROWS_AS(t.add_row({"3"}), DimensionError);
  std::ostringstream os;
  csv::write(os, t);
  CHECK(os.str() == "# model: tfim h=2\n# regime: TFIM_Para\na,b\n1,x\n2,\n");
  std::istringstream is(os.str());
  const auto back = csv::parse(is);
  CHECK(back.metadata == t.metadata);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(csv::parse(ragged), ValidationError);
}

TEST_CASE("svg rendering") {
  svg::Plot p;
  p.title = "D < 1 & more";
  p.log_x = true;
  p.series.push_back({"exact", {1, 10, 100}, {1e-2, 1e-4, 0.0}, "#000000", false});
  const auto s = svg::render(p);
  CHECK(s.find("<svg") == 0);
  CHECK(s.find("polyline") != std::string::npos);
  CHECK(s.find("&lt;") != std::string::npos);
  CHECK(s.find("1e-4") != std::string::npos);
  svg::Plot empty;
  empty.series.push_back({"none", {1}, {-1}, "#000000", false});
  CHECK_THROWS_AS(svg::render(empty), ArgumentError);
}

TEST_CASE("discord subcommand") {
  const auto r = run_cli({"discord", "--sz", "0", "--xx", "1", "--yy", "-1", "--zz", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("D = 0.69314718056\n") == 0);
  CHECK(r.out.find("method = analytic") != std::string::npos);

  const auto o = run_cli({"discord", "--xx", "1", "--yy", "-1", "--zz", "1", "--oracle"});
  CHECK(o.code == 0);
  CHECK(o.out.find("D = 0.69314718056") == 0);
  CHECK(o.out.find("method = oracle") != std::string::npos);

  CHECK(run_cli({"discord", "--xx", "2", "--yy", "0", "--zz", "0"}).code == 2);
  CHECK(run_cli({"discord", "--xx", "0.9", "--yy", "0.9", "--zz", "0.9"}).code == 2);
  CHECK(run_cli({"discord", "--yy", "0", "--zz", "0"}).code == 2);
}

TEST_CASE("scan subcommand") {
  const auto path = scratch("tfim2.csv");
  const auto r = run_cli({"scan", "--model", "tfim", "--h", "2", "--rmin", "5", "--rmax", "60",
                          "--source", "exact", "--out", path.string()});
  REQUIRE(r.code == 0);
  const auto t = read_table(path);
  CHECK(t.header == std::vector<std::string>{"r", "sz", "xx", "yy", "zz", "D", "D_asym", "J",
                                             "I", "lemma1"});
  REQUIRE(t.rows.size() == 56);
  CHECK(t.rows.front().front() == "5");
  CHECK(t.rows.back().front() == "60");
  bool has_regime = false;
  for (const auto& [k, v] : t.metadata)
    if (k == "regime") has_regime = v == "TFIM_Para";
  CHECK(has_regime);

  // Recomputing D from each row's correlators reproduces the row.
  for (const auto& row : t.rows) {
    const double sz = std::stod(row[1]);
    const PairCorrelators c = PairCorrelators::symmetric(sz, std::stod(row[2]), std::stod(row[3]),
                                                         std::stod(row[4]));
    CHECK(std::abs(discord_analytic(c, 1e-9) - std::stod(row[5])) < 1e-9);
    CHECK(row[9] == "true");
  }
}

TEST_CASE("scan is deterministic and writes svg") {
  const auto a = scratch("det_a.csv");
  const auto b = scratch("det_b.csv");
  for (const auto& p : {a, b})
    REQUIRE(run_cli({"scan", "--model", "xyfield", "--gamma", "0.5", "--h", "0.7", "--rmin", "2",
                     "--rmax", "30", "--out", p.string(), "--format", "both", "--fit"})
                .code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(scratch("det_a.svg")) == slurp(scratch("det_b.svg")));
  CHECK(slurp(scratch("det_a.svg")).find("</svg>") != std::string::npos);
}

TEST_CASE("scan errors map to exit codes") {
  CHECK(run_cli({"scan", "--model", "bogus"}).code == 2);
  CHECK(run_cli({"scan", "--model", "tfim", "--h", "-1"}).code == 2);
  CHECK(run_cli({"scan", "--model", "xy", "--alpha", "1", "--source", "asymptotic"}).code == 2);
  CHECK(run_cli({"scan", "--model", "xxz", "--delta", "0.5"}).code == 2);
  CHECK(run_cli({"scan", "--model", "tfim", "--h", "2", "--format", "svg"}).code == 2);
  CHECK(run_cli({"scan", "--model", "tfim", "--h", "2", "--out", "/nonexistent/dir/x.csv"}).code ==
        2);
  // Numeric underflow in a fit.
  CHECK(run_cli({"scan", "--model", "tfim", "--h", "2", "--rmin", "30", "--rmax", "60",
                 "--precision", "double", "--fit"})
            .code == 3);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("thermal subcommand") {
  const auto r = run_cli({"thermal", "--model", "xxz", "--delta", "1", "--n", "8", "--beta", "1",
                          "--cut", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("satisfied=true") != std::string::npos);
  CHECK(r.out.find("bound=6.92820323028") != std::string::npos);
  CHECK(r.out.find("all_satisfied = true") != std::string::npos);

  const auto path = scratch("thermal.csv");
  const auto all = run_cli({"thermal", "--model", "tfim", "--h", "1", "--n", "4", "--beta",
                            "0.5,inf", "--all-cuts", "--out", path.string()});
  CHECK(all.code == 0);
  CHECK(read_table(path).rows.size() == 2 * 9);
  CHECK(run_cli({"thermal", "--model", "tfim", "--n", "13"}).code == 2);
  CHECK(run_cli({"thermal", "--model", "tfim", "--n", "4", "--cut", "4"}).code == 2);
  CHECK(run_cli({"thermal", "--model", "tfim", "--n", "4", "--beta", "abc"}).code == 2);
}

TEST_CASE("prefactors subcommand") {
  const auto r = run_cli({"prefactors", "--eta", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("A_x = 0.588352664198") != std::string::npos);
  const auto t = run_cli({"prefactors", "--model", "tfim", "--h", "0.5"});
  CHECK(t.out.find("A2 = 1.20616026738") != std::string::npos);
  CHECK(run_cli({"prefactors", "--eta", "1.5"}).code == 2);
}

TEST_CASE("continuity subcommand") {
  const auto r = run_cli({"continuity", "--pairs", "30", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("flagged = 0") != std::string::npos);
  CHECK(run_cli({"continuity", "--tmax", "0.5"}).code == 2);
}

TEST_CASE("config file with flag override") {
  const auto cfg = scratch("scan.cfg");
  {
    std::ofstream f(cfg);
    f << "# TFIM paramagnet\ncommand = scan\nmodel = tfim\nh = 3  # strong field\nrmin = 2\n"
         "rmax = 12\nfit = false\n";
  }
  const auto a = run_cli({"--config", cfg.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("# model: tfim h=3") != std::string::npos);
  const auto b = run_cli({"scan", "--config", cfg.string(), "--h", "2"});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("# model: tfim h=2") != std::string::npos);

  const auto bad = scratch("bad.cfg");
  {
    std::ofstream f(bad);
    f << "command = scan\nnot a pair\n";
  }
  CHECK(run_cli({"--config", bad.string()}).code == 2);
  CHECK(run_cli({"--config", scratch("missing.cfg").string()}).code == 2);
}
