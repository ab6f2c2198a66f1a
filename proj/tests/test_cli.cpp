#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/cli.hpp"

namespace fs = std::filesystem;
using bergman::cli::run;
using doctest::Approx;

namespace {

fs::path scratch(const std::string& name) {
  const char* dir = std::getenv("BERGMAN_TEST_TMP");
  const fs::path base = fs::path(dir ? dir : fs::temp_directory_path().string()) / "cli_scratch";
  fs::create_directories(base);
  const fs::path p = base / name;
  fs::remove(p);
  return p;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bergman");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("kernel command") {
  const fs::path out = scratch("kernel.csv");
  REQUIRE(invoke({"kernel", "--weight", "gamma", "--n", "2", "--alphas", "0", "--b", "1", "--out", out.string()}) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "n", "d", "y", "b", "value", "err_est", "route"});
  CHECK(std::stod(rows[1][5]) == Approx(0.1591549).epsilon(1e-7));

  REQUIRE(invoke({"kernel", "--n", "4", "--alphas", "0", "--out", out.string()}) == 0);
  CHECK(std::stod(read_csv(out)[1][5]) == Approx(0.0379954).epsilon(1e-6));

  REQUIRE(invoke({"kernel", "--n", "3", "--alphas", "0,5", "--d", "0,0.5", "--route", "holomorphic", "--out",
                  out.string()}) == 0);
  rows = read_csv(out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2][0] == "0");
  CHECK(rows[2][2] == "0.5");
  CHECK(rows[3][0] == "5");
  CHECK(rows[4][7] == "holomorphic-reduction");
}

TEST_CASE("usage errors exit 2 and write nothing") {
  const fs::path out = scratch("never.csv");
  CHECK(invoke({"kernel", "--n", "1", "--out", out.string()}) == 2);
  CHECK(invoke({"kernel", "--weight", "flat", "--out", out.string()}) == 2);
  CHECK(invoke({"kernel", "--alphas", "1,x", "--out", out.string()}) == 2);
  CHECK(invoke({"kernel", "--d", "25", "--y", "1", "--b", "1", "--out", out.string()}) == 2);
  CHECK(invoke({"kernel", "--weight", "expcap", "--route", "closed", "--out", out.string()}) == 2);
  CHECK(invoke({"kernel", "--format", "xml", "--out", out.string()}) == 2);
  CHECK(invoke({"kernel", "--no-such-flag", "--out", out.string()}) == 2);
  CHECK(invoke({"asym", "--alphas", "5", "--out", out.string()}) == 2);
  CHECK(invoke({"asym", "--alphas", "40,20,80", "--out", out.string()}) == 2);
  CHECK(invoke({"berezin", "--symbol", "sin", "--out", out.string()}) == 2);
  CHECK(invoke({"verify", "--level", "medium", "--out", out.string()}) == 2);
  CHECK(invoke({}) == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("asym command") {
  const fs::path out = scratch("asym.csv");
  REQUIRE(invoke({"asym", "--weight", "gamma", "--n", "2", "--b", "1", "--alphas", "20,40,80", "--out", out.string()}) == 0);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 5);
  CHECK(std::stod(rows[1][7]) == Approx(21.0 / 20).epsilon(1e-12));
  CHECK(std::stod(rows[2][7]) == Approx(41.0 / 40).epsilon(1e-12));
  CHECK(std::stod(rows[3][7]) == Approx(81.0 / 80).epsilon(1e-12));
  CHECK(rows[4][0] == "fit");
  CHECK(std::stod(rows[4][8]) == Approx(-1.0).epsilon(1e-6));
  CHECK(std::stod(rows[4][9]) == Approx(1.0).epsilon(1e-10));

  REQUIRE(invoke({"asym", "--weight", "logplus", "--n", "3", "--d", "0.3", "--y", "0.9", "--b", "1.1", "--alphas",
                  "25,50,100,200", "--out", out.string()}) == 0);
  const auto sweep = read_csv(out);
  CHECK(std::fabs(std::stod(sweep.back()[8]) + 1.0) < 0.2);
}

TEST_CASE("berezin command") {
  const fs::path out = scratch("berezin.csv");
  REQUIRE(invoke({"berezin", "--weight", "expcap", "--n", "3", "--symbol", "one", "--alphas", "0,10,100", "--b",
                  "0.5,2", "--out", out.string()}) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "b", "B_value", "g_b", "q1_pred", "q2_pred", "residual1", "residual2"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::fabs(std::stod(rows[i][2]) - 1.0) < 1e-8);

  REQUIRE(invoke({"berezin", "--weight", "gamma", "--n", "2", "--symbol", "exp", "--alphas", "100,400", "--b", "1",
                  "--out", out.string()}) == 0);
  rows = read_csv(out);
  const double q1 = std::stod(rows[2][4]);
  CHECK(std::fabs(std::stod(rows[2][6]) - q1) < std::fabs(std::stod(rows[1][6]) - q1));
  CHECK(std::stod(rows[2][6]) == Approx(q1).epsilon(0.02));
}

TEST_CASE("config file, flag override and JSON output") {
  const fs::path ini = scratch("run.ini");
  std::ofstream(ini) << "[weight]\nname = expcap\nn = 3\n\n[grid]\nalphas = 5, 20\nb = 1.5\n\n[tolerances]\ntol = 1e-11\n";
  const fs::path out = scratch("config.json");
  REQUIRE(invoke({"kernel", "--config", ini.string(), "--n", "4", "--format", "json", "--out", out.string()}) == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["n"] == 4);
  CHECK(doc["rows"][1]["alpha"] == 20.0);
  CHECK(doc["rows"][1]["b"] == 1.5);
  CHECK(doc["converged"] == true);

  const fs::path bad = scratch("bad.ini");
  std::ofstream(bad) << "[grid]\nalpha = 5\n";
  CHECK(invoke({"kernel", "--config", bad.string(), "--out", out.string()}) == 2);
}

TEST_CASE("CSV output is byte-identical regardless of thread count") {
  const std::vector<std::string> args = {"kernel", "--weight", "logplus", "--n", "3", "--alphas", "0,3,9",
                                         "--d", "0,0.2,0.7", "--y", "0.6,1.3"};
  const fs::path one = scratch("t1.csv"), four = scratch("t4.csv");
  setenv("BERGMAN_THREADS", "1", 1);
  auto a = args;
  a.insert(a.end(), {"--out", one.string()});
  REQUIRE(invoke(a) == 0);
  setenv("BERGMAN_THREADS", "4", 1);
  auto b = args;
  b.insert(b.end(), {"--out", four.string()});
  REQUIRE(invoke(b) == 0);
  unsetenv("BERGMAN_THREADS");
  CHECK(slurp(one) == slurp(four));
  CHECK(read_csv(one).size() == 19);
}

TEST_CASE("thread count") {
  setenv("BERGMAN_THREADS", "3", 1);
  CHECK(bergman::cli::thread_count() == 3);
  setenv("BERGMAN_THREADS", "0", 1);
  CHECK(bergman::cli::thread_count() >= 1);
  unsetenv("BERGMAN_THREADS");
}

TEST_CASE("verify command") {
  const fs::path out = scratch("verify.json");
  CHECK(invoke({"verify", "--level", "quick", "--out", out.string()}) == 0);
  CHECK(nlohmann::json::parse(slurp(out))["verdict"] == "pass");

  CHECK(invoke({"verify", "--omega-fault", "1.001", "--out", out.string()}) == 1);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["verdict"] == "fail");
  for (const auto& c : doc["checks"])
    if (c["id"] == "kernel.diagonal_identity") CHECK(c["pass"] == false);
}
