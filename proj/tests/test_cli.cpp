#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "lzeros/cli.hpp"

namespace cli = lzeros::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const char* name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("solve prints the first zeta zero to 60 digits") {
  auto r = run({"solve", "zeta", "--n", "1", "--digits", "60", "--no-cache"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("14.134725141734693790457251983562470270784257115699243175685567") != std::string::npos);
}

TEST_CASE("a missing Davenport-Heilbronn solution exits with 2") {
  auto r = run({"solve", "dh", "--n", "44", "--digits", "10", "--no-cache"});
  CHECK(r.code == cli::kGap);
  CHECK(r.out.find("gap") != std::string::npos);
  CHECK(r.out.find("85.5") != std::string::npos);
}

TEST_CASE("usage errors exit with 64") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"solve", "zeta"}).code == cli::kUsage);
  CHECK(run({"solve", "zeta", "--n", "1", "--digits", "5"}).code == cli::kUsage);
  CHECK(run({"solve", "eta", "--n", "1"}).code == cli::kUsage);
  CHECK(run({"solve", "dirichlet", "--n", "1"}).code == cli::kUsage);
  CHECK(run({"solve", "dirichlet", "--k", "7", "--j", "9", "--n", "1"}).code == cli::kUsage);
  CHECK(run({"solve", "zeta", "--n", "5:1"}).code == cli::kUsage);
  CHECK(run({"solve", "zeta", "--n", "1.5"}).code == cli::kUsage);
  CHECK(run({"solve", "zeta", "--n", "1", "--format", "xml"}).code == cli::kUsage);
  CHECK(run({"solve", "zeta", "--n", "1", "--mode", "fast"}).code == cli::kUsage);
  CHECK(run({"solve", "zeta", "--n", "1", "--shrink", "0.5"}).code == cli::kUsage);
  CHECK(run({"gue", "dh"}).code == cli::kUsage);
  auto r = run({"solve", "zeta", "--n", "1", "--digits", "5"});
  CHECK(r.err.find("--digits") != std::string::npos);
}

TEST_CASE("runtime errors exit with 1") {
  // zeta has no zero with n = 0
  CHECK(run({"solve", "zeta", "--n", "0", "--no-cache"}).code == cli::kError);
}

TEST_CASE("csv and json output, ordered by n") {
  auto r = run({"solve", "dirichlet", "--k", "7", "--j", "2", "--n", "-2:2", "--digits", "12", "--format", "csv",
                "--threads", "2", "--no-cache"});
  REQUIRE(r.code == cli::kOk);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "family,n,status,mode,digits,t_n,residual,gap_lo,gap_hi,jump");
  CHECK(ls[1].rfind("dirichlet:7:2,-2,ok,exact,12,-9.893543794097,", 0) == 0);
  CHECK(ls[3].rfind("dirichlet:7:2,0,ok,exact,12,-2.509374552929,", 0) == 0);
  CHECK(ls[5].rfind("dirichlet:7:2,2,ok,", 0) == 0);

  auto j = run({"solve", "zeta", "--n", "1:2", "--digits", "15", "--format", "json", "--no-cache"});
  REQUIRE(j.code == cli::kOk);
  auto doc = nlohmann::json::parse(j.out);
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["n"] == 1);
  CHECK(doc[0]["t_n"] == "14.134725141734693");
  CHECK(doc[1]["status"] == "ok");
}

TEST_CASE("cache: solve once, read back at fewer digits without solving") {
  TempDir dir("lzeros_cli_cache");
  const std::string cache = (dir.path / "z.csv").string();
  CHECK(run({"solve", "zeta", "--n", "2", "--digits", "10", "--cache", cache, "--no-solve"}).code == cli::kError);

  auto first = run({"solve", "zeta", "--n", "2", "--digits", "40", "--cache", cache});
  REQUIRE(first.code == cli::kOk);
  auto second = run({"solve", "zeta", "--n", "2", "--digits", "20", "--cache", cache, "--no-solve"});
  REQUIRE(second.code == cli::kOk);
  CHECK(second.out.find("21.02203963877155499262") != std::string::npos);
  CHECK(second.out.find("21.022039638771554992628") == std::string::npos);
  // warm reruns are byte-identical
  CHECK(run({"solve", "zeta", "--n", "2", "--digits", "40", "--cache", cache}).out == first.out);
  CHECK(run({"solve", "zeta", "--n", "2", "--digits", "20", "--cache", cache}).out == second.out);
  // asking for more digits than cached is a miss
  CHECK(run({"solve", "zeta", "--n", "2", "--digits", "80", "--cache", cache, "--no-solve"}).code == cli::kError);
}

TEST_CASE("cache directory from the environment") {
  TempDir dir("lzeros_cli_env");
  ::setenv(cli::kCacheEnv, dir.path.c_str(), 1);
  auto r = run({"solve", "zeta", "--n", "3", "--digits", "12"});
  CHECK(r.code == cli::kOk);
  CHECK(std::filesystem::exists(dir.path / "zeros.csv"));
  CHECK(run({"solve", "zeta", "--n", "3", "--digits", "12", "--no-solve"}).out == r.out);
  ::unsetenv(cli::kCacheEnv);
}

TEST_CASE("count emits a staircase") {
  auto r = run({"count", "zeta", "--T", "99.5:100.5", "--step", "1"});
  REQUIRE(r.code == cli::kOk);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "T,N0,N,S");
  CHECK(ls[2].rfind("100.5000,29.000000,29.000000,", 0) == 0);

  auto d = run({"count", "dirichlet", "--k", "7", "--j", "2", "--T", "-10:10", "--step", "20"});
  REQUIRE(d.code == cli::kOk);
  CHECK(lines(d.out).size() == 3);
}

TEST_CASE("scan reports only the Davenport-Heilbronn gaps") {
  auto r = run({"scan", "dh", "--n", "40:50", "--digits", "10", "--no-cache"});
  CHECK(r.code == cli::kGap);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "dh n=40..50: 9 converged, 2 missing");
  CHECK(ls[1].find("44") != std::string::npos);
  CHECK(ls[2].find("45") != std::string::npos);
  CHECK(ls[1].find("jump 2.0") != std::string::npos);
}

TEST_CASE("primes and gue produce their csv tables") {
  auto p = run({"primes", "zeta", "--zeros", "50", "--x", "2:6", "--digits", "10", "--no-cache"});
  REQUIRE(p.code == cli::kOk);
  auto ls = lines(p.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "x,pi_reconstructed,pi_exact");
  CHECK(ls[1].rfind("2.5000,", 0) == 0);
  CHECK(ls[4].substr(ls[4].rfind(',') + 1) == "3");

  auto g = run({"gue", "zeta", "--M", "1", "--N", "200", "--bin", "0.1", "--digits", "10", "--no-cache"});
  REQUIRE(g.code == cli::kOk);
  auto gl = lines(g.out);
  REQUIRE(gl.size() == 31);
  CHECK(gl[0] == "x_mid,empirical,kernel");
  CHECK(gl[1].rfind("0.050000,", 0) == 0);
}
