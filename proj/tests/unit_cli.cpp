#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "regdist/decide.hpp"
#include "regdist/standardize.hpp"

using namespace regdist;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* cli() {
  const char* p = std::getenv("REGDIST_CLI");
  REQUIRE_MESSAGE(p != nullptr, "REGDIST_CLI must point at the binary");
  return p;
}

RunResult run(const std::string& args, bool keep_stderr = false) {
  std::string cmd = std::string(cli()) + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const char* p = std::getenv("REGDIST_SCRATCH");
  fs::path dir = p ? fs::path(p) : fs::temp_directory_path() / "regdist_cli";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("decide json matches the library byte for byte") {
  SpaceSpec s;
  s.family = Family::B;
  s.n = 2;
  s.p = ExtReal::from(1, 2);
  s.q = ExtReal::from(3);
  s.sigma = parse_sequence("2^(2*j)*(1+j)^1");
  s.N = parse_sequence("2^(1*j)");
  std::string want = verdict_json(s, regularity(s)) + "\n";
  RunResult r = run("decide B -n 2 -p 1/2 -q 3 --sigma \"2^(2*j)*(1+j)^1\" --N \"2^(1*j)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == want);
}

TEST_CASE("decide emits csv and markdown") {
  RunResult csv = run("decide F -p 1 -q 2 --sigma \"2^(1*j)\" --N \"2^(1*j)\" --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("family,n,p,q,sigma,N,case_id,index_r,contained") == 0);
  CHECK(csv.out.find("F,1,1,2") != std::string::npos);
  RunResult md = run("decide F -p 1 -q 2 --sigma \"2^(1*j)\" --N \"2^(1*j)\" --format markdown");
  CHECK(md.exit_code == 0);
  CHECK(md.out.find("| contained | yes |") != std::string::npos);
}

TEST_CASE("invalid input exits with code 2") {
  CHECK(run("decide X -p 1 -q 1 --sigma 1 --N \"2^(1*j)\"").exit_code == 2);
  CHECK(run("decide B -p 1 -q 1 --sigma \"2^(j)*(1+j)\" --N \"2^(1*j)\"").exit_code == 2);
  CHECK(run("decide F -p inf -q 1 --sigma 1 --N \"2^(1*j)\"").exit_code == 2);
  CHECK(run("decide B -p 1 -q 1 --sigma 1 --N \"(1+j)^2\"").exit_code == 2);
  CHECK(run("decide B").exit_code == 2);   // missing required options
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("standardize csv equals the library output") {
  StandardizationMap m =
      build_map(parse_sequence("2^(1*j)"), parse_sequence("2^(0.5*j)"), 32);
  std::string want = standardization_csv(m, parse_sequence("2^(1*j)"));
  RunResult r = run("standardize --sigma \"2^(1*j)\" --N \"2^(0.5*j)\" -J 32");
  CHECK(r.exit_code == 0);
  CHECK(r.out == want);
}

TEST_CASE("boyd and atoms answer in json") {
  RunResult b = run("boyd --sigma \"2^(0.5*j)*(1+j)^-2\"");
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("\"alpha_upper\": \"1/2\"") != std::string::npos);
  CHECK(b.out.find("\"beta_lower\": \"1/2\"") != std::string::npos);
  RunResult a = run("atoms B -p 1 -q 1 --sigma \"2^(2*j)\" --N \"2^(1*j)\"");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"M_min\": 3") != std::string::npos);
  CHECK(a.out.find("\"L_min\": -1") != std::string::npos);
}

TEST_CASE("reference reports reproduce the checked-in tables") {
  const char* golden = std::getenv("REGDIST_GOLDEN");
  REQUIRE_MESSAGE(golden != nullptr, "REGDIST_GOLDEN must point at tests/golden");
  RunResult classical = run("report classical");
  CHECK(classical.exit_code == 0);
  CHECK(classical.out == slurp(fs::path(golden) / "classical.md"));
  RunResult knife = run("report knife-edge");
  CHECK(knife.exit_code == 0);
  CHECK(knife.out == slurp(fs::path(golden) / "knife_edge.md"));
}

TEST_CASE("verify runs an experiment out of a config file") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "quick.cfg";
  {
    std::ofstream out(cfg);
    out << "experiment = lacunary_l1\nb = (1+j)^-0.5\nK = 8\ngrid = 4096\nexpect = growing\n";
  }
  fs::path out1 = dir / "run1";
  fs::path out2 = dir / "run2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  RunResult r1 = run("verify lacunary_l1 --config " + cfg.string() + " --out " + out1.string());
  CHECK(r1.exit_code == 0);
  CHECK(fs::exists(out1 / "manifest.json"));
  CHECK(fs::exists(out1 / "lacunary.csv"));
  RunResult r2 = run("verify lacunary_l1 --config " + cfg.string() + " --out " + out2.string());
  // Deterministic up to the output directory name embedded in the manifest.
  auto scrub = [](std::string s, const std::string& dir) {
    for (std::size_t at; (at = s.find(dir)) != std::string::npos;) s.replace(at, dir.size(), "OUT");
    return s;
  };
  CHECK(scrub(r2.out, out2.string()) == scrub(r1.out, out1.string()));
  CHECK(slurp(out1 / "lacunary.csv") == slurp(out2 / "lacunary.csv"));

  // Mismatched experiment name on the command line is an input error.
  RunResult bad = run("verify extremal_series --config " + cfg.string() + " --out " +
                      (dir / "run3").string());
  CHECK(bad.exit_code == 2);
}

TEST_CASE("failed expectations exit with code 3") {
  fs::path dir = scratch_dir();
  fs::path cfg = dir / "failing.cfg";
  {
    std::ofstream out(cfg);
    // Square-summable coefficients cannot sustain growth.
    out << "experiment = lacunary_l1\nb = (1+j)^-2\nK = 8\ngrid = 4096\nexpect = growing\n";
  }
  RunResult r = run("verify lacunary_l1 --config " + cfg.string() + " --out " +
                        (dir / "runf").string(),
                    true);
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("experiment failure") != std::string::npos);
}
