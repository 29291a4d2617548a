#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("SCALEDIR_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SCALEDIR_BIN must point at the built binary");
  std::string command = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("scale command: stated example and exit codes") {
  RunResult ok = run_cli("scale --field laurent:2 --matrix \"[[X^-1,0],[0,X^-1]]\"");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("scale_exponent: 2") != std::string::npos);

  RunResult singular = run_cli("scale --field laurent:2 --matrix \"[[0,0],[0,1]]\"");
  CHECK(singular.exit_code == 1);
  CHECK(singular.output.find("singular") != std::string::npos);

  RunResult malformed = run_cli("scale --field laurent:2 --matrix \"[[1,huh],[0,1]]\"");
  CHECK(malformed.exit_code == 2);
  CHECK(malformed.output.find("position") != std::string::npos);

  RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 2);

  RunResult bad_prime = run_cli("reproduce ex22 --p 6 --N 10");
  CHECK(bad_prime.exit_code == 2);
}

TEST_CASE("reproduce exits zero exactly when every line matches") {
  RunResult r = run_cli("reproduce ex24 --p 3 --N 8 --format structured");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("ok=true") != std::string::npos);
  CHECK(r.output.find("match=false") == std::string::npos);

  RunResult r22 = run_cli("reproduce ex22 --p 2 --N 40");
  CHECK(r22.exit_code == 0);
  RunResult r23 = run_cli("reproduce ex23 --p 5 --N 41 --format structured");
  CHECK(r23.exit_code == 0);
}

TEST_CASE("module and inner-scale commands") {
  RunResult mod = run_cli("module --field laurent:2 --matrix \"[[X^-1,0],[0,X^-2]]\"");
  CHECK(mod.exit_code == 0);
  CHECK(mod.output.find("module_exponent: 3") != std::string::npos);

  RunResult inner = run_cli("inner-scale --field laurent:2 --matrix \"[[X^-1,0],[0,1]]\"");
  CHECK(inner.exit_code == 0);
  CHECK(inner.output.find("scale_exponent: 1") != std::string::npos);
}

TEST_CASE("structured output is byte-stable across runs") {
  const std::string cmd = "delta-seq --example ex23 --p 3 --N 21 --format structured";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("value=10/21") != std::string::npos);

  const std::string suite =
      "cayley check --field padic:5 --n 2 --samples 25 --seed 99 --format structured";
  RunResult c = run_cli(suite);
  RunResult d = run_cli(suite);
  CHECK(c.exit_code == 0);
  CHECK(c.output == d.output);
}

TEST_CASE("parse command echoes canonical forms") {
  RunResult el = run_cli("parse --field laurent:3 --element \"2*X^-1 + 1 + 2*X^2 + X^2\"");
  CHECK(el.exit_code == 0);
  CHECK(el.output.find("canonical: 2*X^-1+1") != std::string::npos);
  CHECK(el.output.find("valuation: -1") != std::string::npos);

  RunResult perm =
      run_cli("parse --perm \"mod 4: 0 -> +1 @1, 1 -> -1 @0, 2 -> +1 @3, 3 -> -1 @2\"");
  CHECK(perm.exit_code == 0);
  // Folds to the minimal modulus.
  CHECK(perm.output.find("mod 2: 0 -> +1 @1, 1 -> -1 @0") != std::string::npos);

  RunResult lat = run_cli("parse --field laurent:2 --lattice \"tail=2; minus={3}\"");
  CHECK(lat.exit_code == 0);
  CHECK(lat.output.find("canonical: tail=4; plus={2}") != std::string::npos);
}

TEST_CASE("delta-seq on explicit matrices and on the linear variants") {
  RunResult mats = run_cli(
      "delta-seq --field laurent:2 --matrix-a \"[[X^-1,0],[0,X^-1]]\" "
      "--matrix-b \"[[1,0],[0,X^-2]]\" --N 30 --format structured");
  CHECK(mats.exit_code == 0);
  // The basis-lattice route reproduces the monomial one: every delta_n = 1/2.
  CHECK(mats.output.find("delta_n\tn=30\tk=15\tdplus=30\tvalue=1/2") != std::string::npos);
  CHECK(mats.output.find("delta_plus_forward=1/2") != std::string::npos);

  RunResult linear = run_cli("delta-seq --example ex24 --on linear --p 5 --N 10");
  CHECK(linear.exit_code == 0);
  // L(alpha) = L(beta), so the linear pair of ex24 is at distance zero.
  CHECK(linear.output.find("delta: 0") != std::string::npos);

  RunResult zero_scale = run_cli(
      "delta-seq --field laurent:2 --matrix-a \"[[1,0],[0,1]]\" "
      "--matrix-b \"[[X^-1,0],[0,1]]\" --N 10");
  CHECK(zero_scale.exit_code == 1);  // identity does not move to infinity
}

TEST_CASE("flat subcommands run end to end") {
  RunResult joint = run_cli(
      "flat joint --perm \"mod 2: 0 -> +1 @1, 1 -> -1 @0\" "
      "--perm \"mod 2: 0 -> -1 @1, 1 -> +1 @0\" --window-lo -10 --window-hi 10 --cap 500 "
      "--format structured");
  CHECK(joint.exit_code == 0);
  CHECK(joint.output.find("exceeded_cap=true") != std::string::npos);

  RunResult orbits = run_cli(
      "flat orbits --perm \"mod 2: 0 -> +2 @0, 1 -> +0 @1; except 0 -> 1, 1 -> 2\" --j 0 "
      "--cap 50 --format structured");
  CHECK(orbits.exit_code == 0);
  CHECK(orbits.output.find("all_finite=false") != std::string::npos);
}
