// Exit-code and determinism contracts of the command-line tool.
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = LIEHERM_CLI_PATH;
const std::string kData = LIEHERM_DATA_DIR;

struct RunResult {
  int exit_code;
  std::string out;
};

std::string temp_path(const std::string& suffix) {
  char tmpl[] = "/tmp/lieherm_cli_XXXXXX";
  const int fd = mkstemp(tmpl);
  REQUIRE(fd >= 0);
  close(fd);
  std::remove(tmpl);
  return std::string(tmpl) + suffix;
}

RunResult run(const std::string& args) {
  const std::string out_path = temp_path(".out");
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return {WEXITSTATUS(status), buf.str()};
}

}  // namespace

TEST_CASE("classify: clean fixture exits 0, invalid file exits 2") {
  const auto ok = run("classify " + kData + "/abelian_n3.json --with-hs");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("lieherm/1") != std::string::npos);
  CHECK(ok.out.find("\"kahler\"") != std::string::npos);

  CHECK(run("classify " + kData + "/raw_invalid.json").exit_code == 2);
  CHECK(run("classify " + kData + "/missing.json").exit_code == 2);
}

TEST_CASE("hs: feasible 0, infeasible 1, error 2") {
  CHECK(run("hs " + kData + "/aa_hs_deformable.json").exit_code == 0);
  const auto heis = run("hs " + kData + "/heis3.json");
  CHECK(heis.exit_code == 1);
  CHECK(heis.out.find("min_residual") != std::string::npos);
  CHECK(run("hs " + kData + "/raw_invalid.json").exit_code == 2);
}

TEST_CASE("deform: deformed 0, not deformable 1, unsupported 2") {
  const auto ok = run("deform " + kData + "/aa_hs_deformable.json");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"a\"") != std::string::npos);

  CHECK(run("deform " + kData + "/c2_skt.json").exit_code == 1);
  CHECK(run("deform " + kData + "/aa_nonunimodular.json").exit_code == 1);

  const auto outside = run("deform " + kData + "/raw_outside_families.json");
  CHECK(outside.exit_code == 2);
  CHECK(outside.out.find("\"feasible\": false") != std::string::npos);
}

TEST_CASE("gen: deterministic output usable by the other commands") {
  const std::string tmp = temp_path(".json");
  CHECK(run("gen --kind aa_hs --n 3 --seed 7 --out " + tmp).exit_code == 0);
  CHECK(run("hs " + tmp).exit_code == 0);
  CHECK(run("deform " + tmp).exit_code == 0);

  const auto once = run("gen --kind c2_generic --n 4 --seed 9");
  const auto twice = run("gen --kind c2_generic --n 4 --seed 9");
  CHECK(once.exit_code == 0);
  CHECK(once.out == twice.out);
  std::remove(tmp.c_str());

  CHECK(run("gen --kind bogus").exit_code == 2);
}

TEST_CASE("verify: suites pass and print one line each") {
  const auto got = run("verify --suite characterization --seed 3");
  CHECK(got.exit_code == 0);
  CHECK(got.out.find("PASS") != std::string::npos);
  CHECK(run("verify --suite bogus").exit_code == 2);
}
