#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "nlps/constructions.hpp"
#include "nlps/core.hpp"
#include "nlps/io.hpp"

using namespace nlps;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "nlps_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RunResult run_cli(const std::string& args) {
  const fs::path dir = work_dir();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd =
      std::string(NLPS_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

StateSet computational_basis_333() {
  StateSet set{SystemShape{{3, 3, 3}}, {}, "computational-basis"};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        set.states.push_back(ProductState{
            "e_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k),
            {basis_ket(3, i), basis_ket(3, j), basis_ket(3, k)}});
  return set;
}

}  // namespace

TEST_CASE("construct lemma1 --d 3 writes a 7-state document") {
  const fs::path out = work_dir() / "lemma1_3.json";
  const RunResult r = run_cli("construct lemma1 --d 3 -o " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("7 states on (3, 3, 3)") != std::string::npos);
  const StateSet set = parse_state_set(slurp(out));
  CHECK(set.size() == 7);
  CHECK(set.shape == SystemShape{{3, 3, 3}});
}

TEST_CASE("construct theorem1 --dims 3,4,5 reports 13 states") {
  const RunResult r = run_cli("construct theorem1 --dims 3,4,5");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("13 states on (3, 4, 5)") != std::string::npos);
  const StateSet set = parse_state_set(r.out);
  CHECK(set.size() == 13);
}

TEST_CASE("construct multipartite with nine parties reports 21 states") {
  const RunResult r = run_cli("construct multipartite --dims 3,3,3,3,3,3,3,3,3");
  CHECK(r.exit_code == 0);
  const StateSet set = parse_state_set(r.out);
  CHECK(set.size() == 21);
}

TEST_CASE("construct rejects invalid parameters with exit 1") {
  CHECK(run_cli("construct lemma1 --d 2").exit_code == 1);
  CHECK(run_cli("construct multipartite --dims 3,3,3,3").exit_code == 1);
}

TEST_CASE("verify built-in lemma2 d=3: certified, exit 0") {
  const RunResult r = run_cli("verify --builtin lemma2 --d 3 --format machine --no-timing");
  CHECK(r.exit_code == 0);
  const ParsedCertificate cert = parse_certificate(r.out);
  CHECK(cert.conclusion == "CertifiedFirstRoundTrivial");
  CHECK(cert.cardinality == 13);
  REQUIRE(cert.parties.size() == 3);
  for (const auto& p : cert.parties) CHECK(p.verdict == "Trivial");
}

TEST_CASE("verify a computational-basis file: exit 3 with a witness printed") {
  const fs::path file = work_dir() / "basis333.json";
  write_text_file(file.string(), serialize_state_set(computational_basis_333()));
  const RunResult r = run_cli("verify " + file.string());
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("NontrivialMeasurementExists") != std::string::npos);
  CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("verify a duplicate-state file: exit 2 listing the pair") {
  StateSet broken = lemma1_set(3);
  broken.states.push_back(broken.states.front());
  broken.states.back().label = "phi_dup";
  const fs::path file = work_dir() / "dup.json";
  write_text_file(file.string(), serialize_state_set(broken));
  const RunResult r = run_cli("verify " + file.string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("OrthogonalityFailed") != std::string::npos);
  CHECK(r.out.find("phi_1") != std::string::npos);
  CHECK(r.out.find("phi_dup") != std::string::npos);
}

TEST_CASE("verify rejects a malformed document with exit 1") {
  const fs::path file = work_dir() / "bad.json";
  write_text_file(file.string(), "{\"format_version\": \"1\"");
  const RunResult r = run_cli("verify " + file.string());
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("machine output is byte-identical across runs with --no-timing") {
  const std::string args = "verify --builtin theorem1 --dims 3,3,4 --format machine --no-timing";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("compare multipartite emits the expected CSV row") {
  const RunResult r = run_cli("compare multipartite --n 9 --d 3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "params,ours,prior,prior_label,advantage\n9x3,21,28,n(2d-3)+1,7\n");
}

TEST_CASE("compare tripartite --max 4 yields the four grid rows") {
  const RunResult r = run_cli("compare tripartite --max 4 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "params,ours,prior,prior_label,advantage\n"
                 "3x3x3,7,9,2(n1+n3)-3,2\n"
                 "3x3x4,9,11,2(n1+n3)-3,2\n"
                 "3x4x4,11,11,2(n1+n3)-3,0\n"
                 "4x4x4,10,13,2(n1+n3)-3,3\n");
}

TEST_CASE("sweep lemma1 over d = 3..6 certifies four sets") {
  const RunResult r = run_cli("sweep lemma1 --d 3..6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lemma1 d=3: CertifiedFirstRoundTrivial (7 states)") != std::string::npos);
  CHECK(r.out.find("lemma1 d=6: CertifiedFirstRoundTrivial (16 states)") != std::string::npos);
  CHECK(r.out.find("swept 4 sets: all CertifiedFirstRoundTrivial") != std::string::npos);
}

TEST_CASE("sweep theorem1 --max 4 covers the small grid") {
  const RunResult r = run_cli("sweep theorem1 --max 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("swept 4 sets: all CertifiedFirstRoundTrivial") != std::string::npos);
}

TEST_CASE("sweep multipartite --n 7..9 --d 3 passes") {
  const RunResult r = run_cli("sweep multipartite --n 7..9 --d 3 --parallelism 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("swept 3 sets: all CertifiedFirstRoundTrivial") != std::string::npos);
}

TEST_CASE("usage errors exit with status 1") {
  CHECK(run_cli("verify").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("compare tripartite").exit_code == 1);
}
