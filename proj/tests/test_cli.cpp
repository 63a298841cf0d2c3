#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "tspace/jsonio.hpp"

using namespace tspace;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(TSPACE_CLI_BIN) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

Json parse_out(const CliResult& r) {
  auto j = Json::parse(r.out, nullptr, false);
  REQUIRE(!j.is_discarded());
  return j;
}

}  // namespace

TEST_CASE("member: x^4 + x^5 lies in W_1") {
  auto r = run_cli("member --q 2 --space W:1 --poly \"x^4+x^5\"");
  CHECK(r.exit_code == 0);
  auto j = parse_out(r);
  CHECK(j.at("verdict") == "member");
  CHECK(j.contains("steps"));
}

TEST_CASE("member: x against V:0 over GF(3) comes back nonmember via functional") {
  auto r = run_cli("member --q 3 --space V:0 --poly x --cutoff 100");
  CHECK(r.exit_code == 0);
  auto j = parse_out(r);
  CHECK(j.at("verdict") == "nonmember");
  CHECK(j.contains("functional"));
}

TEST_CASE("covers: V:0,V:1 over GF(3) yields a member certificate for x") {
  auto r = run_cli("covers --q 3 --spaces V:0,V:1 --cutoff 1000");
  CHECK(r.exit_code == 0);
  auto j = parse_out(r);
  CHECK(j.at("covers") == true);
  CHECK(j.at("verdict") == "member");
  CHECK(j.at("steps").size() >= 3);
}

TEST_CASE("reduce: x^13 mod W2 is x^7") {
  auto r = run_cli("reduce --q 2 --space W2 --poly x^13");
  CHECK(r.exit_code == 0);
  auto j = parse_out(r);
  CHECK(j.at("canonical") == "x^7");
  CHECK(j.at("certificate_checks") == true);
}

TEST_CASE("functional: W:1 at period 3 separates x") {
  auto r = run_cli("functional --q 2 --space W:1 --period 3 --target x");
  CHECK(r.exit_code == 0);
  auto j = parse_out(r);
  CHECK(j.at("found") == true);
  CHECK(j.at("validated") == true);
}

TEST_CASE("dim: P at D=13 in the quotient is full") {
  auto r = run_cli("dim --q 2 --space P --truncate 13");
  CHECK(r.exit_code == 0);
  auto j = parse_out(r);
  CHECK(j.at("dimension") == 13);
}

TEST_CASE("replay: the shipped P chain passes, its twin fails nonzero") {
  auto good = run_cli(std::string("replay --script ") + TSPACE_SCRIPT_DIR + "/p_chain.json");
  CHECK(good.exit_code == 0);
  CHECK(parse_out(good).at("pass") == true);
  auto bad = run_cli(std::string("replay --script ") + TSPACE_SCRIPT_DIR +
                     "/negative/p_chain_bad.json");
  CHECK(bad.exit_code == 1);
  auto bj = parse_out(bad);
  CHECK(bj.at("pass") == false);
  CHECK(bj.at("first_fail").get<int>() >= 0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("member --q 2").exit_code == 2);           // missing required options
  CHECK(run_cli("nonsense").exit_code == 2);               // unknown subcommand
  CHECK(run_cli("member --q 4 --space W:1 --poly x").exit_code == 2);  // 4 is not prime
}

TEST_CASE("unknown is a first-class verdict with exit code 0") {
  auto r = run_cli("member --q 2 --space P --poly \"x^2+x^15\"");
  CHECK(r.exit_code == 0);
  CHECK(parse_out(r).at("verdict") == "unknown");
}

TEST_CASE("member against a unitary space") {
  auto r = run_cli("member --q 2 --space U:W:1 --poly \"1+x^3\" --unitary");
  CHECK(r.exit_code == 0);
  CHECK(parse_out(r).at("verdict") == "member");
}

TEST_CASE("verify --profile quick passes and reports a stable digest") {
  auto r1 = run_cli(std::string("verify --profile quick --scripts ") + TSPACE_SCRIPT_DIR);
  CHECK(r1.exit_code == 0);
  auto j1 = parse_out(r1);
  CHECK(j1.at("all_pass") == true);
  auto r2 = run_cli(std::string("verify --profile quick --scripts ") + TSPACE_SCRIPT_DIR);
  CHECK(parse_out(r2).at("digest") == j1.at("digest"));
}

TEST_CASE("verify with a corrupted fixture exits nonzero and names the step") {
  // point the suite at the negative twins: p_chain.json there is mutated
  std::string dir = std::string(TSPACE_SCRIPT_DIR) + "/negative";
  std::string setup = "mkdir -p /tmp/tspace_bad_scripts && cp " + std::string(TSPACE_SCRIPT_DIR) +
                      "/*.json /tmp/tspace_bad_scripts/ && cp -r " + std::string(TSPACE_SCRIPT_DIR) +
                      "/negative /tmp/tspace_bad_scripts/ && cp " + dir +
                      "/p_chain_bad.json /tmp/tspace_bad_scripts/p_chain.json";
  REQUIRE(system(setup.c_str()) == 0);
  auto r = run_cli("verify --profile quick --scripts /tmp/tspace_bad_scripts");
  CHECK(r.exit_code == 1);
  auto j = parse_out(r);
  CHECK(j.at("all_pass") == false);
  bool found = false;
  for (const auto& c : j.at("checks"))
    if (c.at("id") == "AC9" && c.at("verdict") == "fail") {
      found = true;
      CHECK(c.at("detail").get<std::string>().find("step") != std::string::npos);
    }
  CHECK(found);
}
