#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "tspace/replay.hpp"

using namespace tspace;

namespace {

std::string script_path(const std::string& name) {
  return std::string(TSPACE_SCRIPT_DIR) + "/" + name;
}

RunReport run_file(const std::string& name) { return run_script(load_script(script_path(name))); }

// Index of the single step where the mutated twin differs from the original.
int mutated_index(const std::string& good, const std::string& bad) {
  std::ifstream a(script_path(good)), b(script_path(bad));
  Json ja = Json::parse(a), jb = Json::parse(b);
  const auto& sa = ja.at("steps");
  const auto& sb = jb.at("steps");
  if (sa.size() != sb.size()) return -1;
  for (size_t i = 0; i < sa.size(); ++i)
    if (sa[i] != sb[i]) return (int)i;
  return -1;
}

}  // namespace

TEST_CASE("parsing") {
  SUBCASE("empty step list is a valid trivial script") {
    auto s = parse_script_text(R"({"field": {"p": 2}, "spaces": {}, "steps": []})");
    auto rep = run_script(s);
    CHECK(rep.pass);
    CHECK(rep.steps.empty());
  }
  SUBCASE("forward references are rejected") {
    try {
      parse_script_text(R"({
        "field": {"p": 2},
        "spaces": {"P": {"family": "P"}},
        "steps": [{"op": "substitute", "label": "s", "of": "missing", "u": "x"}]
      })");
      FAIL("expected ForwardReference");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::forward_reference);
    }
  }
  SUBCASE("duplicate labels are rejected") {
    try {
      parse_script_text(R"({
        "field": {"p": 2},
        "spaces": {"P": {"family": "P"}},
        "steps": [{"op": "poly", "label": "s", "poly": "x"},
                  {"op": "poly", "label": "s", "poly": "x^2"}]
      })");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
    }
  }
  SUBCASE("unbound spaces are rejected") {
    try {
      parse_script_text(R"({
        "field": {"p": 2},
        "spaces": {},
        "steps": [{"op": "generator", "label": "g", "space": "P", "gen": "a"}]
      })");
      FAIL("expected UnknownLabel");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_label);
    }
  }
  SUBCASE("malformed JSON is a ParseError") {
    try {
      parse_script_text("{nope");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
    }
  }
}

TEST_CASE("substitution requires established membership") {
  auto s = parse_script_text(R"({
    "field": {"p": 2},
    "spaces": {},
    "steps": [{"op": "poly", "label": "lit", "poly": "x"},
              {"op": "substitute", "label": "bad", "of": "lit", "u": "x^2"}]
  })");
  auto rep = run_script(s);
  CHECK(!rep.pass);
  CHECK(rep.first_fail == 1);
}

TEST_CASE("the P chain replays and ends at x") {
  auto rep = run_file("p_chain.json");
  for (const auto& st : rep.steps)
    if (!st.ok) MESSAGE("step ", st.index, ": ", st.note);
  REQUIRE(rep.pass);
  auto f2 = FieldSpec::make(2, 1);
  const auto& final_label = rep.labels.at("final");
  CHECK(final_label.poly == parse_poly(f2, "x"));
  CHECK(final_label.spaces == std::set<std::string>{"P"});
}

TEST_CASE("W_1 maximality reductions replay") {
  auto rep = run_file("w1_max.json");
  for (const auto& st : rep.steps)
    if (!st.ok) MESSAGE("step ", st.index, ": ", st.note);
  CHECK(rep.pass);
}

TEST_CASE("the six W_2 cases replay") {
  auto rep = run_file("w2_cases.json");
  for (const auto& st : rep.steps)
    if (!st.ok) MESSAGE("step ", st.index, ": ", st.note);
  REQUIRE(rep.pass);
  // each case ends with x derived inside W2 + the case space
  CHECK(rep.labels.at("c1_final").spaces == std::set<std::string>{"F1", "W2"});
  CHECK(rep.labels.at("c6_sub").spaces == std::set<std::string>{"F6", "W2"});
}

TEST_CASE("the V sums replay with halved pair certificates") {
  auto rep = run_file("vsum_q3.json");
  for (const auto& st : rep.steps)
    if (!st.ok) MESSAGE("step ", st.index, ": ", st.note);
  REQUIRE(rep.pass);
  CHECK(rep.labels.at("x01").spaces == std::set<std::string>{"V0", "V1"});
  CHECK(rep.labels.at("x02").spaces == std::set<std::string>{"V0", "V2"});
  CHECK(rep.labels.at("x12").spaces == std::set<std::string>{"V1", "V2"});
}

TEST_CASE("the W sums replay") {
  auto rep = run_file("wsum_q2.json");
  for (const auto& st : rep.steps)
    if (!st.ok) MESSAGE("step ", st.index, ": ", st.note);
  REQUIRE(rep.pass);
  CHECK(rep.labels.at("x_12").spaces == std::set<std::string>{"W1", "W2"});
  CHECK(rep.labels.at("x_14").spaces == std::set<std::string>{"W1", "W4"});
  CHECK(rep.labels.at("x_24").spaces == std::set<std::string>{"W2", "W4"});
}

TEST_CASE("the unitary maximality procedure replays over GF(4)") {
  auto rep = run_file("unitary_w.json");
  for (const auto& st : rep.steps)
    if (!st.ok) MESSAGE("step ", st.index, ": ", st.note);
  REQUIRE(rep.pass);
  CHECK(rep.labels.at("x2_x").spaces == std::set<std::string>{"F2", "W"});
}

TEST_CASE("determinism: identical verdicts and labels across runs") {
  auto r1 = run_file("p_chain.json");
  auto r2 = run_file("p_chain.json");
  REQUIRE(r1.steps.size() == r2.steps.size());
  for (size_t i = 0; i < r1.steps.size(); ++i) CHECK(r1.steps[i].ok == r2.steps[i].ok);
  for (const auto& [l, st] : r1.labels) CHECK(st.poly == r2.labels.at(l).poly);
}

TEST_CASE("every mutated twin fails at exactly the mutated step") {
  for (const char* name : {"p_chain", "w1_max", "w2_cases", "vsum_q3", "wsum_q2", "unitary_w"}) {
    std::string good = std::string(name) + ".json";
    std::string bad = "negative/" + std::string(name) + "_bad.json";
    int expect = mutated_index(good, bad);
    REQUIRE(expect >= 0);
    auto rep = run_file(bad);
    CHECK(!rep.pass);
    // the mutation either fails on the spot (bad assert) or poisons the
    // first check that consumes the mutated label
    CHECK(rep.first_fail >= expect);
    MESSAGE(name, ": mutated at ", expect, ", failed at ", rep.first_fail);
  }
}
