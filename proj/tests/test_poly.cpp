#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tspace/poly.hpp"

using namespace tspace;

namespace {

SparsePoly rand_poly(const FieldSpec& f, std::mt19937_64& rng, int max_terms, int64_t max_exp) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<int64_t> ex(1, max_exp);
  std::uniform_int_distribution<uint32_t> cf(0, f.q() - 1);
  SparsePoly g;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) g.add_term(f, BigInt(ex(rng)), f.element(cf(rng)));
  return g;
}

}  // namespace

TEST_CASE("addition cancels in characteristic 2") {
  auto f2 = FieldSpec::make(2, 1);
  auto a = parse_poly(f2, "x + x^2");
  auto b = parse_poly(f2, "x^2 + x^3");
  CHECK(add(f2, a, b) == parse_poly(f2, "x + x^3"));
}

TEST_CASE("product used in the W_1 reduction") {
  // x^3 * (x^3 + x^4 + x^5 + x^6) = x^6 + x^7 + x^8 + x^9  (n = 2)
  auto f2 = FieldSpec::make(2, 1);
  auto a = parse_poly(f2, "x^3");
  auto b = parse_poly(f2, "x^3 + x^4 + x^5 + x^6");
  CHECK(mul(f2, a, b) == parse_poly(f2, "x^6 + x^7 + x^8 + x^9"));
}

TEST_CASE("scaling by zero clears a polynomial") {
  auto f3 = FieldSpec::make(3, 1);
  auto a = parse_poly(f3, "x + 2x^5");
  CHECK(scale(f3, f3.zero(), a).is_zero());
}

TEST_CASE("composition basics") {
  auto f2 = FieldSpec::make(2, 1);
  SUBCASE("x + x^q at a monomial") {
    auto f = parse_poly(f2, "x + x^2");
    CHECK(compose(f2, f, parse_poly(f2, "x^3")) == parse_poly(f2, "x^3 + x^6"));
  }
  SUBCASE("the identity generator returns the substitution") {
    auto u = parse_poly(f2, "x^2 + x^5 + x^7");
    CHECK(compose(f2, parse_poly(f2, "x"), u) == u);
  }
  SUBCASE("cube of a binomial matches the two-term expansion law") {
    // (u+v)^(q^n+1) = u^(q^n+1) + v^(q^n+1) + u^(q^n) v + u v^(q^n)
    auto f = parse_poly(f2, "x^3");
    auto got = compose(f2, f, parse_poly(f2, "x^2 + x"));
    CHECK(got == parse_poly(f2, "x^3 + x^4 + x^5 + x^6"));
    auto u = parse_poly(f2, "x^2"), v = parse_poly(f2, "x");
    auto law = add(f2, add(f2, mul(f2, mul(f2, u, u), u), mul(f2, mul(f2, v, v), v)),
                   add(f2, mul(f2, mul(f2, u, u), v), mul(f2, u, mul(f2, v, v))));
    CHECK(got == law);
  }
  SUBCASE("constant-term substitutions are rejected in k[x]_0") {
    auto f = parse_poly(f2, "x + x^2");
    auto u = parse_poly(f2, "1 + x", Ambient::unitary);
    try {
      compose(f2, f, u);
      FAIL("expected AmbientViolation");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ambient_violation);
    }
  }
}

TEST_CASE("composition overflows loudly instead of thrashing") {
  // (x + x^2)^(2^k - 1) has exactly 2^k distinct terms over GF(2)
  auto f2 = FieldSpec::make(2, 1);
  auto f = parse_poly(f2, "x^1023");
  auto u = parse_poly(f2, "x + x^2");
  try {
    compose(f2, f, u, 500);
    FAIL("expected ExpansionOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::expansion_overflow);
  }
  CHECK(compose(f2, f, u, 2000).term_count() == 1024);
}

TEST_CASE("q-homogeneous components") {
  SUBCASE("GF(3) splits odd and even exponents") {
    auto f3 = FieldSpec::make(3, 1);
    auto comps = q_components(f3, parse_poly(f3, "x + x^2 + x^3"));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == parse_poly(f3, "x + x^3"));  // class 1
    CHECK(comps[1] == parse_poly(f3, "x^2"));      // class 2
  }
  SUBCASE("GF(2) has a single class") {
    auto f2 = FieldSpec::make(2, 1);
    auto f = parse_poly(f2, "x + x^4 + x^7");
    auto comps = q_components(f2, f);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == f);
  }
  SUBCASE("GF(4): 1 and 4 share a class mod 3") {
    auto f4 = FieldSpec::make(2, 2);
    auto f = parse_poly(f4, "x + x^4");
    auto comps = q_components(f4, f);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == f);
    CHECK(comps[1].is_zero());
    CHECK(comps[2].is_zero());
  }
}

TEST_CASE("vandermonde extraction solves the 2x2 system over GF(3)") {
  auto f3 = FieldSpec::make(3, 1);
  auto comps = vandermonde_extract(f3, parse_poly(f3, "x + x^2"));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == parse_poly(f3, "x"));
  CHECK(comps[1] == parse_poly(f3, "x^2"));
}

TEST_CASE("vandermonde extraction of a homogeneous input is the input") {
  auto f5 = FieldSpec::make(5, 1);
  auto f = parse_poly(f5, "x^2 + 3x^6 + x^10");  // all exponents = 2 mod 4
  auto comps = vandermonde_extract(f5, f);
  CHECK(comps[1] == f);
  for (size_t i : {0u, 2u, 3u}) CHECK(comps[i].is_zero());
}

TEST_CASE("vandermonde extraction equals the direct split") {
  std::mt19937_64 rng(7);
  for (auto [p, m] : {std::pair<uint32_t, uint32_t>{3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    auto f = FieldSpec::make(p, m);
    for (int t = 0; t < 40; ++t) {
      auto g = rand_poly(f, rng, 6, 50);
      CHECK(vandermonde_extract(f, g) == q_components(f, g));
    }
  }
}

TEST_CASE("components sum back to the input") {
  std::mt19937_64 rng(8);
  auto f9 = FieldSpec::make(3, 2);
  for (int t = 0; t < 50; ++t) {
    auto g = rand_poly(f9, rng, 8, 200);
    SparsePoly total;
    for (const auto& c : q_components(f9, g)) total = add(f9, total, c);
    CHECK(total == g);
  }
}

TEST_CASE("evaluation") {
  auto f2 = FieldSpec::make(2, 1);
  CHECK(evaluate(f2, parse_poly(f2, "x + x^19"), f2.one()) == f2.zero());
  CHECK(evaluate(f2, SparsePoly::zero(), f2.one()) == f2.zero());
  auto f3 = FieldSpec::make(3, 1);
  // 2 + 2^3 = 2 + 2 = 1 mod 3
  CHECK(evaluate(f3, parse_poly(f3, "x + x^3"), f3.from_int(2)) == f3.one());
}

TEST_CASE("composition is associative and linear on the left") {
  std::mt19937_64 rng(9);
  auto f3 = FieldSpec::make(3, 1);
  for (int t = 0; t < 25; ++t) {
    auto f = rand_poly(f3, rng, 3, 6);
    auto g = rand_poly(f3, rng, 3, 6);
    auto u = rand_poly(f3, rng, 2, 3);
    auto v = rand_poly(f3, rng, 2, 3);
    CHECK(compose(f3, compose(f3, f, u), v) == compose(f3, f, compose(f3, u, v)));
    CHECK(compose(f3, add(f3, f, g), u) == add(f3, compose(f3, f, u), compose(f3, g, u)));
  }
}

TEST_CASE("evaluation commutes with composition") {
  std::mt19937_64 rng(10);
  for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
    auto f = FieldSpec::make(p, m);
    auto elems = f.enumerate();
    for (int t = 0; t < 25; ++t) {
      auto g = rand_poly(f, rng, 4, 9);
      auto u = rand_poly(f, rng, 3, 5);
      for (const auto& a : elems)
        CHECK(evaluate(f, compose(f, g, u), a) == evaluate(f, g, evaluate(f, u, a)));
    }
  }
}

TEST_CASE("text form round-trips and stays canonical") {
  std::mt19937_64 rng(11);
  for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    auto f = FieldSpec::make(p, m);
    for (int t = 0; t < 40; ++t) {
      auto g = rand_poly(f, rng, 6, 1000);
      CHECK(parse_poly(f, to_string(f, g)) == g);
    }
  }
  auto f2 = FieldSpec::make(2, 1);
  CHECK(to_string(f2, parse_poly(f2, "x^2+x")) == "x + x^2");
  CHECK(to_string(f2, SparsePoly::zero()) == "0");
  auto f4 = FieldSpec::make(2, 2);
  CHECK(to_string(f4, parse_poly(f4, "[0,1]x^3 + x")) == "[1,0]x + [0,1]x^3");
}

TEST_CASE("huge exponents are exact") {
  auto f2 = FieldSpec::make(2, 1);
  BigInt e("100000000000000000000000000000000");
  auto g = SparsePoly::monomial(f2, f2.one(), e);
  auto c = compose(f2, parse_poly(f2, "x + x^2"), g);
  REQUIRE(c.term_count() == 2);
  CHECK(c.min_exp() == e);
  CHECK(c.max_exp() == e * 2);
  CHECK(parse_poly(f2, to_string(f2, c)) == c);
}

TEST_CASE("exponent folding mod x^q - x") {
  auto f3 = FieldSpec::make(3, 1);
  CHECK(fold_exponent(f3, 3) == 1);
  CHECK(fold_exponent(f3, 4) == 2);
  CHECK(fold_exponent(f3, 2) == 2);
  CHECK(fold_exponent(f3, 0) == 0);
  // x^4 - x^2 is divisible by x^3 - x; folding detects it
  auto f = parse_poly(f3, "x^4 + 2x^2");
  CHECK(fold_poly(f3, f).is_zero());
}

TEST_CASE("parse errors carry the right code") {
  auto f2 = FieldSpec::make(2, 1);
  for (const char* bad : {"", "x^", "x +", "x ^ y", "[1,2]x"}) {
    try {
      parse_poly(f2, bad);
      FAIL("expected ParseError on ", bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse_error);
    }
  }
}
