#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tspace/families.hpp"

using namespace tspace;

TEST_CASE("family construction") {
  SUBCASE("V:0 over GF(3) is the span of x^i + x^(3i)") {
    auto f3 = FieldSpec::make(3, 1);
    auto v0 = build_family("V:0", f3);
    REQUIRE(v0.schemas.size() == 1);
    CHECK(instantiate_schema(f3, v0.schemas[0], {{"i", 1}}) == parse_poly(f3, "x + x^3"));
    CHECK(v0.functional_period == 4);
  }
  SUBCASE("W:1 over GF(2) carries the three spanning families") {
    auto f2 = FieldSpec::make(2, 1);
    auto w1 = build_family("W:1", f2);
    REQUIRE(w1.schemas.size() == 3);
    CHECK(instantiate_schema(f2, w1.schemas[0], {{"i", 2}}) == parse_poly(f2, "x^2 + x^4"));
    CHECK(instantiate_schema(f2, w1.schemas[1], {{"i", 2}}) == parse_poly(f2, "x^6"));
    CHECK(instantiate_schema(f2, w1.schemas[2], {{"i", 3}, {"j", 1}}) ==
          parse_poly(f2, "x^5 + x^7"));
  }
  SUBCASE("W families require characteristic 2") {
    auto f3 = FieldSpec::make(3, 1);
    try {
      build_family("W:1", f3);
      FAIL("expected BadCharacteristic");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::bad_characteristic);
    }
  }
  SUBCASE("bad family parameters") {
    auto f2 = FieldSpec::make(2, 1);
    for (const char* name : {"W:0", "V", "Q:1", "W:x"}) {
      try {
        build_family(name, f2);
        FAIL("expected BadParams for ", name);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::bad_params);
      }
    }
  }
}

TEST_CASE("sums keep parent identity and are idempotent") {
  auto f3 = FieldSpec::make(3, 1);
  auto v0 = build_family("V:0", f3);
  auto v1 = build_family("V:1", f3);
  auto s = sum_families(v0, v1);
  REQUIRE(s.parts.size() == 2);
  CHECK(s.parts[0].name == "V:0");
  CHECK(s.parts[1].name == "V:1");
  auto again = sum_families(v0, v0);
  CHECK(again.name == "V:0");
  CHECK(!again.is_sum());
  auto ctx = span_context(s);
  CHECK(ctx.schemas.size() == 2);
}

TEST_CASE("covers_all: V_0 + V_1 = k[x]_0 over GF(3) with the halved pair certificate") {
  auto f3 = FieldSpec::make(3, 1);
  auto sum = sum_families(build_family("V:0", f3), build_family("V:1", f3));
  auto v = covers_all(sum, BigInt(1000));
  REQUIRE(v.is_member());
  auto ctx = span_context(sum);
  SparsePoly x;
  x.add_term(f3, 1, f3.one());
  CHECK(validate_member_cert(ctx, *v.cert, x));
  // split the certificate by parent: the V:1 part must be (1/2)(x + x^9)
  // and the V:0 part (1/2)(x - x^9), the halved pair decomposition
  SparsePoly from_v0(Ambient::nonunitary), from_v1(Ambient::nonunitary);
  for (const auto& step : v.cert->steps) {
    const auto& sr = std::get<CertStep::SchemaRef>(step.source);
    auto inst = instantiate_schema(f3, *ctx.find_schema(sr.space, sr.schema), sr.params);
    auto part = scale(f3, step.scalar, inst);
    if (sr.space == "V:0")
      from_v0 = add(f3, from_v0, part);
    else
      from_v1 = add(f3, from_v1, part);
  }
  auto half = f3.inv(f3.from_int(2));
  CHECK(from_v1 == scale(f3, half, parse_poly(f3, "x + x^9")));
  CHECK(from_v0 == scale(f3, half, parse_poly(f3, "x + 2x^9")));
}

TEST_CASE("covers_all: V_0 alone is proper, certified by a functional") {
  auto f3 = FieldSpec::make(3, 1);
  auto v0 = build_family("V:0", f3);
  auto v = covers_all(v0, BigInt(100));
  REQUIRE(v.kind == MembershipVerdict::Kind::nonmember);
  REQUIRE(v.functional.has_value());
  CHECK(v.functional->period == 4);
  SparsePoly x;
  x.add_term(f3, 1, f3.one());
  CHECK(validate_functional(span_context(v0), *v.functional, x));
}

TEST_CASE("covers_all: pairwise sums of W_1, W_2, W_4 are everything over GF(2)") {
  auto f2 = FieldSpec::make(2, 1);
  SparsePoly x;
  x.add_term(f2, 1, f2.one());
  for (auto [n, m] : {std::pair<int, int>{1, 2}, {1, 4}, {2, 4}}) {
    auto sum = sum_families(build_family("W:" + std::to_string(n), f2),
                            build_family("W:" + std::to_string(m), f2));
    auto v = covers_all(sum, BigInt(64));
    REQUIRE(v.is_member());
    CHECK(validate_member_cert(span_context(sum), *v.cert, x));
  }
}

TEST_CASE("special membership") {
  auto f2 = FieldSpec::make(2, 1);
  auto w0 = build_family("W0", f2);
  CHECK(special_membership(w0, parse_poly(f2, "x + x^2")));
  CHECK(!special_membership(w0, parse_poly(f2, "x")));
  auto piz = build_family("PiZ", f2);
  CHECK(special_membership(piz, parse_poly(f2, "x^2 + x^7")));
  CHECK(!special_membership(piz, parse_poly(f2, "x + x^2")));

  auto f3 = FieldSpec::make(3, 1);
  auto w0_3 = build_family("W0", f3);
  CHECK(!special_membership(w0_3, parse_poly(f3, "x^2")));
  // cross-check against the truncated closure at D = 6: exhaustive over
  // nonunitary polynomials of degree <= 4 that genuinely fit
  TruncatedClosure cl(f3, closure_generators(w0_3, 6), 6, TruncMode::exact);
  for (uint32_t mask = 0; mask < 81; ++mask) {
    SparsePoly f;
    uint32_t m = mask;
    for (uint32_t e = 1; e <= 4; ++e) {
      f.add_term(f3, e, f3.from_int(m % 3));
      m /= 3;
    }
    if (f.is_zero()) continue;
    CHECK(special_membership(w0_3, f) == cl.contains(f3, f));
  }
}

TEST_CASE("W0 divisibility agrees with the echelon search") {
  auto f3 = FieldSpec::make(3, 1);
  auto w0 = build_family("W0", f3);
  auto ctx = span_context(w0);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> ex(1, 10), coef(0, 2), nt(1, 5);
  for (int t = 0; t < 80; ++t) {
    SparsePoly f;
    for (int k = nt(rng); k > 0; --k) f.add_term(f3, ex(rng), f3.from_int(coef(rng)));
    if (f.is_zero()) continue;
    auto v = decide_membership(ctx, f, BigInt(40));
    bool divisible = special_membership(w0, f);
    if (divisible) {
      REQUIRE(v.is_member());
      CHECK(validate_member_cert(ctx, *v.cert, f));
    } else {
      CHECK(!v.is_member());
    }
  }
}

TEST_CASE("V_n instances lie in W0 exactly in characteristic 2") {
  for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {2, 2}}) {
    auto f = FieldSpec::make(p, m);
    auto w0 = build_family("W0", f);
    for (uint32_t n = 0; n <= 2; ++n) {
      auto vn = build_family("V:" + std::to_string(n), f);
      for (int i = 1; i <= 6; ++i)
        CHECK(special_membership(w0, instantiate_schema(f, vn.schemas[0], {{"i", i}})));
    }
  }
  // and not in odd characteristic
  auto f3 = FieldSpec::make(3, 1);
  auto w0 = build_family("W0", f3);
  auto v0 = build_family("V:0", f3);
  CHECK(!special_membership(w0, instantiate_schema(f3, v0.schemas[0], {{"i", 1}})));
}

TEST_CASE("power escalation chains") {
  SUBCASE("t = 1 gives the empty chain") {
    auto f3 = FieldSpec::make(3, 1);
    auto chain = power_escalation(1, f3);
    CHECK(chain.steps.empty());
    CHECK(!verify_escalation(chain, f3).has_value());
  }
  SUBCASE("q = 3, t = 2: climb through coefficient 2, then strip") {
    auto f3 = FieldSpec::make(3, 1);
    auto chain = power_escalation(2, f3);
    REQUIRE(chain.steps.size() == 2);
    CHECK(chain.steps[0].kind == EscalationStep::Kind::climb);
    CHECK(chain.steps[0].to == 3);
    CHECK(chain.steps[0].scalar == f3.from_int(2));  // 1/2 = 2 in GF(3)
    CHECK(chain.steps[1].kind == EscalationStep::Kind::strip);
    CHECK(chain.steps[1].to == 1);
    CHECK(!verify_escalation(chain, f3).has_value());
  }
  SUBCASE("q = 2, t = 3: climb to 4, then two halvings") {
    auto f2 = FieldSpec::make(2, 1);
    auto chain = power_escalation(3, f2);
    REQUIRE(chain.steps.size() == 3);
    CHECK(chain.steps[0].kind == EscalationStep::Kind::climb);
    CHECK(chain.steps[0].to == 4);
    CHECK(chain.steps[1].kind == EscalationStep::Kind::strip);
    CHECK(chain.steps[1].to == 2);
    CHECK(chain.steps[2].kind == EscalationStep::Kind::strip);
    CHECK(chain.steps[2].to == 1);
    CHECK(!verify_escalation(chain, f2).has_value());
  }
  SUBCASE("every chain verifies for t <= 50 across the suite fields") {
    for (auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
      auto f = FieldSpec::make(p, m);
      for (int t = 1; t <= 50; ++t) {
        auto chain = power_escalation(t, f);
        auto bad = verify_escalation(chain, f);
        CHECK_MESSAGE(!bad.has_value(), "q=", f.q(), " t=", t);
      }
    }
  }
  SUBCASE("tampered chains are rejected") {
    auto f3 = FieldSpec::make(3, 1);
    auto chain = power_escalation(2, f3);
    chain.steps[0].to = 4;  // claim 2 -> 4 instead of 2 -> 3
    auto bad = verify_escalation(chain, f3);
    REQUIRE(bad.has_value());
    CHECK(*bad == 0);
  }
}

TEST_CASE("schema instances are members of their own family per the quotient oracle") {
  auto f2 = FieldSpec::make(2, 1);
  for (const char* name : {"W:1", "W:2", "W0"}) {
    auto d = build_family(name, f2);
    TruncatedClosure cl(f2, closure_generators(d, 12), 12, TruncMode::quotient);
    for (const auto& [space, schema] : span_context(d).schemas) {
      for (int i = 1; i <= 4; ++i) {
        ParamAssignment a{{"i", i}};
        if (schema.params.size() == 2) {
          a["j"] = 1;
          a["i"] = i + 1;
        }
        auto inst = instantiate_schema(f2, schema, a);
        CHECK(cl.contains(f2, inst));
      }
    }
  }
  auto f3 = FieldSpec::make(3, 1);
  auto v0 = build_family("V:0", f3);
  TruncatedClosure cl3(f3, closure_generators(v0, 10), 10, TruncMode::quotient);
  for (int i = 1; i <= 5; ++i)
    CHECK(cl3.contains(f3, instantiate_schema(f3, v0.schemas[0], {{"i", i}})));
}
