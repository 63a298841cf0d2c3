#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tspace/rewrite.hpp"

using namespace tspace;

namespace {

std::vector<BigInt> exponent_trace(const RewriteSystem& sys, BigInt e) {
  std::vector<BigInt> out{e};
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto& r : sys.rules) {
      if (r.matches(e)) {
        auto img = r.apply(e);
        if (!img) return out;  // dropped
        e = *img;
        out.push_back(e);
        moved = true;
        break;
      }
    }
  }
  return out;
}

bool is_canonical(const RewriteSystem& sys, const SparsePoly& f) {
  for (const auto& [e, c] : f.terms())
    if (std::find(sys.canonical_exponents.begin(), sys.canonical_exponents.end(), e) ==
        sys.canonical_exponents.end())
      return false;
  return true;
}

}  // namespace

TEST_CASE("rule traces from the W_1 system") {
  auto f2 = FieldSpec::make(2, 1);
  auto w1 = build_rules(RewriteTarget::W1, f2);
  SUBCASE("6 halves to 3, which drops") {
    auto tr = exponent_trace(w1, 6);
    CHECK(tr == std::vector<BigInt>{6, 3});  // 3 then drops
    auto red = reduce_canonical(w1, parse_poly(f2, "x^6"));
    CHECK(red.canonical.is_zero());
  }
  SUBCASE("5 -> 4 -> 2 -> 1") {
    CHECK(exponent_trace(w1, 5) == std::vector<BigInt>{5, 4, 2, 1});
  }
}

TEST_CASE("rule traces from the W_2 system") {
  auto f2 = FieldSpec::make(2, 1);
  auto w2 = build_rules(RewriteTarget::W2, f2);
  SUBCASE("13 -> 7, terminal") { CHECK(exponent_trace(w2, 13) == std::vector<BigInt>{13, 7}); }
  SUBCASE("9 -> 3, terminal") { CHECK(exponent_trace(w2, 9) == std::vector<BigInt>{9, 3}); }
  SUBCASE("11 -> 7") { CHECK(exponent_trace(w2, 11) == std::vector<BigInt>{11, 7}); }
  SUBCASE("21 descends through 9 to 3") {
    CHECK(exponent_trace(w2, 21) == std::vector<BigInt>{21, 9, 3});
  }
}

TEST_CASE("characteristic guard") {
  auto f3 = FieldSpec::make(3, 1);
  try {
    build_rules(RewriteTarget::W1, f3);
    FAIL("expected BadCharacteristic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_characteristic);
  }
}

TEST_CASE("reductions with certificates") {
  auto f2 = FieldSpec::make(2, 1);
  auto w1 = build_rules(RewriteTarget::W1, f2);
  auto w2 = build_rules(RewriteTarget::W2, f2);
  auto ctx1 = span_context(w1.space);
  auto ctx2 = span_context(w2.space);

  SUBCASE("x^4 + x^5 reduces to zero mod W_1") {
    auto f = parse_poly(f2, "x^4 + x^5");
    auto red = reduce_canonical(w1, f);
    CHECK(red.canonical.is_zero());
    // the certificate replays: f - canonical is a member combination
    CHECK(replay_combo(ctx1, red.membership) == f);
  }
  SUBCASE("x is already canonical") {
    auto red = reduce_canonical(w1, parse_poly(f2, "x"));
    CHECK(red.canonical == parse_poly(f2, "x"));
    CHECK(red.membership.empty());
  }
  SUBCASE("x + x^9 + x^21 reduces to x mod W_2 with cancellation") {
    auto f = parse_poly(f2, "x + x^9 + x^21");
    auto red = reduce_canonical(w2, f);
    CHECK(red.canonical == parse_poly(f2, "x"));
    CHECK(replay_combo(ctx2, red.membership) == sub(f2, f, red.canonical));
  }
}

TEST_CASE("certify_rules proves every rule element at desk scale") {
  auto f2 = FieldSpec::make(2, 1);
  SUBCASE("W_1 up to 32") {
    auto w1 = build_rules(RewriteTarget::W1, f2);
    auto certs = certify_rules(w1, 32);
    // every exponent except the canonical 1 matches some rule
    CHECK(certs.size() == 31);
    auto ctx = span_context(w1.space);
    for (const auto& [e, cert] : certs) {
      SparsePoly elem;
      elem.add_term(f2, e, f2.one());
      for (const auto& r : w1.rules)
        if (r.matches(e)) {
          if (auto img = r.apply(e)) elem.add_term(f2, *img, f2.one());
          break;
        }
      CHECK(validate_member_cert(ctx, cert, elem));
    }
  }
  SUBCASE("W_2 up to 32") {
    auto w2 = build_rules(RewriteTarget::W2, f2);
    auto certs = certify_rules(w2, 32);
    CHECK(certs.size() == 29);  // 1, 3, 7 are canonical
  }
}

TEST_CASE("rule soundness combos replay without the echelon search") {
  auto f2 = FieldSpec::make(2, 1);
  for (auto which : {RewriteTarget::W1, RewriteTarget::W2}) {
    auto sys = build_rules(which, f2);
    auto ctx = span_context(sys.space);
    for (uint64_t e = 2; e <= 200; ++e) {
      for (const auto& r : sys.rules) {
        if (!r.matches(e)) continue;
        SparsePoly elem;
        elem.add_term(f2, e, f2.one());
        if (auto img = r.apply(e)) elem.add_term(f2, *img, f2.one());
        CHECK(replay_combo(ctx, r.soundness_combo(f2, sys.target, e)) == elem);
        break;
      }
    }
  }
}

TEST_CASE("termination: images strictly descend") {
  auto f2 = FieldSpec::make(2, 1);
  for (auto which : {RewriteTarget::W1, RewriteTarget::W2}) {
    auto sys = build_rules(which, f2);
    for (uint64_t e = 2; e <= 5000; ++e) {
      for (const auto& r : sys.rules) {
        if (!r.matches(e)) continue;
        auto img = r.apply(e);
        if (img) CHECK(*img < e);
      }
    }
  }
}

TEST_CASE("every GF(2) polynomial reduces into the canonical span") {
  auto f2 = FieldSpec::make(2, 1);
  auto w1 = build_rules(RewriteTarget::W1, f2);
  auto w2 = build_rules(RewriteTarget::W2, f2);
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> ex(1, 2048), nt(0, 8);
  for (int t = 0; t < 200; ++t) {
    SparsePoly f;
    for (int k = nt(rng); k > 0; --k) f.add_term(f2, ex(rng), f2.one());
    auto r1 = reduce_canonical(w1, f);
    CHECK(is_canonical(w1, r1.canonical));
    CHECK(replay_combo(span_context(w1.space), r1.membership) == sub(f2, f, r1.canonical));
    auto r2 = reduce_canonical(w2, f);
    CHECK(is_canonical(w2, r2.canonical));
    CHECK(replay_combo(span_context(w2.space), r2.membership) == sub(f2, f, r2.canonical));
  }
}

TEST_CASE("observed confluence under shuffled rule and term order") {
  auto f2 = FieldSpec::make(2, 1);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> ex(1, 300), nt(0, 6), coin(0, 1);
  for (auto which : {RewriteTarget::W1, RewriteTarget::W2}) {
    auto sys = build_rules(which, f2);
    std::vector<size_t> order(sys.rules.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int t = 0; t < 500; ++t) {
      SparsePoly f;
      for (int k = nt(rng); k > 0; --k) f.add_term(f2, ex(rng), f2.one());
      auto reference = reduce_canonical(sys, f).canonical;
      std::shuffle(order.begin(), order.end(), rng);
      auto shuffled = reduce_with_order(sys, f, order, coin(rng) == 1).canonical;
      CHECK(reference == shuffled);
    }
  }
}
