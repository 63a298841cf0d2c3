#include "tspace/rewrite.hpp"

#include <algorithm>

namespace tspace {

bool RewriteRule::matches(const BigInt& e) const {
  switch (guard) {
    case Guard::even:
      return e % 2 == 0;
    case Guard::multiple_of:
      return e % guard_arg == 0;
    case Guard::equals:
      return e == guard_arg;
    case Guard::odd_at_least:
      return e % 2 == 1 && e >= guard_arg;
  }
  return false;
}

std::optional<BigInt> RewriteRule::apply(const BigInt& e) const {
  switch (image) {
    case Image::halve:
      return e / 2;
    case Image::drop:
      return std::nullopt;
    case Image::subtract:
      return e - image_arg;
    case Image::set_to:
      return BigInt(image_arg);
    case Image::fermat_descent: {
      // e odd and >= 17: write e = i + 4j with i = e mod 4 in {1,3} and
      // j = (e-i)/4 >= 4; the image 4i + j is strictly smaller since i < j.
      BigInt i = e % 4;
      BigInt j = (e - i) / 4;
      return 4 * i + j;
    }
  }
  return std::nullopt;
}

namespace {

CertStep schema_step(const FieldSpec& spec, const std::string& space, const std::string& id,
                     ParamAssignment params) {
  return CertStep{CertStep::SchemaRef{space, id, std::move(params)}, spec.one()};
}

}  // namespace

Combo RewriteRule::soundness_combo(const FieldSpec& spec, const std::string& space,
                                   const BigInt& e) const {
  // Every rule element decomposes into at most two spanning instances of
  // the target family.
  switch (image) {
    case Image::halve:
      // x^(e/2) + x^e is the e-family at i = e/2
      return {schema_step(spec, space, "e", {{"i", e / 2}})};
    case Image::drop:
      // x^e is the f-family at i = e / (q^n + 1)
      return {schema_step(spec, space, "f", {{"i", e / guard_arg}})};
    case Image::subtract:
      // x^(e-3) + x^e = pair(e-4, 2) + e-family(e-3), valid for odd e >= 7
      return {schema_step(spec, space, "g", {{"i", e - 4}, {"j", 2}}),
              schema_step(spec, space, "e", {{"i", e - 3}})};
    case Image::set_to:
      if (guard_arg == 5 && image_arg == 4)  // W1: x^4 + x^5 = pair(2, 1)
        return {schema_step(spec, space, "g", {{"i", 2}, {"j", 1}})};
      if (guard_arg == 9 && image_arg == 3)  // W2: x^9 + x^3 = pair(2,1) + e(3)
        return {schema_step(spec, space, "g", {{"i", 2}, {"j", 1}}),
                schema_step(spec, space, "e", {{"i", 3}})};
      if (guard_arg == 13 && image_arg == 7)  // W2: x^13 + x^7 = pair(3, 1)
        return {schema_step(spec, space, "g", {{"i", 3}, {"j", 1}})};
      if (guard_arg == 11 && image_arg == 7)  // W2: x^11 + x^7 = pair(3,2) + e(7)
        return {schema_step(spec, space, "g", {{"i", 3}, {"j", 2}}),
                schema_step(spec, space, "e", {{"i", 7}})};
      fail(Errc::unsound_rule, "no certificate template for rule " + name);
    case Image::fermat_descent: {
      // x^(i+4j) + x^(4i+j) is the pair family at (j, i)
      BigInt i = e % 4;
      BigInt j = (e - i) / 4;
      return {schema_step(spec, space, "g", {{"i", j}, {"j", i}})};
    }
  }
  fail(Errc::unsound_rule, "unhandled rule image");
}

RewriteSystem build_rules(RewriteTarget which, const FieldSpec& spec) {
  if (spec.q() != 2) fail(Errc::bad_characteristic, "rewrite systems are defined over GF(2)");
  RewriteSystem sys;
  sys.spec = spec;
  using G = RewriteRule::Guard;
  using I = RewriteRule::Image;
  if (which == RewriteTarget::W1) {
    sys.target = "W:1";
    sys.rules = {
        {"halve", G::even, 0, I::halve, 0},
        {"drop-cubes", G::multiple_of, 3, I::drop, 0},
        {"five-to-four", G::equals, 5, I::set_to, 4},
        {"down-three", G::odd_at_least, 7, I::subtract, 3},
    };
    sys.canonical_exponents = {1};
  } else {
    sys.target = "W:2";
    sys.rules = {
        {"halve", G::even, 0, I::halve, 0},
        {"drop-fifths", G::multiple_of, 5, I::drop, 0},
        {"nine-to-three", G::equals, 9, I::set_to, 3},
        {"eleven-to-seven", G::equals, 11, I::set_to, 7},
        {"thirteen-to-seven", G::equals, 13, I::set_to, 7},
        {"fermat-descent", G::odd_at_least, 17, I::fermat_descent, 0},
    };
    sys.canonical_exponents = {1, 3, 7};
  }
  sys.space = build_family(sys.target, spec);
  return sys;
}

Reduction reduce_with_order(const RewriteSystem& sys, const SparsePoly& f,
                            const std::vector<size_t>& order, bool ascending) {
  const FieldSpec& spec = sys.spec;
  Reduction out;
  out.canonical = SparsePoly::zero(f.ambient());
  SparsePoly work = f;
  while (!work.is_zero()) {
    // pick the next term with a matching rule
    std::optional<BigInt> pick;
    const RewriteRule* rule = nullptr;
    auto scan = [&](const BigInt& e) {
      for (size_t idx : order) {
        if (sys.rules[idx].matches(e)) {
          pick = e;
          rule = &sys.rules[idx];
          return true;
        }
      }
      return false;
    };
    bool found = false;
    if (ascending) {
      for (const auto& [e, c] : work.terms())
        if ((found = scan(e))) break;
    } else {
      for (auto it = work.terms().rbegin(); it != work.terms().rend(); ++it)
        if ((found = scan(it->first))) break;
    }
    if (!found) break;
    const BigInt e = *pick;
    auto img = rule->apply(e);
    // x^e == x^img modulo the target: swap the term, keep the certificate
    work.add_term(spec, e, spec.one());  // removes it (GF(2))
    if (img) work.add_term(spec, *img, spec.one());
    out.trace.emplace_back(e, img);
    for (auto& s : rule->soundness_combo(spec, sys.target, e)) out.membership.push_back(s);
  }
  out.canonical = work;
  return out;
}

Reduction reduce_canonical(const RewriteSystem& sys, const SparsePoly& f) {
  std::vector<size_t> order(sys.rules.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  return reduce_with_order(sys, f, order, /*ascending=*/false);
}

std::vector<std::pair<BigInt, MemberCert>> certify_rules(const RewriteSystem& sys,
                                                         uint64_t bound) {
  const FieldSpec& spec = sys.spec;
  auto ctx = span_context(sys.space);
  std::vector<std::pair<BigInt, MemberCert>> out;
  for (uint64_t eu = 1; eu <= bound; ++eu) {
    BigInt e(eu);
    const RewriteRule* rule = nullptr;
    for (const auto& r : sys.rules)
      if (r.matches(e)) {
        rule = &r;
        break;
      }
    if (!rule) continue;
    SparsePoly elem;
    elem.add_term(spec, e, spec.one());
    if (auto img = rule->apply(e)) elem.add_term(spec, *img, spec.one());
    auto v = decide_membership(ctx, elem, BigInt(4 * bound + 16));
    if (!v.is_member() || !validate_member_cert(ctx, *v.cert, elem))
      fail(Errc::unsound_rule, "rule element at exponent " + e.str() + " failed to certify");
    out.emplace_back(e, *v.cert);
  }
  return out;
}

}  // namespace tspace
