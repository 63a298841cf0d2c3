#include "tspace/families.hpp"

#include <sstream>

namespace tspace {

namespace {

BigInt q_pow_pow2(const FieldSpec& spec, uint32_t n) {
  // q^(2^n)
  if (n > 24) fail(Errc::bad_params, "tower exponent 2^n out of range");
  BigInt v = spec.q();
  for (uint32_t i = 0; i < n; ++i) v *= v;
  return v;
}

BigInt q_pow(const FieldSpec& spec, uint32_t n) {
  BigInt v = 1;
  for (uint32_t i = 0; i < n; ++i) v *= spec.q();
  return v;
}

std::pair<std::string, std::optional<uint32_t>> split_name(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos) return {name, std::nullopt};
  std::string head = name.substr(0, colon);
  std::string tail = name.substr(colon + 1);
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::bad_params, "bad family parameter in '" + name + "'");
  return {head, (uint32_t)std::stoul(tail)};
}

}  // namespace

TSpaceDesc build_family(const std::string& name, const FieldSpec& spec) {
  auto [head, param] = split_name(name);
  TSpaceDesc d;
  d.name = name;
  d.field = spec;
  const FieldElement one = spec.one();

  if (head == "V") {
    if (!param) fail(Errc::bad_params, "V needs an index, e.g. V:0");
    uint32_t n = *param;
    BigInt e = q_pow_pow2(spec, n);
    d.schemas.push_back({"e", {"i"}, {}, {{one, {0, {{"i", 1}}}}, {one, {0, {{"i", e}}}}}});
    SparsePoly gen;
    gen.add_term(spec, 1, one);
    gen.add_term(spec, e, one);
    d.generators.emplace_back("v", gen);
    if (e + 1 <= 1 << 20) d.functional_period = (uint32_t)(e + 1);
    d.provenance = "substitution span of x + x^" + e.str();
    return d;
  }

  if (head == "W") {
    if (!param || *param < 1) fail(Errc::bad_params, "W needs an index >= 1, e.g. W:1");
    if (spec.p() != 2) fail(Errc::bad_characteristic, "the W families live in characteristic 2");
    uint32_t n = *param;
    BigInt q = spec.q();
    BigInt qn = q_pow(spec, n);
    d.schemas.push_back({"e", {"i"}, {}, {{one, {0, {{"i", 1}}}}, {one, {0, {{"i", q}}}}}});
    d.schemas.push_back({"f", {"i"}, {}, {{one, {0, {{"i", qn + 1}}}}}});
    d.schemas.push_back({"g",
                         {"i", "j"},
                         {{"i", "j"}},
                         {{one, {0, {{"i", qn}, {"j", 1}}}}, {one, {0, {{"i", 1}, {"j", qn}}}}}});
    SparsePoly e_gen;
    e_gen.add_term(spec, 1, one);
    e_gen.add_term(spec, q, one);
    d.generators.emplace_back("e", e_gen);
    d.generators.emplace_back("f", SparsePoly::monomial(spec, one, qn + 1));
    if (qn + 1 <= 1 << 20) d.functional_period = (uint32_t)(qn + 1);
    d.provenance = "substitution span of x + x^" + q.str() + " and x^" + BigInt(qn + 1).str();
    return d;
  }

  if (head == "W0") {
    // all multiples of x^q - x: spanned by x^(i-1) (x^q - x), i >= 1
    BigInt q = spec.q();
    d.schemas.push_back(
        {"b", {"i"}, {}, {{spec.neg(one), {0, {{"i", 1}}}}, {one, {q - 1, {{"i", 1}}}}}});
    SparsePoly gen;
    gen.add_term(spec, 1, spec.neg(one));
    gen.add_term(spec, q, one);
    d.generators.emplace_back("w0", gen);
    d.provenance = "the multiples of x^" + q.str() + " - x";
    return d;
  }

  if (head == "PiZ") {
    d.schemas.push_back({"m", {"i"}, {}, {{one, {1, {{"i", 1}}}}}});  // x^(1+i), i >= 1
    d.provenance = "polynomials with no linear term";
    return d;
  }

  if (head == "P") {
    if (spec.q() != 2) fail(Errc::bad_characteristic, "P is a GF(2) family");
    d.generators.emplace_back("a", parse_poly(spec, "x + x^2"));
    d.generators.emplace_back("b", parse_poly(spec, "x^7"));
    d.provenance = "substitution span of x + x^2 and x^7";
    return d;
  }

  fail(Errc::bad_params, "unknown family '" + name + "'");
}

TSpaceDesc sum_families(const TSpaceDesc& a, const TSpaceDesc& b) {
  if (!(a.field == b.field)) fail(Errc::field_mismatch, "summing spaces over different fields");
  if (a.ambient != b.ambient) fail(Errc::ambient_mismatch, "summing across ambients");
  if (a.name == b.name) return a;  // sums are idempotent
  TSpaceDesc d;
  d.name = a.name + "+" + b.name;
  d.field = a.field;
  d.ambient = a.ambient;
  d.provenance = "sum of " + a.name + " and " + b.name;
  if (a.is_sum())
    d.parts = a.parts;
  else
    d.parts.push_back(a);
  if (b.is_sum())
    d.parts.insert(d.parts.end(), b.parts.begin(), b.parts.end());
  else
    d.parts.push_back(b);
  return d;
}

TSpaceDesc custom_space(const std::string& name, const FieldSpec& spec,
                        const std::vector<std::string>& generator_texts, Ambient ambient) {
  TSpaceDesc d;
  d.name = name;
  d.field = spec;
  d.ambient = ambient;
  d.provenance = "custom generators";
  int k = 0;
  for (const auto& t : generator_texts)
    d.generators.emplace_back("g" + std::to_string(k++), parse_poly(spec, t, ambient));
  return d;
}

SpanContext span_context(const TSpaceDesc& d) {
  SpanContext ctx{d.field, {}, {}};
  auto absorb = [&ctx](const TSpaceDesc& part) {
    for (const auto& s : part.schemas) ctx.schemas.emplace_back(part.name, s);
    for (const auto& g : part.generators) ctx.generators.emplace_back(part.name, g);
  };
  if (d.is_sum())
    for (const auto& p : d.parts) absorb(p);
  else
    absorb(d);
  return ctx;
}

std::vector<SparsePoly> closure_generators(const TSpaceDesc& d, uint32_t D) {
  if (d.is_sum()) {
    std::vector<SparsePoly> out;
    for (const auto& p : d.parts)
      for (auto& g : closure_generators(p, D)) out.push_back(std::move(g));
    return out;
  }
  const FieldSpec& spec = d.field;
  if (d.name == "W0") {
    // T-ideal closure: hand the oracle every multiple that fits
    std::vector<SparsePoly> out;
    BigInt q = spec.q();
    for (BigInt i = 1; i + q - 1 <= D; ++i) {
      SparsePoly f;
      f.add_term(spec, i, spec.neg(spec.one()));
      f.add_term(spec, i + q - 1, spec.one());
      out.push_back(std::move(f));
    }
    return out;
  }
  if (d.name == "PiZ") {
    std::vector<SparsePoly> out;
    for (uint32_t j = 2; j <= D; ++j)
      out.push_back(SparsePoly::monomial(spec, spec.one(), BigInt(j)));
    return out;
  }
  std::vector<SparsePoly> out;
  for (const auto& [id, g] : d.generators) out.push_back(g);
  return out;
}

MembershipVerdict decide_in_space(const TSpaceDesc& d, const SparsePoly& g, const BigInt& cutoff,
                                  const MdeOptions& opt) {
  auto ctx = span_context(d);
  if (!ctx.schemas.empty()) {
    auto v = decide_membership(ctx, g, cutoff, opt);
    if (v.kind != MembershipVerdict::Kind::unknown) return v;
    if (!d.is_sum() && d.functional_period >= 2) {
      auto fn = solve_periodic_functional(ctx, d.functional_period, g);
      if (fn) {
        MembershipVerdict nv;
        nv.kind = MembershipVerdict::Kind::nonmember;
        nv.functional = std::move(fn);
        return nv;
      }
    }
    return v;
  }
  // No spanning schemas (e.g. P). The quotient oracle still gives sound
  // non-membership: a residual pivot at e <= D means no element of the
  // space has minimal exponent e.
  MembershipVerdict v;
  v.kind = MembershipVerdict::Kind::unknown;
  v.bound = cutoff;
  if (g.is_zero()) {
    v.kind = MembershipVerdict::Kind::member;
    v.cert = MemberCert{};
    return v;
  }
  const uint32_t D = 13;
  if (d.field.m() != 1 || (d.field.p() != 2 && d.field.p() != 3) || g.max_exp() > D) return v;
  TruncatedClosure cl(d.field, closure_generators(d, D), D, TruncMode::quotient);
  std::vector<uint8_t> row(D + 1, 0);
  for (const auto& [e, c] : g.terms()) row[(uint32_t)e] = (uint8_t)(c.residue[0] % d.field.p());
  auto residual = cl.reduce_dense(std::move(row));
  for (size_t i = 0; i < residual.size(); ++i) {
    if (residual[i]) {
      v.kind = MembershipVerdict::Kind::nonmember;
      v.gap = PivotGap{BigInt(i)};
      return v;
    }
  }
  return v;  // truncation-level containment proves nothing: stay unknown
}

MembershipVerdict covers_all(const TSpaceDesc& d, const BigInt& cutoff) {
  SparsePoly x;
  x.add_term(d.field, 1, d.field.one());
  return decide_in_space(d, x, cutoff);
}

bool special_membership(const TSpaceDesc& d, const SparsePoly& f) {
  if (d.name == "W0") return fold_poly(d.field, f).is_zero();
  if (d.name == "PiZ") return f.coeff(d.field, 1).is_zero();
  fail(Errc::bad_params, "no special decision procedure for " + d.name);
}

// --- power escalation ---

EscalationChain power_escalation(const BigInt& t, const FieldSpec& spec) {
  if (t < 1) fail(Errc::bad_params, "escalation starts from t >= 1");
  EscalationChain chain{t, {}};
  const uint32_t p = spec.p(), m = spec.m(), q = spec.q();
  BigInt cur = t;
  while (cur != 1) {
    BigInt rem = cur;
    uint32_t s = 0;
    while (rem % p == 0) {
      rem /= p;
      ++s;
    }
    if (s > 0) {
      // strip min(s, m) powers of p with one Frobenius substitution
      uint32_t s2 = s < m ? s : m;
      BigInt sub = 1, ps = 1;
      for (uint32_t i = 0; i < m - s2; ++i) sub *= p;
      for (uint32_t i = 0; i < s2; ++i) ps *= p;
      BigInt to = cur / ps;
      chain.steps.push_back({EscalationStep::Kind::strip, cur, to, sub, spec.one()});
      cur = to;
    } else if (q > 2 && cur >= q) {
      BigInt to = fold_exponent(spec, cur);
      chain.steps.push_back({EscalationStep::Kind::fold, cur, to, 0, spec.one()});
      cur = to;
    } else {
      // coprime to p: climb by one through the coefficient (t choose 1) = t
      FieldElement scalar = spec.inv(spec.from_int((int64_t)(cur % p)));
      chain.steps.push_back({EscalationStep::Kind::climb, cur, cur + 1, 0, scalar});
      cur = cur + 1;
    }
  }
  return chain;
}

namespace {

bool w0_divides(const FieldSpec& spec, const SparsePoly& f) {
  return fold_poly(spec, f).is_zero();
}

bool verify_climb(const FieldSpec& spec, const EscalationStep& st) {
  if (st.to != st.from + 1) return false;
  if (st.from % spec.p() == 0) return false;  // (t choose 1) = t must be nonzero
  if (spec.q() == 2) {
    // no nontrivial scalings exist; the jump itself is a W0 congruence
    SparsePoly jump;
    jump.add_term(spec, st.from, spec.one());
    jump.add_term(spec, st.to, spec.neg(spec.one()));
    return w0_divides(spec, jump);
  }
  if (st.from >= spec.q()) return false;  // exponents are folded below q first
  SparsePoly xt = SparsePoly::monomial(spec, spec.one(), st.from);
  auto expansion = compose(spec, xt, parse_poly(spec, "x + x^2"));
  auto comps = q_components(spec, expansion);
  uint32_t cls = (uint32_t)(st.to % (spec.q() - 1));
  if (cls == 0) cls = spec.q() - 1;
  const SparsePoly& comp = comps[cls - 1];
  // in the expansion, from+1 is the only exponent in its class, so the
  // component is exactly (from choose 1) x^(from+1)
  SparsePoly expect =
      SparsePoly::monomial(spec, spec.from_int((int64_t)(st.from % spec.p())), st.to);
  if (!(comp == expect)) return false;
  if (!(vandermonde_extract(spec, expansion)[cls - 1] == comp)) return false;
  return scale(spec, st.scalar, comp) == SparsePoly::monomial(spec, spec.one(), st.to);
}

}  // namespace

std::optional<size_t> verify_escalation(const EscalationChain& chain, const FieldSpec& spec) {
  BigInt cur = chain.start;
  for (size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& st = chain.steps[i];
    if (st.from != cur) return i;
    bool ok = false;
    switch (st.kind) {
      case EscalationStep::Kind::fold: {
        SparsePoly diff;
        diff.add_term(spec, st.from, spec.one());
        diff.add_term(spec, st.to, spec.neg(spec.one()));
        ok = st.to == fold_exponent(spec, st.from) && w0_divides(spec, diff);
        break;
      }
      case EscalationStep::Kind::strip: {
        // x^(from * sub) must literally be x^(to * q), and x^(to q) == x^to mod W0
        ok = st.from * st.sub_exp == st.to * spec.q();
        if (ok) {
          SparsePoly diff;
          diff.add_term(spec, st.to * spec.q(), spec.one());
          diff.add_term(spec, st.to, spec.neg(spec.one()));
          ok = w0_divides(spec, diff);
        }
        break;
      }
      case EscalationStep::Kind::climb:
        ok = verify_climb(spec, st);
        break;
    }
    if (!ok) return i;
    cur = st.to;
  }
  return cur == 1 ? std::nullopt : std::optional<size_t>(chain.steps.size());
}

}  // namespace tspace
