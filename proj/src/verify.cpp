#include "tspace/verify.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "tspace/replay.hpp"

namespace tspace {

namespace {

struct Failure {
  std::string detail;
};

using CheckFn = void (*)(bool full, const std::string& scripts_dir, std::string& detail,
                         bool& pass);

void expect(bool cond, const std::string& what, std::string& detail, bool& pass) {
  if (!cond && pass) {
    pass = false;
    detail = what;
  }
}

SparsePoly the_x(const FieldSpec& f) {
  SparsePoly x;
  x.add_term(f, 1, f.one());
  return x;
}

std::vector<std::pair<uint32_t, uint32_t>> suite_fields(bool full) {
  std::vector<std::pair<uint32_t, uint32_t>> v{{2, 1}, {3, 1}};
  if (full) {
    v.push_back({2, 2});
    v.push_back({5, 1});
    v.push_back({2, 3});
    v.push_back({3, 2});
  }
  return v;
}

// AC1: field laws, exhaustive per order.
void ac1(bool full, const std::string&, std::string& detail, bool& pass) {
  for (auto [p, m] : suite_fields(full)) {
    auto f = FieldSpec::make(p, m);
    auto elems = f.enumerate();
    for (const auto& a : elems) {
      expect(f.pow(a, f.q()) == a, "a^q != a", detail, pass);
      if (!a.is_zero())
        expect(f.mul(f.inv(a), a) == f.one(), "inverse law failed", detail, pass);
      for (const auto& b : elems)
        expect(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)),
               "Frobenius additivity failed", detail, pass);
    }
  }
}

// AC2: x - x^(q^(2^(n+m))) lies in V_n with a replaying certificate.
void ac2(bool full, const std::string&, std::string& detail, bool& pass) {
  std::vector<uint32_t> qs{3};
  if (full) qs.push_back(5);
  for (uint32_t q : qs) {
    auto f = FieldSpec::make(q, 1);
    for (uint32_t n = 0; n <= 1; ++n) {
      for (uint32_t m = 1; m <= 2; ++m) {
        BigInt top = q;
        for (uint32_t i = 0; i < n + m; ++i) top *= top;
        if (top > 1000000) continue;
        auto vn = build_family("V:" + std::to_string(n), f);
        SparsePoly g;
        g.add_term(f, 1, f.one());
        g.add_term(f, top, f.neg(f.one()));
        auto ctx = span_context(vn);
        auto v = decide_membership(ctx, g, top + 1);
        expect(v.is_member(), "no membership at q=" + std::to_string(q), detail, pass);
        if (v.is_member())
          expect(validate_member_cert(ctx, *v.cert, g), "certificate replay failed", detail,
                 pass);
      }
    }
  }
}

// AC3: V_n + V_m covers x; the certificate splits into the halved pair.
void ac3(bool full, const std::string&, std::string& detail, bool& pass) {
  std::vector<uint32_t> qs{3};
  if (full) qs.push_back(5);
  for (uint32_t q : qs) {
    auto f = FieldSpec::make(q, 1);
    for (auto [n, m] : {std::pair<uint32_t, uint32_t>{0, 1}, {0, 2}, {1, 2}}) {
      auto a = build_family("V:" + std::to_string(n), f);
      auto b = build_family("V:" + std::to_string(m), f);
      auto sum = sum_families(a, b);
      BigInt top = q;
      for (uint32_t i = 0; i < m; ++i) top *= top;
      // instances of the larger family reach exponents up to top^2, and the
      // echelon needs that headroom to close the telescopes
      auto v = covers_all(sum, top * top + 1);
      expect(v.is_member(), "sum does not cover at q=" + std::to_string(q), detail, pass);
      if (!v.is_member()) continue;
      auto ctx = span_context(sum);
      expect(validate_member_cert(ctx, *v.cert, the_x(f)), "cover certificate replay failed",
             detail, pass);
      SparsePoly low(Ambient::nonunitary), high(Ambient::nonunitary);
      for (const auto& step : v.cert->steps) {
        const auto& sr = std::get<CertStep::SchemaRef>(step.source);
        auto inst = instantiate_schema(f, *ctx.find_schema(sr.space, sr.schema), sr.params);
        auto part = scale(f, step.scalar, inst);
        (sr.space == a.name ? low : high) = add(f, sr.space == a.name ? low : high, part);
      }
      auto half = f.inv(f.from_int(2));
      SparsePoly minus, plus;
      minus.add_term(f, 1, f.one());
      minus.add_term(f, top, f.neg(f.one()));
      plus.add_term(f, 1, f.one());
      plus.add_term(f, top, f.one());
      expect(low == scale(f, half, minus), "low part is not (x - x^E)/2", detail, pass);
      expect(high == scale(f, half, plus), "high part is not (x + x^E)/2", detail, pass);
    }
  }
}

// AC4: properness functionals for V_n and W_n, validated on random instances.
void ac4(bool full, const std::string&, std::string& detail, bool& pass) {
  std::vector<uint32_t> qs{3};
  if (full) qs.push_back(5);
  for (uint32_t q : qs) {
    auto f = FieldSpec::make(q, 1);
    for (uint32_t n = 0; n <= 1; ++n) {
      auto vn = build_family("V:" + std::to_string(n), f);
      auto ctx = span_context(vn);
      auto fn = solve_periodic_functional(ctx, vn.functional_period, the_x(f));
      expect(fn.has_value(), "no V functional at q=" + std::to_string(q), detail, pass);
      if (fn)
        expect(validate_functional(ctx, *fn, the_x(f), 1000, 10000),
               "V functional failed validation", detail, pass);
    }
  }
  std::vector<std::pair<uint32_t, uint32_t>> wfields{{2, 1}};
  if (full) wfields.push_back({2, 2});
  for (auto [p, m] : wfields) {
    auto f = FieldSpec::make(p, m);
    uint32_t max_n = m == 1 ? 3 : 1;
    for (uint32_t n = 1; n <= max_n; ++n) {
      auto wn = build_family("W:" + std::to_string(n), f);
      auto ctx = span_context(wn);
      auto fn = solve_periodic_functional(ctx, wn.functional_period, the_x(f));
      expect(fn.has_value(), "no W functional at q=" + std::to_string(f.q()), detail, pass);
      if (fn)
        expect(validate_functional(ctx, *fn, the_x(f), 1000, 10000),
               "W functional failed validation", detail, pass);
    }
  }
}

// AC5: the spanning families generate exactly the truncated closure of the
// two generators (subspace equality, not just dimensions).
void ac5(bool, const std::string&, std::string& detail, bool& pass) {
  auto f = FieldSpec::make(2, 1);
  for (uint32_t n = 1; n <= 2; ++n) {
    auto w = build_family("W:" + std::to_string(n), f);
    auto ctx = span_context(w);
    for (uint32_t D : {10u, 12u}) {
      TruncatedClosure closure(f, closure_generators(w, D), D, TruncMode::exact);
      // schema-instance span, built with the same 2D working headroom
      TruncatedClosure span(f, {}, D, TruncMode::exact);
      for (const auto& [space, schema] : ctx.schemas) {
        for (uint64_t i = 1; i <= 2 * D; ++i) {
          for (uint64_t j = 1; j <= (schema.params.size() == 2 ? 2 * D : 1); ++j) {
            ParamAssignment a{{"i", i}};
            if (schema.params.size() == 2) {
              if (j >= i) break;
              a["j"] = j;
            } else if (j > 1) {
              break;
            }
            if (!schema.satisfied(a)) continue;
            auto inst = instantiate_schema(f, schema, a);
            if (inst.is_zero() || inst.max_exp() > 2 * D) continue;
            span.insert_external(inst, f);
          }
        }
      }
      expect(span.dimension() == closure.dimension(),
             "dimension mismatch at D=" + std::to_string(D), detail, pass);
      // exact equality of the reported subspaces, both directions
      for (const auto& row : span.basis()) {
        auto res = closure.reduce_dense(row);
        for (auto c : res)
          expect(c == 0, "schema span escapes the closure at D=" + std::to_string(D), detail,
                 pass);
      }
      for (const auto& row : closure.basis()) {
        auto res = span.reduce_dense(row);
        for (auto c : res)
          expect(c == 0, "closure escapes the schema span at D=" + std::to_string(D), detail,
                 pass);
      }
    }
  }
}

// AC6: the W-sum derivation scripts replay and end with x.
void ac6(bool, const std::string& scripts_dir, std::string& detail, bool& pass) {
  auto rep = run_script(load_script(scripts_dir + "/wsum_q2.json"));
  expect(rep.pass, "wsum_q2 failed at step " + std::to_string(rep.first_fail), detail, pass);
  if (!rep.pass) return;
  auto f = FieldSpec::make(2, 1);
  for (const char* l : {"x_12", "x_14", "x_24"}) {
    expect(rep.labels.at(l).poly == the_x(f), std::string(l) + " does not end at x", detail,
           pass);
    expect(rep.labels.at(l).spaces.size() == 2, std::string(l) + " has wrong provenance", detail,
           pass);
  }
}

// AC7: W_1 is maximal at desk scale: every polynomial of degree <= 11
// reduces to 0 or x, reduction agrees with the oracle, quotient dim 1.
void ac7(bool, const std::string&, std::string& detail, bool& pass) {
  auto f = FieldSpec::make(2, 1);
  auto sys = build_rules(RewriteTarget::W1, f);
  auto w1 = build_family("W:1", f);
  const uint32_t D = 11;
  TruncatedClosure oracle(f, closure_generators(w1, D), D, TruncMode::exact);
  expect(oracle.dimension() == D - 1, "oracle dimension is not D-1", detail, pass);
  auto x = the_x(f);
  for (uint32_t mask = 0; mask < (1u << D); ++mask) {
    SparsePoly g;
    for (uint32_t e = 1; e <= D; ++e)
      if (mask & (1u << (e - 1))) g.add_term(f, e, f.one());
    auto red = reduce_canonical(sys, g);
    bool canonical_ok = red.canonical.is_zero() || red.canonical == x;
    expect(canonical_ok, "canonical form outside {0, x}", detail, pass);
    expect((oracle.contains(f, g)) == red.canonical.is_zero(),
           "oracle and rewrite disagree on mask " + std::to_string(mask), detail, pass);
    if (!pass) return;
  }
}

// AC8: W_2 at desk scale: canonical forms in span{x, x^3, x^7}, quotient
// dimension 3, the six cases replay, and the period-5 functional shows
// x^7 outside W_2.
void ac8(bool, const std::string& scripts_dir, std::string& detail, bool& pass) {
  auto f = FieldSpec::make(2, 1);
  auto sys = build_rules(RewriteTarget::W2, f);
  auto w2 = build_family("W:2", f);
  const uint32_t D = 11;
  TruncatedClosure oracle(f, closure_generators(w2, D), D, TruncMode::exact);
  expect(oracle.dimension() == D - 3, "W_2 quotient dimension is not 3", detail, pass);
  for (uint32_t mask = 0; mask < (1u << D); ++mask) {
    SparsePoly g;
    for (uint32_t e = 1; e <= D; ++e)
      if (mask & (1u << (e - 1))) g.add_term(f, e, f.one());
    auto red = reduce_canonical(sys, g);
    for (const auto& [e, c] : red.canonical.terms())
      expect(e == 1 || e == 3 || e == 7, "canonical form outside span{x, x^3, x^7}", detail,
             pass);
    expect(oracle.contains(f, g) == red.canonical.is_zero(), "oracle and rewrite disagree",
           detail, pass);
    if (!pass) return;
  }
  auto rep = run_script(load_script(scripts_dir + "/w2_cases.json"));
  expect(rep.pass, "w2_cases failed at step " + std::to_string(rep.first_fail), detail, pass);

  auto ctx = span_context(w2);
  SparsePoly x7;
  x7.add_term(f, 7, f.one());
  auto fn = solve_periodic_functional(ctx, 5, x7);
  expect(fn.has_value(), "no period-5 functional for x^7", detail, pass);
  if (fn)
    expect(validate_functional(ctx, *fn, x7, 1000, 10000), "x^7 functional failed validation",
           detail, pass);
}

// AC9: the P chain replays to x; the quotient closure of P at D = 13 is
// the full space; the mutated twin fails at the mutated step.
void ac9(bool, const std::string& scripts_dir, std::string& detail, bool& pass) {
  auto f = FieldSpec::make(2, 1);
  auto rep = run_script(load_script(scripts_dir + "/p_chain.json"));
  expect(rep.pass, "p_chain failed at step " + std::to_string(rep.first_fail), detail, pass);
  if (rep.pass) {
    expect(rep.labels.at("final").poly == the_x(f), "p_chain does not end at x", detail, pass);
    expect(rep.labels.at("final").spaces == std::set<std::string>{"P"},
           "p_chain provenance is not P alone", detail, pass);
  }
  auto p = build_family("P", f);
  TruncatedClosure cl(f, closure_generators(p, 13), 13, TruncMode::quotient);
  expect(cl.dimension() == 13, "P closure at D=13 is not full", detail, pass);

  // the negative control must fail exactly where the fixture was mutated
  std::ifstream ga(scripts_dir + "/p_chain.json"), gb(scripts_dir + "/negative/p_chain_bad.json");
  Json ja = Json::parse(ga), jb = Json::parse(gb);
  int mutated = -1;
  for (size_t i = 0; i < ja.at("steps").size(); ++i)
    if (ja["steps"][i] != jb["steps"][i]) {
      mutated = (int)i;
      break;
    }
  auto bad = run_script(load_script(scripts_dir + "/negative/p_chain_bad.json"));
  expect(!bad.pass, "mutated p_chain unexpectedly passed", detail, pass);
  expect(mutated >= 0 && bad.first_fail == mutated,
         "mutated p_chain failed at step " + std::to_string(bad.first_fail) +
             ", expected " + std::to_string(mutated),
         detail, pass);
}

// AC10: the unitary laws: k + W_n oracle dimension, coverage of the
// unitary sums, wmax vs exhaustive folding, and the unitary script.
void ac10(bool full, const std::string& scripts_dir, std::string& detail, bool& pass) {
  auto f2 = FieldSpec::make(2, 1);
  for (uint32_t n = 1; n <= 2; ++n) {
    auto w = build_family("W:" + std::to_string(n), f2);
    std::vector<SparsePoly> ugens;
    for (const auto& [id, g] : w.generators) {
      SparsePoly u(Ambient::unitary);
      for (const auto& [e, c] : g.terms()) u.add_term(f2, e, c);
      ugens.push_back(std::move(u));
    }
    const uint32_t D = 10;
    TruncatedClosure base(f2, closure_generators(w, D), D, TruncMode::exact);
    auto uni = unitary_closure(f2, ugens, D, TruncMode::exact);
    expect(uni.dimension() == base.dimension() + 1,
           "unitary dimension is not 1 + nonunitary at n=" + std::to_string(n), detail, pass);
  }
  auto cov = unitary_covers(build_unitary("U:W:1", f2), build_unitary("U:W:2", f2), 64);
  expect(cov.covers, "k+W_1 plus k+W_2 does not cover", detail, pass);

  std::vector<std::pair<uint32_t, uint32_t>> wfields{{2, 1}};
  if (full) wfields.push_back({2, 2});
  for (auto [p, m] : wfields) {
    auto f = FieldSpec::make(p, m);
    uint32_t q = f.q();
    // independent route: literal long division by x^q - x
    auto division_constant = [&](const SparsePoly& g) {
      if (g.is_zero()) return true;
      std::vector<FieldElement> dense(to_u64(g.max_exp()) + 1, f.zero());
      for (const auto& [e, c] : g.terms()) dense[to_u64(e)] = c;
      for (size_t d = dense.size(); d-- > q;) {
        if (dense[d].is_zero()) continue;
        dense[d - q + 1] = f.add(dense[d - q + 1], dense[d]);  // x^d -> x^(d-q+1)
        dense[d] = f.zero();
      }
      for (size_t e = 1; e < dense.size() && e <= q; ++e)
        if (!dense[e].is_zero()) return false;
      return true;
    };
    // exhaustive unitary polynomials of degree <= q + 2
    uint32_t digits = q + 3;
    std::vector<uint32_t> c(digits, 0);
    while (true) {
      SparsePoly g(Ambient::unitary);
      for (uint32_t e = 0; e < digits; ++e) g.add_term(f, e, f.element(c[e]));
      expect(wmax_membership(f, g) == division_constant(g), "wmax disagrees with long division",
             detail, pass);
      uint32_t i = digits;
      while (i > 0) {
        if (++c[i - 1] < q) break;
        c[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  auto rep = run_script(load_script(scripts_dir + "/unitary_w.json"));
  expect(rep.pass, "unitary_w failed at step " + std::to_string(rep.first_fail), detail, pass);
}

// AC11: Vandermonde extraction equals the direct split, and q-homogeneous
// components of closure members stay members.
void ac11(bool full, const std::string&, std::string& detail, bool& pass) {
  std::vector<std::pair<uint32_t, uint32_t>> fields{{3, 1}};
  if (full) {
    fields.push_back({2, 2});
    fields.push_back({5, 1});
  }
  std::mt19937_64 rng(0xac11);
  for (auto [p, m] : fields) {
    auto f = FieldSpec::make(p, m);
    std::uniform_int_distribution<int> ex(1, 60), nt(0, 8);
    std::uniform_int_distribution<uint32_t> cf(0, f.q() - 1);
    for (int t = 0; t < 100; ++t) {
      SparsePoly g;
      for (int k = nt(rng); k > 0; --k) g.add_term(f, BigInt(ex(rng)), f.element(cf(rng)));
      expect(vandermonde_extract(f, g) == q_components(f, g),
             "vandermonde disagrees with the direct split", detail, pass);
    }
  }
  // closure members: components stay inside (checked against the oracle)
  auto f3 = FieldSpec::make(3, 1);
  const uint32_t D = 8;
  struct Case {
    std::vector<SparsePoly> gens;
    TruncMode mode;
  };
  auto w0 = build_family("W0", f3);
  std::vector<Case> cases;
  cases.push_back({closure_generators(w0, D), TruncMode::exact});
  cases.push_back({{parse_poly(f3, "x^2")}, TruncMode::exact});
  auto v0 = build_family("V:0", f3);
  cases.push_back({closure_generators(v0, D), TruncMode::quotient});
  for (const auto& c : cases) {
    TruncatedClosure cl(f3, c.gens, D, c.mode);
    auto basis = cl.basis_polys(f3);
    std::uniform_int_distribution<size_t> pick(0, basis.empty() ? 0 : basis.size() - 1);
    std::uniform_int_distribution<uint32_t> cf(0, 2);
    for (int t = 0; t < 100 && !basis.empty(); ++t) {
      SparsePoly member(Ambient::nonunitary);
      for (const auto& row : basis)
        member = add(f3, member, scale(f3, f3.from_int(cf(rng)), row));
      for (const auto& comp : q_components(f3, member))
        expect(cl.contains(f3, comp), "a q-homogeneous component escapes the space", detail,
               pass);
    }
  }
}

// AC12: the power escalation chain verifies stepwise for all t <= 50.
void ac12(bool full, const std::string&, std::string& detail, bool& pass) {
  std::vector<std::pair<uint32_t, uint32_t>> fields{{2, 1}, {3, 1}};
  if (full) {
    fields.push_back({2, 2});
    fields.push_back({5, 1});
  }
  for (auto [p, m] : fields) {
    auto f = FieldSpec::make(p, m);
    for (int t = 1; t <= 50; ++t) {
      auto chain = power_escalation(t, f);
      auto bad = verify_escalation(chain, f);
      expect(!bad.has_value(),
             "chain for t=" + std::to_string(t) + " at q=" + std::to_string(f.q()) +
                 " failed at step " + std::to_string(bad ? *bad : 0),
             detail, pass);
    }
  }
}

struct CheckDef {
  const char* id;
  const char* title;
  const char* params_quick;
  const char* params_full;
  CheckFn fn;
};

const CheckDef kChecks[] = {
    {"AC1", "field laws, exhaustive", "q in {2,3}", "q in {2,3,4,5,8,9}", ac1},
    {"AC2", "x - x^(q^(2^(n+m))) lies in V_n", "q=3, n in {0,1}, m in {1,2}",
     "q in {3,5}, n in {0,1}, m in {1,2}", ac2},
    {"AC3", "V_n + V_m covers x with the halved pair certificate", "q=3, pairs (0,1),(0,2),(1,2)",
     "q in {3,5}, pairs (0,1),(0,2),(1,2)", ac3},
    {"AC4", "properness functionals for V_n and W_n", "q in {2,3}", "q in {2,3,4,5}", ac4},
    {"AC5", "spanning families equal the truncated closure", "q=2, n in {1,2}, D in {10,12}",
     "q=2, n in {1,2}, D in {10,12}", ac5},
    {"AC6", "W-sum chains replay to x", "q=2, pairs (W1,W2),(W1,W4),(W2,W4)",
     "q=2, pairs (W1,W2),(W1,W4),(W2,W4)", ac6},
    {"AC7", "W_1 quotient has dimension 1 at degree 11", "q=2, 2^11 polynomials",
     "q=2, 2^11 polynomials", ac7},
    {"AC8", "W_2 quotient has dimension 3; x^7 separated", "q=2, 2^11 polynomials",
     "q=2, 2^11 polynomials", ac8},
    {"AC9", "the P chain derives x; closure confirms", "q=2, D=13", "q=2, D=13", ac9},
    {"AC10", "unitary closure laws and wmax agreement", "q=2", "q in {2,4}", ac10},
    {"AC11", "Vandermonde extraction and component closure", "q=3", "q in {3,4,5}", ac11},
    {"AC12", "power escalation verifies to t = 50", "q in {2,3}", "q in {2,3,4,5}", ac12},
};

}  // namespace

VerificationReport verify_suite(const std::string& profile, const std::string& scripts_dir) {
  bool full = profile == "full";
  VerificationReport rep;
  rep.profile = full ? "full" : "quick";
  rep.all_pass = true;
  // checks are independent and pure: run them in a work pool, assemble the
  // report in declaration order
  std::vector<std::future<CheckResult>> futures;
  for (const auto& def : kChecks) {
    futures.push_back(std::async(std::launch::async, [&def, full, &scripts_dir] {
      CheckResult r;
      r.id = def.id;
      r.title = def.title;
      r.params = full ? def.params_full : def.params_quick;
      r.pass = true;
      auto t0 = std::chrono::steady_clock::now();
      try {
        def.fn(full, scripts_dir, r.detail, r.pass);
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
      return r;
    }));
  }
  for (auto& fu : futures) {
    CheckResult r = fu.get();
    rep.all_pass &= r.pass;
    rep.checks.push_back(std::move(r));
  }
  std::ostringstream hashable;
  for (const auto& c : rep.checks)
    hashable << c.id << '|' << c.params << '|' << (c.pass ? "pass" : "fail") << '|' << c.detail
             << '\n';
  rep.digest = fnv1a(hashable.str());
  return rep;
}

Json verification_report_to_json(const VerificationReport& r) {
  Json j;
  j["profile"] = r.profile;
  j["all_pass"] = r.all_pass;
  std::ostringstream digest;
  digest << std::hex << r.digest;
  j["digest"] = digest.str();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["id"] = c.id;
    cj["title"] = c.title;
    cj["params"] = c.params;
    cj["verdict"] = c.pass ? "pass" : "fail";
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cj["wall_ms"] = c.wall_ms;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace tspace
