#include "tspace/replay.hpp"

#include <fstream>

namespace tspace {

const SpaceBinding* DerivationScript::find_space(const std::string& key) const {
  for (const auto& b : spaces)
    if (b.key == key) return &b;
  return nullptr;
}

namespace {

BigInt json_to_bigint(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  fail(Errc::parse_error, "expected an integer or decimal string");
}

ScriptStep::Op op_from_string(const std::string& s) {
  if (s == "generator") return ScriptStep::Op::generator;
  if (s == "substitute") return ScriptStep::Op::substitute;
  if (s == "combine") return ScriptStep::Op::combine;
  if (s == "poly") return ScriptStep::Op::poly;
  if (s == "assert_equals") return ScriptStep::Op::assert_equals;
  if (s == "assert_in_space") return ScriptStep::Op::assert_in_space;
  if (s == "assert_congruent") return ScriptStep::Op::assert_congruent;
  fail(Errc::parse_error, "unknown step op '" + s + "'");
}

}  // namespace

DerivationScript parse_script(const Json& j) {
  DerivationScript s;
  s.name = j.value("name", "script");
  s.field = field_from_json(j.at("field"));
  if (j.value("ambient", "nonunitary") == "unitary") s.ambient = Ambient::unitary;

  for (const auto& [key, spec_j] : j.at("spaces").items()) {
    SpaceBinding b;
    b.key = key;
    if (spec_j.contains("family")) {
      std::string fam = spec_j["family"].get<std::string>();
      if (fam.rfind("U:", 0) == 0) {
        auto u = build_unitary(fam, s.field);
        b.unitary = true;
        b.desc = std::move(u.base);
        b.include_constants = u.include_constants;
        b.desc.name = fam;  // keep the unitary name for method dispatch
      } else {
        b.desc = build_family(fam, s.field);
      }
    } else if (spec_j.contains("generators")) {
      bool unitary = spec_j.value("unitary", s.ambient == Ambient::unitary);
      b.unitary = unitary;
      b.desc = custom_space("custom:" + key, s.field,
                            spec_j["generators"].get<std::vector<std::string>>(),
                            unitary ? Ambient::unitary : Ambient::nonunitary);
    } else if (spec_j.contains("sum")) {
      auto names = spec_j["sum"].get<std::vector<std::string>>();
      if (names.empty()) fail(Errc::parse_error, "empty sum binding");
      std::optional<TSpaceDesc> acc;
      for (const auto& n : names) {
        const auto* part = s.find_space(n);
        if (!part) fail(Errc::unknown_label, "sum references unbound space " + n);
        acc = acc ? sum_families(*acc, part->desc) : part->desc;
      }
      b.desc = std::move(*acc);
    } else {
      fail(Errc::parse_error, "space binding needs family, generators or sum");
    }
    s.spaces.push_back(std::move(b));
  }

  std::set<std::string> labels;
  for (const auto& step_j : j.at("steps")) {
    ScriptStep st;
    st.op = op_from_string(step_j.at("op").get<std::string>());
    st.label = step_j.value("label", "");
    st.space = step_j.value("space", "");
    st.of = step_j.value("of", "");
    st.a = step_j.value("a", "");
    st.b = step_j.value("b", "");
    st.method = step_j.value("method", "");
    st.gen = step_j.value("gen", "");
    st.poly_text = step_j.value("poly", "");
    st.u_text = step_j.value("u", "");
    if (step_j.contains("cutoff")) st.cutoff = json_to_bigint(step_j["cutoff"]);
    if (step_j.contains("schema"))
      st.schema_inst = {step_j["schema"].get<std::string>(), step_j.value("params", Json::object())};
    if (step_j.contains("terms"))
      for (const auto& t : step_j["terms"])
        st.combo.emplace_back(t.value("scalar", Json(1)), t.at("of").get<std::string>());

    // static validation
    auto need_label = [&](const std::string& l) {
      if (l.empty()) fail(Errc::parse_error, "missing label reference in step");
      if (!labels.count(l))
        fail(Errc::forward_reference, "step references label '" + l + "' before definition");
    };
    auto need_space = [&](const std::string& sp) {
      if (!s.find_space(sp)) fail(Errc::unknown_label, "step references unbound space " + sp);
    };
    switch (st.op) {
      case ScriptStep::Op::generator:
        need_space(st.space);
        break;
      case ScriptStep::Op::substitute:
        need_label(st.of);
        break;
      case ScriptStep::Op::combine:
        if (st.combo.empty()) fail(Errc::parse_error, "combine with no terms");
        for (const auto& [sc, l] : st.combo) need_label(l);
        break;
      case ScriptStep::Op::poly:
        break;
      case ScriptStep::Op::assert_equals:
        need_label(st.of);
        break;
      case ScriptStep::Op::assert_in_space:
        need_label(st.of);
        need_space(st.space);
        break;
      case ScriptStep::Op::assert_congruent:
        need_label(st.a);
        need_label(st.b);
        need_space(st.space);
        break;
    }
    bool defines = st.op == ScriptStep::Op::generator || st.op == ScriptStep::Op::substitute ||
                   st.op == ScriptStep::Op::combine || st.op == ScriptStep::Op::poly;
    if (defines) {
      if (st.label.empty()) fail(Errc::parse_error, "defining step without a label");
      if (!labels.insert(st.label).second)
        fail(Errc::parse_error, "duplicate label '" + st.label + "'");
    }
    s.steps.push_back(std::move(st));
  }
  return s;
}

DerivationScript parse_script_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail(Errc::parse_error, "script is not valid JSON");
  return parse_script(j);
}

DerivationScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open script " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_script_text(text);
}

namespace {

// Discharges "f lies in the space" by the named method.
bool check_in_space(const DerivationScript& s, const SpaceBinding& b, const std::string& method,
                    const SparsePoly& f, const BigInt& cutoff, std::string& note) {
  const FieldSpec& spec = s.field;
  SparsePoly g = f;
  if (b.unitary) {
    // unitary bindings strip the constant term and check the base
    if (b.desc.name == "U:Wmax" || b.desc.name == "W0") {
      if (b.include_constants) {
        bool ok = wmax_membership(spec, f);
        if (!ok) note = "remainder mod x^q - x is not constant";
        return ok;
      }
    }
    SparsePoly stripped(Ambient::nonunitary);
    for (const auto& [e, c] : f.terms())
      if (e != 0) stripped.add_term(spec, e, c);
    if (!b.include_constants && !f.coeff(spec, 0).is_zero()) {
      note = "constant term outside the space";
      return false;
    }
    g = std::move(stripped);
  } else if (g.ambient() == Ambient::unitary) {
    note = "unitary polynomial asserted against a nonunitary space";
    return false;
  }

  if (method == "rewrite") {
    RewriteTarget t;
    if (b.desc.name == "W:1")
      t = RewriteTarget::W1;
    else if (b.desc.name == "W:2")
      t = RewriteTarget::W2;
    else {
      note = "rewrite method only discharges W:1 or W:2";
      return false;
    }
    auto sys = build_rules(t, spec);
    auto red = reduce_canonical(sys, g);
    if (!red.canonical.is_zero()) {
      note = "canonical form " + to_string(spec, red.canonical);
      return false;
    }
    return true;
  }
  if (method == "special") {
    bool ok = special_membership(b.desc, g);
    if (!ok) note = "special oracle rejected the element";
    return ok;
  }
  if (method == "mde") {
    auto v = decide_in_space(b.desc, g, cutoff);
    if (!v.is_member()) {
      note = v.kind == MembershipVerdict::Kind::unknown ? "echelon search gave unknown"
                                                        : "echelon search gave nonmember";
      return false;
    }
    return true;
  }
  note = "unknown discharge method '" + method + "'";
  return false;
}

}  // namespace

RunReport run_script(const DerivationScript& s) {
  const FieldSpec& spec = s.field;
  RunReport rep;
  std::map<std::string, LabelState> env;

  auto fail_step = [&](size_t i, const std::string& note,
                       SparsePoly residual = SparsePoly(Ambient::nonunitary)) {
    rep.steps.push_back({i, false, note, std::move(residual)});
    rep.pass = false;
    if (rep.first_fail < 0) rep.first_fail = (int)i;
  };
  auto ok_step = [&](size_t i, const std::string& note = "") {
    rep.steps.push_back({i, true, note, SparsePoly(s.ambient)});
  };

  for (size_t i = 0; i < s.steps.size(); ++i) {
    if (!rep.pass) break;  // report the first failure and stop
    const auto& st = s.steps[i];
    switch (st.op) {
      case ScriptStep::Op::generator: {
        const auto* b = s.find_space(st.space);
        Ambient amb = b->desc.ambient;
        LabelState ls;
        if (st.schema_inst) {
          const auto& [sid, params_j] = *st.schema_inst;
          const GeneratorSchema* schema = nullptr;
          for (const auto& sc : b->desc.schemas)
            if (sc.id == sid) schema = &sc;
          if (!schema) {
            fail_step(i, "space " + st.space + " has no schema " + sid);
            continue;
          }
          ParamAssignment a;
          for (const auto& [k, v] : params_j.items()) a[k] = json_to_bigint(v);
          ls.poly = instantiate_schema(spec, *schema, a);
        } else {
          const SparsePoly* g = nullptr;
          for (const auto& [id, gp] : b->desc.generators)
            if (id == st.gen) g = &gp;
          if (!g) {
            fail_step(i, "space " + st.space + " has no generator '" + st.gen + "'");
            continue;
          }
          ls.poly = *g;
          if (!st.u_text.empty())
            ls.poly = compose(spec, ls.poly, parse_poly(spec, st.u_text, amb));
        }
        ls.spaces = {st.space};
        env[st.label] = std::move(ls);
        ok_step(i);
        break;
      }
      case ScriptStep::Op::substitute: {
        const auto& src = env.at(st.of);
        if (src.spaces.empty()) {
          fail_step(i, "substitution into a label with no established membership");
          continue;
        }
        LabelState ls;
        ls.poly = compose(spec, src.poly, parse_poly(spec, st.u_text, src.poly.ambient()));
        ls.spaces = src.spaces;  // T-spaces are closed under substitution
        env[st.label] = std::move(ls);
        ok_step(i);
        break;
      }
      case ScriptStep::Op::combine: {
        LabelState ls;
        ls.poly = SparsePoly(s.ambient);
        bool first = true;
        for (const auto& [sc_j, l] : st.combo) {
          const auto& src = env.at(l);
          FieldElement c = coef_from_json(spec, sc_j);
          if (first) {
            ls.poly = SparsePoly(src.poly.ambient());
            first = false;
          }
          ls.poly = add(spec, ls.poly, scale(spec, c, src.poly));
          ls.spaces.insert(src.spaces.begin(), src.spaces.end());
        }
        env[st.label] = std::move(ls);
        ok_step(i);
        break;
      }
      case ScriptStep::Op::poly: {
        LabelState ls;
        ls.poly = parse_poly(spec, st.poly_text, s.ambient);
        env[st.label] = std::move(ls);
        ok_step(i);
        break;
      }
      case ScriptStep::Op::assert_equals: {
        const auto& src = env.at(st.of);
        SparsePoly want = parse_poly(spec, st.poly_text, src.poly.ambient());
        if (src.poly == want) {
          ok_step(i);
        } else {
          fail_step(i, "polynomial mismatch at label " + st.of, sub(spec, src.poly, want));
        }
        break;
      }
      case ScriptStep::Op::assert_in_space: {
        auto& src = env.at(st.of);
        const auto* b = s.find_space(st.space);
        std::string note;
        bool ok;
        if (st.method == "derived") {
          std::set<std::string> allowed;
          if (b->desc.is_sum())
            for (const auto& p : b->desc.parts) allowed.insert(p.name);
          allowed.insert(st.space);
          allowed.insert(b->desc.name);
          ok = true;
          for (const auto& sp : src.spaces) {
            const auto* sb = s.find_space(sp);
            std::string resolved = sb ? sb->desc.name : sp;
            if (!allowed.count(sp) && !allowed.count(resolved)) ok = false;
          }
          if (!ok) note = "membership is not derivable from the label's spaces";
        } else {
          ok = check_in_space(s, *b, st.method, src.poly, st.cutoff, note);
        }
        if (ok) {
          src.spaces.insert(st.space);  // the claim is now established
          ok_step(i);
        } else {
          fail_step(i, note, src.poly);
        }
        break;
      }
      case ScriptStep::Op::assert_congruent: {
        const auto& pa = env.at(st.a);
        const auto& pb = env.at(st.b);
        const auto* b = s.find_space(st.space);
        SparsePoly diff = sub(spec, pa.poly, pb.poly);
        std::string note;
        if (check_in_space(s, *b, st.method, diff, st.cutoff, note)) {
          ok_step(i);
        } else {
          fail_step(i, note, diff);
        }
        break;
      }
    }
  }
  for (auto& [l, st] : env) rep.labels.emplace(l, std::move(st));
  return rep;
}

Json report_to_json(const FieldSpec& spec, const RunReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["first_fail"] = r.first_fail;
  Json steps = Json::array();
  for (const auto& st : r.steps) {
    Json sj;
    sj["index"] = st.index;
    sj["ok"] = st.ok;
    if (!st.note.empty()) sj["note"] = st.note;
    if (!st.ok) sj["residual"] = to_string(spec, st.residual);
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  return j;
}

}  // namespace tspace
