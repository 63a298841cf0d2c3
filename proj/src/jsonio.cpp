#include "tspace/jsonio.hpp"

namespace tspace {

Json field_to_json(const FieldSpec& spec) {
  Json j;
  j["p"] = spec.p();
  j["m"] = spec.m();
  j["modulus"] = spec.modulus();
  return j;
}

FieldSpec field_from_json(const Json& j) {
  uint32_t p = j.at("p").get<uint32_t>();
  uint32_t m = j.value("m", 1u);
  std::vector<uint16_t> modulus;
  if (j.contains("modulus")) modulus = j["modulus"].get<std::vector<uint16_t>>();
  return FieldSpec::make(p, m, std::move(modulus));
}

Json coef_to_json(const FieldSpec& spec, const FieldElement& c) {
  Json j = Json::array();
  for (auto r : c.residue) j.push_back(r);
  return j;
}

FieldElement coef_from_json(const FieldSpec& spec, const Json& j) {
  FieldElement c = spec.zero();
  if (j.is_number_integer()) {
    c = spec.from_int(j.get<int64_t>());
    return c;
  }
  if (!j.is_array() || j.size() != spec.m()) fail(Errc::parse_error, "bad coefficient vector");
  for (uint32_t i = 0; i < spec.m(); ++i) {
    int64_t v = j[i].get<int64_t>();
    if (v < 0 || v >= spec.p()) fail(Errc::parse_error, "coefficient residue out of range");
    c.residue[i] = (uint16_t)v;
  }
  return c;
}

Json poly_to_json(const FieldSpec& spec, const SparsePoly& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json t;
    t["exp"] = e.str();
    t["coef"] = coef_to_json(spec, c);
    terms.push_back(std::move(t));
  }
  return terms;
}

SparsePoly poly_from_json(const FieldSpec& spec, const Json& j, Ambient a) {
  SparsePoly f(a);
  for (const auto& t : j) {
    BigInt e(t.at("exp").get<std::string>());
    f.add_term(spec, e, coef_from_json(spec, t.at("coef")));
  }
  return f;
}

Json combo_to_json(const FieldSpec& spec, const Combo& combo) {
  Json steps = Json::array();
  for (const auto& s : combo) {
    Json step;
    if (const auto* sr = std::get_if<CertStep::SchemaRef>(&s.source)) {
      Json src;
      src["space"] = sr->space;
      src["schema"] = sr->schema;
      Json params;
      for (const auto& [k, v] : sr->params) params[k] = v.str();
      src["params"] = std::move(params);
      step["source"] = std::move(src);
    } else {
      const auto& gr = std::get<CertStep::GenRef>(s.source);
      Json src;
      src["space"] = gr.space;
      src["generator"] = gr.gen;
      src["subst"] = poly_to_json(spec, gr.subst);
      step["source"] = std::move(src);
    }
    step["scalar"] = coef_to_json(spec, s.scalar);
    steps.push_back(std::move(step));
  }
  return steps;
}

Combo combo_from_json(const FieldSpec& spec, const Json& j) {
  Combo combo;
  for (const auto& step : j) {
    CertStep s{CertStep::SchemaRef{}, coef_from_json(spec, step.at("scalar"))};
    const Json& src = step.at("source");
    if (src.contains("schema")) {
      CertStep::SchemaRef sr;
      sr.space = src.value("space", "");
      sr.schema = src.at("schema").get<std::string>();
      for (const auto& [k, v] : src.at("params").items()) sr.params[k] = BigInt(v.get<std::string>());
      s.source = std::move(sr);
    } else {
      CertStep::GenRef gr;
      gr.space = src.value("space", "");
      gr.gen = src.at("generator").get<std::string>();
      gr.subst = poly_from_json(spec, src.at("subst"));
      s.source = std::move(gr);
    }
    combo.push_back(std::move(s));
  }
  return combo;
}

Json functional_to_json(const FieldSpec& spec, const PeriodicFunctional& fn) {
  Json j;
  j["period"] = fn.period;
  Json w = Json::array();
  for (const auto& c : fn.weights) w.push_back(coef_to_json(spec, c));
  j["weights"] = std::move(w);
  return j;
}

PeriodicFunctional functional_from_json(const FieldSpec& spec, const Json& j) {
  PeriodicFunctional fn;
  fn.period = j.at("period").get<uint32_t>();
  for (const auto& w : j.at("weights")) fn.weights.push_back(coef_from_json(spec, w));
  if (fn.weights.size() != fn.period) fail(Errc::parse_error, "functional weight count mismatch");
  return fn;
}

Json verdict_to_json(const FieldSpec& spec, const MembershipVerdict& v, const SparsePoly& target) {
  Json j;
  switch (v.kind) {
    case MembershipVerdict::Kind::member:
      j["verdict"] = "member";
      break;
    case MembershipVerdict::Kind::nonmember:
      j["verdict"] = "nonmember";
      break;
    case MembershipVerdict::Kind::unknown:
      j["verdict"] = "unknown";
      j["bound"] = v.bound.str();
      break;
  }
  j["target"] = poly_to_json(spec, target);
  if (v.cert) j["steps"] = combo_to_json(spec, v.cert->steps);
  if (v.functional) j["functional"] = functional_to_json(spec, *v.functional);
  if (v.gap) j["pivot_gap"] = v.gap->exponent.str();
  return j;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace tspace
