#include "tspace/unitary.hpp"

namespace tspace {

UnitaryDesc build_unitary(const std::string& name, const FieldSpec& spec) {
  if (name.rfind("U:", 0) != 0) fail(Errc::bad_params, "unitary spaces are named U:...");
  std::string base = name.substr(2);
  if (base == "Wmax") return UnitaryDesc{name, build_family("W0", spec), true};
  if (base.rfind("W:", 0) == 0 || base.rfind("V:", 0) == 0)
    return UnitaryDesc{name, build_family(base, spec), true};
  fail(Errc::bad_params, "no unitary model for '" + name + "'");
}

MembershipVerdict unitary_membership(const UnitaryDesc& d, const SparsePoly& f,
                                     const BigInt& cutoff) {
  if (f.ambient() != Ambient::unitary)
    fail(Errc::ambient_mismatch, "unitary membership expects a unitary polynomial");
  const FieldSpec& spec = d.base.field;
  // strip the constant term
  SparsePoly stripped(Ambient::nonunitary);
  for (const auto& [e, c] : f.terms())
    if (e != 0) stripped.add_term(spec, e, c);
  if (!d.include_constants && !f.coeff(spec, 0).is_zero()) {
    MembershipVerdict v;
    v.kind = MembershipVerdict::Kind::unknown;
    v.bound = cutoff;
    return v;
  }
  if (d.base.name == "W0" && d.include_constants) {
    // k + W0 admits an exact decision through the divisibility check
    MembershipVerdict v;
    if (special_membership(d.base, stripped)) {
      v.kind = MembershipVerdict::Kind::member;
      v.cert = MemberCert{};
    } else {
      v.kind = MembershipVerdict::Kind::nonmember;
    }
    return v;
  }
  return decide_in_space(d.base, stripped, cutoff);
}

bool wmax_membership(const FieldSpec& spec, const SparsePoly& f) {
  SparsePoly rem = fold_poly(spec, f);
  for (const auto& [e, c] : rem.terms())
    if (e != 0) return false;
  return true;
}

UnitaryCoverage unitary_covers(const UnitaryDesc& a, const UnitaryDesc& b, const BigInt& cutoff) {
  if (!(a.base.field == b.base.field))
    fail(Errc::field_mismatch, "unitary coverage across different fields");
  UnitaryCoverage out;
  out.constants = a.include_constants || b.include_constants;
  auto sum = sum_families(a.base, b.base);
  out.x_verdict = covers_all(sum, cutoff);
  out.covers = out.x_verdict.is_member() && out.constants;
  return out;
}

TruncatedClosure unitary_closure(const FieldSpec& spec, const std::vector<SparsePoly>& generators,
                                 uint32_t D, TruncMode mode) {
  return TruncatedClosure(spec, generators, D, mode, /*unitary_substitutions=*/true);
}

}  // namespace tspace
