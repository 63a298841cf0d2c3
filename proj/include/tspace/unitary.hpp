#pragma once

#include "tspace/families.hpp"

namespace tspace {

/// T-space of the unitary algebra k[x] modeled as k + base for the
/// families where the closure law holds (k + W_n, k + V_n, and the maximal
/// space k + W0).
struct UnitaryDesc {
  std::string name;  // "U:W:n", "U:V:n", "U:Wmax"
  TSpaceDesc base;
  bool include_constants = true;
};

/// Builds "U:W:n", "U:V:n" or "U:Wmax" (= k + W0).
UnitaryDesc build_unitary(const std::string& name, const FieldSpec& spec);

/// Strips the constant term and delegates to the base decision: f is a
/// member iff f - f(0) lies in the base space.
MembershipVerdict unitary_membership(const UnitaryDesc& d, const SparsePoly& f,
                                     const BigInt& cutoff);

/// Membership in W = k + (the multiples of x^q - x): true iff the
/// remainder of f mod x^q - x is a constant.
bool wmax_membership(const FieldSpec& spec, const SparsePoly& f);

struct UnitaryCoverage {
  bool covers = false;            // the sum contains both x and 1
  MembershipVerdict x_verdict;    // membership of x in the base sum
  bool constants = false;
};

/// Checks that the sum of two unitary spaces is everything: x must lie in
/// the sum of the bases and some summand must contribute the constants.
UnitaryCoverage unitary_covers(const UnitaryDesc& a, const UnitaryDesc& b, const BigInt& cutoff);

/// Brute-force unitary closure: substitutions x -> u with arbitrary
/// constant term. Exposed for the verification suite.
TruncatedClosure unitary_closure(const FieldSpec& spec, const std::vector<SparsePoly>& generators,
                                 uint32_t D, TruncMode mode = TruncMode::exact);

}  // namespace tspace
