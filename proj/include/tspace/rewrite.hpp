#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspace/families.hpp"

namespace tspace {

/// Exponent-wise rewrite rule over GF(2). A monomial x^e with e matching
/// the guard is replaced by x^(image e), or dropped. Every image is
/// strictly smaller than e, so the multiset of exponents decreases and
/// reduction terminates.
struct RewriteRule {
  enum class Guard { even, multiple_of, equals, odd_at_least };
  enum class Image { halve, drop, subtract, set_to, fermat_descent };

  std::string name;
  Guard guard;
  uint64_t guard_arg = 0;
  Image image;
  uint64_t image_arg = 0;

  bool matches(const BigInt& e) const;
  /// nullopt = the term is dropped.
  std::optional<BigInt> apply(const BigInt& e) const;
  /// Schema instances summing to x^e + x^(image e) (or x^e for drops):
  /// the rewrite step is sound because this element lies in the target.
  Combo soundness_combo(const FieldSpec& spec, const std::string& space, const BigInt& e) const;
};

/// Rewrite system modulo W_1 or W_2 over GF(2). Canonical exponent sets:
/// {1} for W_1 (every input reduces to 0 or x) and {1, 3, 7} for W_2.
struct RewriteSystem {
  std::string target;  // "W:1" or "W:2"
  FieldSpec spec;
  TSpaceDesc space;
  std::vector<RewriteRule> rules;
  std::vector<BigInt> canonical_exponents;
};

enum class RewriteTarget { W1, W2 };

/// Builds the rule list. W1: even -> e/2; e = 0 mod 3 -> drop; 5 -> 4;
/// odd e >= 7 -> e-3. W2: even -> e/2; e = 0 mod 5 -> drop; 9 -> 3;
/// 11 -> 7; 13 -> 7; odd e >= 17 -> 4i+j where e = i+4j, 0 < i < 4 <= j.
/// Requires q = 2 (Errc::bad_characteristic).
RewriteSystem build_rules(RewriteTarget which, const FieldSpec& spec);

struct Reduction {
  SparsePoly canonical;
  /// f - canonical as a sum of schema instances (the congruence
  /// certificate); empty when no rule fired.
  Combo membership;
  /// (exponent, image) trail in application order; nullopt image = dropped.
  std::vector<std::pair<BigInt, std::optional<BigInt>>> trace;
};

/// Applies the rules exponent-wise to a fixpoint. The result lies in the
/// span of the canonical exponents, and f - canonical replays as a member
/// of the target space.
Reduction reduce_canonical(const RewriteSystem& sys, const SparsePoly& f);

/// Variant for randomized confluence experiments: rule precedence given by
/// `order` (a permutation of rule indices), terms processed smallest first
/// when `ascending`.
Reduction reduce_with_order(const RewriteSystem& sys, const SparsePoly& f,
                            const std::vector<size_t>& order, bool ascending);

/// For every exponent e <= bound matched by some rule, proves the rule
/// element x^e + x^(image e) (or x^e) a member of the target via the
/// echelon search and returns the certificates. Throws Errc::unsound_rule
/// if any element fails to certify.
std::vector<std::pair<BigInt, MemberCert>> certify_rules(const RewriteSystem& sys, uint64_t bound);

}  // namespace tspace
