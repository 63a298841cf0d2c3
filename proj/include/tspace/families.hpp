#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspace/linspan.hpp"

namespace tspace {

/// Descriptor of a named T-space of k[x]_0. Atomic descriptors carry the
/// spanning schemas and explicit T-space generators of one family; sum
/// descriptors keep their parents intact so certificates can name the space
/// each instance came from.
struct TSpaceDesc {
  std::string name;        // "V:0", "W:1", "W0", "PiZ", "P", "custom:...", or "a+b"
  FieldSpec field;
  Ambient ambient = Ambient::nonunitary;
  std::vector<GeneratorSchema> schemas;
  std::vector<std::pair<std::string, SparsePoly>> generators;
  std::string provenance;  // one line describing what the family is
  /// Period to try for a separating functional when the echelon search
  /// comes back unknown; 0 = no canonical period.
  uint32_t functional_period = 0;
  std::vector<TSpaceDesc> parts;  // nonempty exactly for sums

  bool is_sum() const { return !parts.empty(); }
};

/// Builds a named family over the given field.
///   V:n   {x^i + x^(i q^(2^n))}                     any q, n >= 0
///   W:n   {x^i+x^(qi)}, {x^((q^n+1)i)}, pair family  characteristic 2, n >= 1
///   W0    {x^(i-1) (x^q - x)}                        any q
///   PiZ   {x^j : j >= 2}                             any q
///   P     generators x+x^2 and x^7, no schemas       q = 2
/// Errors: BadCharacteristic, BadParams.
TSpaceDesc build_family(const std::string& name, const FieldSpec& spec);

/// Sum of two T-spaces: schema/generator union with parent identity kept.
TSpaceDesc sum_families(const TSpaceDesc& a, const TSpaceDesc& b);

/// Custom space from explicit generators (text forms) and optional schemas.
TSpaceDesc custom_space(const std::string& name, const FieldSpec& spec,
                        const std::vector<std::string>& generator_texts,
                        Ambient ambient = Ambient::nonunitary);

/// Flattened view for the membership machinery; sums contribute all parent
/// schemas and generators under the parent names.
SpanContext span_context(const TSpaceDesc& d);

/// Generator polynomials to feed the truncated-closure oracle. For W0 the
/// T-ideal structure is materialized as the multiples x^(i-1)(x^q - x)
/// fitting the bound; for PiZ the schema instances themselves.
std::vector<SparsePoly> closure_generators(const TSpaceDesc& d, uint32_t D);

/// decide_membership plus the functional fallback: when the echelon search
/// is Unknown and the descriptor names a canonical period, a separating
/// functional turns the verdict into NonMember.
MembershipVerdict decide_in_space(const TSpaceDesc& d, const SparsePoly& g, const BigInt& cutoff,
                                  const MdeOptions& opt = {});

/// Membership of x: Member means the space is all of k[x]_0.
MembershipVerdict covers_all(const TSpaceDesc& d, const BigInt& cutoff);

/// Exact decision procedures for the two special spaces:
///   W0: true iff x^q - x divides f (checked by exponent folding),
///   PiZ: true iff the coefficient of x^1 vanishes.
bool special_membership(const TSpaceDesc& d, const SparsePoly& f);

// --- power escalation mod W0 ---

/// One step of the escalation from x^t to x modulo W0.
struct EscalationStep {
  enum class Kind {
    fold,   // x^from == x^to mod W0 by exponent folding
    strip,  // substitute x -> x^(p^(m-s)); x^(from p^(m-s)) = x^(to q) == x^to
    climb,  // extract the class of from+1 from (x+x^2)^from; to = from+1
  };
  Kind kind;
  BigInt from, to;
  BigInt sub_exp;        // strip: the substitution exponent p^(m-s)
  FieldElement scalar;   // climb: 1/from, the normalizing factor
};

struct EscalationChain {
  BigInt start;
  std::vector<EscalationStep> steps;  // ends at exponent 1
};

/// Emits the escalation procedure: strip p-parts by Frobenius
/// substitutions, climb t -> t+1 through the coefficient (t choose 1) = t,
/// fold exponents >= q. t = 1 gives the empty chain.
EscalationChain power_escalation(const BigInt& t, const FieldSpec& spec);

/// Replays a chain by exact arithmetic; every step's claimed congruence is
/// checked against the W0 divisibility oracle, climbs additionally against
/// the exact Vandermonde extraction. Returns the index of the first bad
/// step, or nullopt if the chain verifies.
std::optional<size_t> verify_escalation(const EscalationChain& chain, const FieldSpec& spec);

}  // namespace tspace
