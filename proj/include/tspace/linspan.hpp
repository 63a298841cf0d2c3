#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tspace/poly.hpp"

namespace tspace {

using ParamAssignment = std::map<std::string, BigInt>;

/// Affine exponent form a0 + sum_k a_k * param_k with a0, a_k >= 0.
struct AffineExp {
  BigInt constant;
  std::vector<std::pair<std::string, BigInt>> coeffs;

  BigInt eval(const ParamAssignment& params) const;
  std::string to_string() const;
};

struct SchemaTerm {
  FieldElement coef;
  AffineExp exp;
};

/// Parametric family of polynomials spanning (part of) a T-space, e.g.
/// x^i + x^(q*i) for i >= 1. Parameters are integers >= 1; strict_gt lists
/// extra constraints of the form first > second.
struct GeneratorSchema {
  std::string id;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, std::string>> strict_gt;
  std::vector<SchemaTerm> terms;

  bool satisfied(const ParamAssignment& a) const;
  /// Least possible value of a single term's exponent form over admissible
  /// parameters (all params = 1 bounds it below since coefficients are
  /// nonnegative); used only for sanity checks.
  SparsePoly instantiate(const FieldSpec& spec, const ParamAssignment& a) const;
};

/// Instantiates after checking constraints; exponent collisions merge and
/// may cancel. Throws Errc::constraint_violation.
SparsePoly instantiate_schema(const FieldSpec& spec, const GeneratorSchema& s,
                              const ParamAssignment& a);

// --- certificates ---

/// One summand of a membership certificate: a scalar times either a schema
/// instance or an explicit substitution instance of a named generator.
struct CertStep {
  struct SchemaRef {
    std::string space;
    std::string schema;
    ParamAssignment params;
  };
  struct GenRef {
    std::string space;
    std::string gen;
    SparsePoly subst;  // generator composed with this polynomial
  };
  std::variant<SchemaRef, GenRef> source;
  FieldElement scalar;
};

using Combo = std::vector<CertStep>;

struct MemberCert {
  Combo steps;
};

/// Non-membership witness: a linear functional lambda(x^e) = weights[e mod M]
/// that vanishes on every instance of every schema of the space but not on
/// the target.
struct PeriodicFunctional {
  uint32_t period = 0;
  std::vector<FieldElement> weights;

  FieldElement apply(const FieldSpec& spec, const SparsePoly& f) const;
};

struct PivotGap {
  BigInt exponent;
};

struct MembershipVerdict {
  enum class Kind { member, nonmember, unknown };
  Kind kind = Kind::unknown;
  std::optional<MemberCert> cert;                 // member
  std::optional<PivotGap> gap;                    // nonmember via echelon gap
  std::optional<PeriodicFunctional> functional;   // nonmember via functional
  BigInt bound;                                   // cutoff for unknown

  bool is_member() const { return kind == Kind::member; }
};

/// The schemas a membership search runs against, tagged with the name of
/// the space each schema came from (sums keep parent identity).
struct SpanContext {
  FieldSpec spec;
  std::vector<std::pair<std::string, GeneratorSchema>> schemas;
  // explicit generators, for replaying GenRef certificate steps
  std::vector<std::pair<std::string, std::pair<std::string, SparsePoly>>> generators;

  const GeneratorSchema* find_schema(const std::string& space, const std::string& id) const;
  const SparsePoly* find_generator(const std::string& space, const std::string& id) const;
};

/// Evaluates a certificate combo by exact arithmetic.
SparsePoly replay_combo(const SpanContext& ctx, const Combo& combo);
/// True iff the combo reproduces the target exactly.
bool validate_member_cert(const SpanContext& ctx, const MemberCert& cert, const SparsePoly& target);

// --- min-degree echelon ---

struct EchelonRow {
  SparsePoly poly;  // normalized: leading (minimal-exponent) coefficient 1
  Combo combo;      // provenance: poly equals the combo exactly
};

/// Row space with strictly increasing minimal-exponent pivots, kept fully
/// back-reduced so each pivot exponent appears in exactly one row.
class EchelonBasis {
 public:
  EchelonBasis(const FieldSpec& spec, BigInt cutoff) : spec_(spec), cutoff_(std::move(cutoff)) {}

  const BigInt& cutoff() const { return cutoff_; }
  size_t size() const { return rows_.size(); }
  const std::map<BigInt, EchelonRow>& rows() const { return rows_; }
  bool has_pivot(const BigInt& e) const { return rows_.count(e) != 0; }

  /// Reduces f against the rows (leading-term elimination only). Returns
  /// the residual and appends the used combination to used.
  SparsePoly reduce(const SparsePoly& f, Combo* used) const;

  /// Full insert: reduce, then if the residual is nonzero with pivot within
  /// the cutoff, normalize, insert and back-reduce the other rows. Returns
  /// the residual (zero if f was dependent, or the overflow residual if its
  /// pivot exceeded the cutoff).
  SparsePoly insert(const SparsePoly& f, const Combo& provenance);

 private:
  FieldSpec spec_;
  BigInt cutoff_;
  std::map<BigInt, EchelonRow> rows_;
};

// --- membership decision ---

struct MdeOptions {
  /// Upper bound on schema instances materialized per enumeration range;
  /// beyond it the search falls back to exact-level instantiation and gap
  /// verdicts are no longer claimed.
  size_t level_limit = 4000;
};

/// Certified semi-decision of g in span(schemas), pivoting on minimal
/// exponents. Member certificates replay exactly; PivotGap witnesses are
/// sound because every span element with minimal exponent e is a
/// combination of instances with minimal exponent <= e, all of which have
/// been inserted when the gap is declared. CutoffTooSmall is not an error:
/// it is the Unknown verdict.
MembershipVerdict decide_membership(const SpanContext& ctx, const SparsePoly& g,
                                    const BigInt& cutoff = BigInt(64),
                                    const MdeOptions& opt = {});

/// Checks a PivotGap witness independently: no schema instance at all has
/// minimal exponent equal to the gap (below the cutoff).
bool validate_pivot_gap(const SpanContext& ctx, const PivotGap& gap, const BigInt& cutoff);

// --- periodic functionals ---

/// Solves for weights c_0..c_{M-1} such that the functional vanishes on
/// every schema instance (parameters lifted to residues mod M, inequality
/// constraints dropped: every residue tuple is realized by admissible
/// parameters). Returns a functional with lambda(target) != 0, or nullopt.
std::optional<PeriodicFunctional> solve_periodic_functional(
    const SpanContext& ctx, uint32_t period, const SparsePoly& target);

/// Spot-checks a functional: vanishes on `trials` random schema instances
/// (parameters up to max_param) and is nonzero on the target.
bool validate_functional(const SpanContext& ctx, const PeriodicFunctional& fn,
                         const SparsePoly& target, size_t trials = 1000,
                         uint64_t max_param = 10000, uint64_t seed = 0x5eed);

// --- truncated closure oracle ---

enum class TruncMode {
  /// Work in the quotient by the (substitution-closed) ideal of terms of
  /// degree > D: every image f(u) is kept, terms above D dropped.
  quotient,
  /// The exact span of the images of substitutions of degree <= D,
  /// intersected with the polynomials of degree <= D. Images are expanded
  /// exactly with headroom up to degree 2D so that combinations whose high
  /// terms cancel are found; for the families in this suite that headroom
  /// recovers the full intersection.
  exact,
};

/// Brute-force truncated closure: enumerates every nonunitary u of degree
/// <= D over GF(q) in lexicographic coefficient order, composes each
/// generator with u and accumulates the row space. Feasibility guard:
/// q in {2,3} and D <= 13 (Errc::oracle_too_large otherwise).
class TruncatedClosure {
 public:
  TruncatedClosure(const FieldSpec& spec, const std::vector<SparsePoly>& generators, uint32_t D,
                   TruncMode mode = TruncMode::quotient, bool unitary_substitutions = false);

  /// Dimension of the reported row space (degree <= D).
  uint32_t dimension() const;
  uint32_t degree_bound() const { return D_; }
  /// Canonical basis of the reported row space: reduced row echelon form
  /// pivoting on maximal exponents, rows by increasing pivot, entries
  /// indexed by exponent 0..D.
  std::vector<std::vector<uint8_t>> basis() const;
  std::vector<SparsePoly> basis_polys(const FieldSpec& spec) const;

  /// True iff the polynomial (truncated to degree D) lies in the reported
  /// row space.
  bool contains(const FieldSpec& spec, const SparsePoly& f) const;
  /// Residual of the dense reduction against the reported rows.
  std::vector<uint8_t> reduce_dense(std::vector<uint8_t> row) const;

  /// Feeds one more row into the internal echelon (exponents 0..work
  /// degree); used when comparing against externally generated spans.
  void insert_external(const SparsePoly& f, const FieldSpec& spec);

 private:
  void insert_dense(std::vector<uint8_t> row);
  uint32_t D_ = 0, work_ = 0, p_ = 0;
  bool unitary_ = false;
  std::vector<std::vector<uint8_t>> rows_;  // max-pivot RREF over 0..work_
};

/// Convenience wrapper matching the one-shot oracle shape.
struct ClosureResult {
  uint32_t dimension;
  std::vector<SparsePoly> basis;
};
ClosureResult truncated_closure(const FieldSpec& spec, const std::vector<SparsePoly>& generators,
                                uint32_t D, TruncMode mode = TruncMode::quotient);

}  // namespace tspace
