#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tspace/gf.hpp"

namespace tspace {

/// Which algebra a polynomial lives in: k[x]_0 = x k[x] (no constant term)
/// or the unitary k[x].
enum class Ambient : uint8_t { nonunitary, unitary };

/// Sparse univariate polynomial over GF(q) with arbitrary-precision
/// exponents. Invariants: no stored zero coefficients; in the nonunitary
/// ambient exponent 0 never appears.
class SparsePoly {
 public:
  using TermMap = std::map<BigInt, FieldElement>;

  explicit SparsePoly(Ambient a = Ambient::nonunitary) : ambient_(a) {}

  static SparsePoly zero(Ambient a = Ambient::nonunitary) { return SparsePoly(a); }
  static SparsePoly monomial(const FieldSpec& spec, const FieldElement& c, const BigInt& e,
                             Ambient a = Ambient::nonunitary);

  Ambient ambient() const { return ambient_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Minimal exponent; polynomial must be nonzero.
  const BigInt& min_exp() const { return terms_.begin()->first; }
  const BigInt& max_exp() const { return terms_.rbegin()->first; }

  FieldElement coeff(const FieldSpec& spec, const BigInt& e) const;

  /// Adds c*x^e in place, removing the term on cancellation.
  void add_term(const FieldSpec& spec, const BigInt& e, const FieldElement& c);

  bool operator==(const SparsePoly&) const = default;

 private:
  TermMap terms_;
  Ambient ambient_;
};

// --- ring operations (exact; canceled terms are removed) ---

SparsePoly add(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g);
SparsePoly sub(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g);
SparsePoly scale(const FieldSpec& spec, const FieldElement& c, const SparsePoly& f);
SparsePoly mul(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g);

/// Substitution f(u). In the nonunitary ambient u must have no constant
/// term (throws Errc::ambient_violation otherwise). Intermediate and final
/// term counts are capped (Errc::expansion_overflow).
SparsePoly compose(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& u,
                   size_t term_cap = 1000000);

/// Splits f by exponent residue mod q-1. Slot r-1 holds the terms with
/// exponent == r (mod q-1), residue 0 folded into the class of q-1; a
/// constant term (unitary ambient) also lands in the class of q-1.
/// For q = 2 there is a single class equal to f.
std::vector<SparsePoly> q_components(const FieldSpec& spec, const SparsePoly& f);

/// Same decomposition recovered the long way: evaluate f(a*x) for every
/// a in k^* and solve the (q-1)x(q-1) Vandermonde system. Requires q >= 3.
/// Must agree with q_components on every input.
std::vector<SparsePoly> vandermonde_extract(const FieldSpec& spec, const SparsePoly& f);

FieldElement evaluate(const FieldSpec& spec, const SparsePoly& f, const FieldElement& a);

// --- text form ---
// Canonical text: terms by ascending exponent, e.g. "x + x^2"; coefficients
// printed as residue vectors for m > 1, e.g. "[1,2]x^3".

std::string to_string(const FieldSpec& spec, const SparsePoly& f);
SparsePoly parse_poly(const FieldSpec& spec, const std::string& text,
                      Ambient a = Ambient::nonunitary);

/// Exponent folding mod (x^q - x): e >= 1 maps to ((e-1) mod (q-1)) + 1,
/// exponent 0 is fixed. x^e - x^(fold e) is always divisible by x^q - x.
BigInt fold_exponent(const FieldSpec& spec, const BigInt& e);

/// Remainder of f mod (x^q - x), computed by exponent folding.
SparsePoly fold_poly(const FieldSpec& spec, const SparsePoly& f);

}  // namespace tspace
