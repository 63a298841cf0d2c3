#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tspace/bigint.hpp"
#include "tspace/error.hpp"

namespace tspace {

/// Element of GF(p^m), stored as the coefficient vector of its polynomial
/// representative mod the field modulus: residue[i] is the coefficient of
/// g^i, each entry in [0, p). Elements carry no reference to their field;
/// operations take the FieldSpec explicitly and check compatibility by
/// residue length.
struct FieldElement {
  std::vector<uint16_t> residue;

  bool operator==(const FieldElement&) const = default;
  bool is_zero() const {
    for (auto c : residue)
      if (c != 0) return false;
    return true;
  }
};

/// Description of a finite field GF(p^m) with an explicit monic irreducible
/// modulus of degree m over GF(p). modulus()[i] is the coefficient of x^i.
class FieldSpec {
 public:
  /// Builds GF(p^m). If no modulus is given, picks the least monic
  /// irreducible of degree m (coefficient vectors compared as base-p
  /// numbers, most significant digit first), so the choice is
  /// deterministic and certificates are reproducible.
  static FieldSpec make(uint32_t p, uint32_t m, std::vector<uint16_t> modulus = {});

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint32_t q() const { return q_; }
  const std::vector<uint16_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return FieldElement{std::vector<uint16_t>(m_, 0)}; }
  FieldElement one() const;
  /// Embeds an integer into the prime subfield (value mod p).
  FieldElement from_int(int64_t v) const;
  /// The k-th element in enumeration order: digits of k base p,
  /// residue[i] = (k / p^i) mod p. Element 0 has index 0.
  FieldElement element(uint32_t index) const;
  uint32_t index_of(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  /// Multiplicative inverse; throws Errc::zero_inverse on 0.
  FieldElement inv(const FieldElement& a) const;
  /// a^e by square-and-multiply. Arbitrary-precision exponents are reduced
  /// mod q-1 for a != 0 (a^q = a); 0^0 = 1 and 0^e = 0 for e > 0.
  FieldElement pow(const FieldElement& a, const BigInt& e) const;

  /// All q elements, deterministic order: 0 first, then counting order of
  /// the residue digits.
  std::vector<FieldElement> enumerate() const;

  std::string to_string(const FieldElement& a) const;

  bool operator==(const FieldSpec& o) const {
    return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
  }

  /// Throws Errc::field_mismatch unless the element has the right shape.
  void check(const FieldElement& a) const;

  /// Empty placeholder; real specs come from make().
  FieldSpec() = default;

 private:
  uint32_t p_ = 0, m_ = 0, q_ = 0;
  std::vector<uint16_t> modulus_;  // length m+1, monic
};

bool is_prime_u32(uint32_t n);

/// Irreducibility over GF(p) by trial division against all monic divisors
/// of degree <= deg/2. poly[i] is the coefficient of x^i, poly must be monic.
bool is_irreducible_mod_p(const std::vector<uint16_t>& poly, uint32_t p);

}  // namespace tspace
