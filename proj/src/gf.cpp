#include "tspace/gf.hpp"

#include <algorithm>
#include <sstream>

namespace tspace {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Dense polynomial helpers over GF(p); vectors indexed by exponent, no
// trailing zeros guaranteed by trim().

void trim(std::vector<uint16_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<uint16_t> poly_rem(std::vector<uint16_t> a, const std::vector<uint16_t>& b, uint32_t p) {
  // b monic of degree >= 1
  const size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    uint32_t lead = a.back();
    size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (size_t i = 0; i <= db; ++i) {
        uint32_t sub = (uint32_t)b[i] * lead % p;
        a[shift + i] = (uint16_t)((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    trim(a);
    if (a.size() < b.size()) break;
  }
  return a;
}

bool is_zero_poly(const std::vector<uint16_t>& v) {
  for (auto c : v)
    if (c) return false;
  return true;
}

// Walks all monic polynomials of the given degree in base-p counting order
// of the low coefficients.
struct MonicIter {
  uint32_t p, deg;
  std::vector<uint16_t> cur;  // size deg+1, cur[deg] == 1
  bool done = false;
  explicit MonicIter(uint32_t p_, uint32_t deg_) : p(p_), deg(deg_) {
    cur.assign(deg + 1, 0);
    cur[deg] = 1;
  }
  void next() {
    for (uint32_t i = 0; i < deg; ++i) {
      if (++cur[i] < p) return;
      cur[i] = 0;
    }
    done = true;
  }
};

}  // namespace

bool is_irreducible_mod_p(const std::vector<uint16_t>& poly, uint32_t p) {
  auto f = poly;
  trim(f);
  if (f.size() < 2) return false;
  uint32_t deg = (uint32_t)f.size() - 1;
  if (deg == 1) return true;
  for (uint32_t d = 1; 2 * d <= deg; ++d) {
    for (MonicIter it(p, d); !it.done; it.next()) {
      if (is_zero_poly(poly_rem(f, it.cur, p))) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::make(uint32_t p, uint32_t m, std::vector<uint16_t> modulus) {
  if (!is_prime_u32(p)) fail(Errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) fail(Errc::bad_params, "extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > (1u << 16)) fail(Errc::bad_params, "field order above 2^16 not supported");
  }
  FieldSpec s;
  s.p_ = p;
  s.m_ = m;
  s.q_ = (uint32_t)q;
  if (modulus.empty()) {
    // Least monic irreducible of degree m: MonicIter counts low digits
    // little-endian, which matches base-p numeric order of the coefficient
    // vector read most significant digit first.
    for (MonicIter it(p, m); !it.done; it.next()) {
      if (is_irreducible_mod_p(it.cur, p)) {
        s.modulus_ = it.cur;
        break;
      }
    }
  } else {
    if (modulus.size() != m + 1 || modulus[m] != 1)
      fail(Errc::bad_params, "modulus must be monic of degree m");
    for (auto c : modulus)
      if (c >= p) fail(Errc::bad_params, "modulus coefficient out of range");
    if (!is_irreducible_mod_p(modulus, p))
      fail(Errc::reducible_modulus, "modulus is reducible over GF(p)");
    s.modulus_ = std::move(modulus);
  }
  return s;
}

void FieldSpec::check(const FieldElement& a) const {
  if (a.residue.size() != m_)
    fail(Errc::field_mismatch, "element has residue length " + std::to_string(a.residue.size()) +
                                   ", field expects " + std::to_string(m_));
}

FieldElement FieldSpec::one() const {
  auto e = zero();
  e.residue[0] = 1;
  return e;
}

FieldElement FieldSpec::from_int(int64_t v) const {
  int64_t r = v % (int64_t)p_;
  if (r < 0) r += p_;
  auto e = zero();
  e.residue[0] = (uint16_t)r;
  return e;
}

FieldElement FieldSpec::element(uint32_t index) const {
  auto e = zero();
  for (uint32_t i = 0; i < m_ && index; ++i) {
    e.residue[i] = (uint16_t)(index % p_);
    index /= p_;
  }
  return e;
}

uint32_t FieldSpec::index_of(const FieldElement& a) const {
  check(a);
  uint32_t idx = 0;
  for (uint32_t i = m_; i-- > 0;) idx = idx * p_ + a.residue[i];
  return idx;
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement r = a;
  for (uint32_t i = 0; i < m_; ++i) r.residue[i] = (uint16_t)((r.residue[i] + b.residue[i]) % p_);
  return r;
}

FieldElement FieldSpec::neg(const FieldElement& a) const {
  check(a);
  FieldElement r = a;
  for (uint32_t i = 0; i < m_; ++i) r.residue[i] = (uint16_t)((p_ - r.residue[i]) % p_);
  return r;
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
  return add(a, neg(b));
}

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  std::vector<uint32_t> prod(2 * m_ - 1, 0);
  for (uint32_t i = 0; i < m_; ++i) {
    if (!a.residue[i]) continue;
    for (uint32_t j = 0; j < m_; ++j)
      prod[i + j] = (prod[i + j] + (uint32_t)a.residue[i] * b.residue[j]) % p_;
  }
  // reduce mod modulus: x^m == -(modulus_0 + ... + modulus_{m-1} x^{m-1})
  for (uint32_t d = 2 * m_ - 2; d >= m_ && d < prod.size(); --d) {
    uint32_t c = prod[d];
    if (c) {
      prod[d] = 0;
      for (uint32_t i = 0; i < m_; ++i) {
        uint32_t sub = (uint32_t)modulus_[i] * c % p_;
        prod[d - m_ + i] = (prod[d - m_ + i] + p_ - sub) % p_;
      }
    }
    if (d == m_) break;
  }
  FieldElement r = zero();
  for (uint32_t i = 0; i < m_; ++i) r.residue[i] = (uint16_t)prod[i];
  return r;
}

FieldElement FieldSpec::pow(const FieldElement& a, const BigInt& e) const {
  check(a);
  if (e < 0) fail(Errc::bad_params, "negative exponent");
  if (a.is_zero()) return e == 0 ? one() : zero();
  // a != 0: a^(q-1) = 1, so reduce the exponent.
  uint32_t er = (uint32_t)(e % (q_ - 1));
  FieldElement base = a, r = one();
  while (er) {
    if (er & 1) r = mul(r, base);
    base = mul(base, base);
    er >>= 1;
  }
  return r;
}

FieldElement FieldSpec::inv(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) fail(Errc::zero_inverse, "inverse of zero");
  if (q_ == 2) return a;
  return pow(a, BigInt(q_ - 2));
}

std::vector<FieldElement> FieldSpec::enumerate() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (uint32_t i = 0; i < q_; ++i) out.push_back(element(i));
  return out;
}

std::string FieldSpec::to_string(const FieldElement& a) const {
  if (m_ == 1) return std::to_string(a.residue.empty() ? 0 : a.residue[0]);
  std::ostringstream os;
  os << '[';
  for (uint32_t i = 0; i < m_; ++i) {
    if (i) os << ',';
    os << a.residue[i];
  }
  os << ']';
  return os.str();
}

}  // namespace tspace
