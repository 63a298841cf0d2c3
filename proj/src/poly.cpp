#include "tspace/poly.hpp"

#include <cctype>
#include <sstream>

namespace tspace {

SparsePoly SparsePoly::monomial(const FieldSpec& spec, const FieldElement& c, const BigInt& e,
                                Ambient a) {
  SparsePoly f(a);
  f.add_term(spec, e, c);
  return f;
}

FieldElement SparsePoly::coeff(const FieldSpec& spec, const BigInt& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? spec.zero() : it->second;
}

void SparsePoly::add_term(const FieldSpec& spec, const BigInt& e, const FieldElement& c) {
  spec.check(c);
  if (c.is_zero()) return;
  if (e < 0) fail(Errc::bad_params, "negative exponent");
  if (ambient_ == Ambient::nonunitary && e == 0)
    fail(Errc::ambient_violation, "constant term in nonunitary polynomial");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second = spec.add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

void require_same_ambient(const SparsePoly& f, const SparsePoly& g) {
  if (f.ambient() != g.ambient())
    fail(Errc::ambient_mismatch, "operands live in different ambients");
}

}  // namespace

SparsePoly add(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g) {
  require_same_ambient(f, g);
  SparsePoly r = f;
  for (const auto& [e, c] : g.terms()) r.add_term(spec, e, c);
  return r;
}

SparsePoly sub(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g) {
  require_same_ambient(f, g);
  SparsePoly r = f;
  for (const auto& [e, c] : g.terms()) r.add_term(spec, e, spec.neg(c));
  return r;
}

SparsePoly scale(const FieldSpec& spec, const FieldElement& c, const SparsePoly& f) {
  SparsePoly r(f.ambient());
  if (c.is_zero()) return r;
  for (const auto& [e, fc] : f.terms()) r.add_term(spec, e, spec.mul(c, fc));
  return r;
}

SparsePoly mul(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g) {
  require_same_ambient(f, g);
  SparsePoly r(f.ambient());
  for (const auto& [ef, cf] : f.terms())
    for (const auto& [eg, cg] : g.terms()) r.add_term(spec, ef + eg, spec.mul(cf, cg));
  return r;
}

namespace {

SparsePoly mul_capped(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& g,
                      size_t cap) {
  SparsePoly r(f.ambient());
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      r.add_term(spec, ef + eg, spec.mul(cf, cg));
      if (r.term_count() > cap)
        fail(Errc::expansion_overflow, "composition exceeded the term cap");
    }
  }
  return r;
}

// u^e by repeated squaring, all intermediates capped.
SparsePoly pow_capped(const FieldSpec& spec, const SparsePoly& u, BigInt e, size_t cap) {
  SparsePoly r = SparsePoly::monomial(spec, spec.one(), 0, Ambient::unitary);
  if (e == 0) return r;
  // monomial fast path: (c x^i)^e = c^e x^(i e)
  if (u.term_count() == 1) {
    const auto& [ue, uc] = *u.terms().begin();
    return SparsePoly::monomial(spec, spec.pow(uc, e), ue * e, Ambient::unitary);
  }
  SparsePoly base(Ambient::unitary);
  for (const auto& [ue, uc] : u.terms()) base.add_term(spec, ue, uc);
  bool started = false;
  // scan bits high to low
  std::vector<int> bits;
  for (BigInt t = e; t > 0; t >>= 1) bits.push_back((int)(t & 1));
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    if (started) r = mul_capped(spec, r, r, cap);
    if (*it) {
      if (started)
        r = mul_capped(spec, r, base, cap);
      else
        r = base;
      started = true;
    }
  }
  return r;
}

}  // namespace

SparsePoly compose(const FieldSpec& spec, const SparsePoly& f, const SparsePoly& u,
                   size_t term_cap) {
  if (f.ambient() == Ambient::nonunitary && !u.is_zero() && u.terms().begin()->first == 0)
    fail(Errc::ambient_violation, "substitution with constant term into k[x]_0");
  SparsePoly r(f.ambient());
  for (const auto& [e, c] : f.terms()) {
    if (e == 0) {
      r.add_term(spec, 0, c);
      continue;
    }
    SparsePoly p = pow_capped(spec, u, e, term_cap);
    for (const auto& [pe, pc] : p.terms()) {
      r.add_term(spec, pe, spec.mul(c, pc));
      if (r.term_count() > term_cap)
        fail(Errc::expansion_overflow, "composition exceeded the term cap");
    }
  }
  return r;
}

std::vector<SparsePoly> q_components(const FieldSpec& spec, const SparsePoly& f) {
  uint32_t classes = spec.q() > 2 ? spec.q() - 1 : 1;
  std::vector<SparsePoly> out(classes, SparsePoly(f.ambient()));
  for (const auto& [e, c] : f.terms()) {
    uint32_t r = (uint32_t)(e % (spec.q() - 1));
    if (r == 0) r = spec.q() - 1;  // class of q-1; also catches constants
    out[r - 1].add_term(spec, e, c);
  }
  return out;
}

std::vector<SparsePoly> vandermonde_extract(const FieldSpec& spec, const SparsePoly& f) {
  const uint32_t q = spec.q();
  if (q < 3) fail(Errc::bad_params, "vandermonde extraction needs q >= 3");
  const uint32_t n = q - 1;
  auto elems = spec.enumerate();  // elems[0] = 0, the rest is k^*

  // samples g_t = f(a_t x), a_t = elems[t+1]
  std::vector<SparsePoly> g(n, SparsePoly(f.ambient()));
  for (uint32_t t = 0; t < n; ++t) {
    const FieldElement& a = elems[t + 1];
    for (const auto& [e, c] : f.terms()) g[t].add_term(spec, e, spec.mul(c, spec.pow(a, e)));
  }

  // M[t][r-1] = a_t^r; solve M h = g by Gaussian elimination, applying the
  // same row operations to the polynomial right-hand side.
  std::vector<std::vector<FieldElement>> M(n, std::vector<FieldElement>(n, spec.zero()));
  for (uint32_t t = 0; t < n; ++t)
    for (uint32_t r = 1; r <= n; ++r) M[t][r - 1] = spec.pow(elems[t + 1], BigInt(r));

  for (uint32_t col = 0; col < n; ++col) {
    uint32_t piv = col;
    while (piv < n && M[piv][col].is_zero()) ++piv;
    // distinct nonzero evaluation points: the system is always solvable
    std::swap(M[piv], M[col]);
    std::swap(g[piv], g[col]);
    FieldElement d = spec.inv(M[col][col]);
    for (uint32_t j = 0; j < n; ++j) M[col][j] = spec.mul(d, M[col][j]);
    g[col] = scale(spec, d, g[col]);
    for (uint32_t row = 0; row < n; ++row) {
      if (row == col || M[row][col].is_zero()) continue;
      FieldElement c = M[row][col];
      for (uint32_t j = 0; j < n; ++j) M[row][j] = spec.sub(M[row][j], spec.mul(c, M[col][j]));
      g[row] = sub(spec, g[row], scale(spec, c, g[col]));
    }
  }
  return g;  // g[r-1] is now the class-r component
}

FieldElement evaluate(const FieldSpec& spec, const SparsePoly& f, const FieldElement& a) {
  FieldElement r = spec.zero();
  for (const auto& [e, c] : f.terms()) r = spec.add(r, spec.mul(c, spec.pow(a, e)));
  return r;
}

BigInt fold_exponent(const FieldSpec& spec, const BigInt& e) {
  if (e == 0) return e;
  return ((e - 1) % (spec.q() - 1)) + 1;
}

SparsePoly fold_poly(const FieldSpec& spec, const SparsePoly& f) {
  SparsePoly r(f.ambient());
  for (const auto& [e, c] : f.terms()) r.add_term(spec, fold_exponent(spec, e), c);
  return r;
}

std::string to_string(const FieldSpec& spec, const SparsePoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    bool unit_coeff = (spec.m() == 1 && c.residue[0] == 1);
    if (e == 0) {
      os << spec.to_string(c);
      continue;
    }
    if (!unit_coeff) os << spec.to_string(c);
    os << 'x';
    if (e != 1) os << '^' << e.str();
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char get() {
    skip_ws();
    return s[i++];
  }
};

BigInt parse_uint(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) ++c.i;
  if (c.i == start) fail(Errc::parse_error, "expected a number at position " + std::to_string(start));
  return BigInt(c.s.substr(start, c.i - start));
}

FieldElement parse_coeff(const FieldSpec& spec, Cursor& c) {
  if (c.peek() == '[') {
    c.get();
    FieldElement e = spec.zero();
    for (uint32_t k = 0;; ++k) {
      BigInt v = parse_uint(c);
      if (k >= spec.m() || v >= spec.p()) fail(Errc::parse_error, "bad coefficient vector");
      e.residue[k] = (uint16_t)v;
      char ch = c.get();
      if (ch == ']') {
        if (k + 1 != spec.m()) fail(Errc::parse_error, "coefficient vector of wrong length");
        break;
      }
      if (ch != ',') fail(Errc::parse_error, "expected ',' or ']' in coefficient vector");
    }
    return e;
  }
  BigInt v = parse_uint(c);
  return spec.from_int((int64_t)(v % spec.p()));
}

}  // namespace

SparsePoly parse_poly(const FieldSpec& spec, const std::string& text, Ambient a) {
  Cursor c{text};
  SparsePoly f(a);
  if (c.eof()) fail(Errc::parse_error, "empty polynomial");
  bool neg = false;
  if (c.peek() == '-') {
    c.get();
    neg = true;
  }
  while (true) {
    FieldElement coef = spec.one();
    bool have_coef = false;
    if (c.peek() == '[' || std::isdigit((unsigned char)c.peek())) {
      coef = parse_coeff(spec, c);
      have_coef = true;
    }
    BigInt e = 0;
    if (c.peek() == 'x') {
      c.get();
      e = 1;
      if (c.peek() == '^') {
        c.get();
        e = parse_uint(c);
      }
    } else if (!have_coef) {
      fail(Errc::parse_error, "expected a term at position " + std::to_string(c.i));
    }
    if (neg) coef = spec.neg(coef);
    f.add_term(spec, e, coef);
    if (c.eof()) break;
    char op = c.get();
    if (op == '+')
      neg = false;
    else if (op == '-')
      neg = true;
    else
      fail(Errc::parse_error, std::string("unexpected character '") + op + "'");
    if (c.eof()) fail(Errc::parse_error, "dangling operator");
  }
  return f;
}

}  // namespace tspace
