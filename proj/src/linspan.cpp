#include "tspace/linspan.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tspace {

BigInt AffineExp::eval(const ParamAssignment& params) const {
  BigInt v = constant;
  for (const auto& [name, coef] : coeffs) {
    auto it = params.find(name);
    if (it == params.end()) fail(Errc::constraint_violation, "missing parameter " + name);
    v += coef * it->second;
  }
  return v;
}

std::string AffineExp::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (constant != 0 || coeffs.empty()) {
    os << constant.str();
    first = false;
  }
  for (const auto& [name, coef] : coeffs) {
    if (coef == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (coef != 1) os << coef.str() << "*";
    os << name;
  }
  return os.str();
}

bool GeneratorSchema::satisfied(const ParamAssignment& a) const {
  for (const auto& p : params) {
    auto it = a.find(p);
    if (it == a.end() || it->second < 1) return false;
  }
  for (const auto& [big, small] : strict_gt) {
    if (a.at(big) <= a.at(small)) return false;
  }
  return true;
}

SparsePoly GeneratorSchema::instantiate(const FieldSpec& spec, const ParamAssignment& a) const {
  SparsePoly f(Ambient::nonunitary);
  for (const auto& t : terms) f.add_term(spec, t.exp.eval(a), t.coef);
  return f;
}

SparsePoly instantiate_schema(const FieldSpec& spec, const GeneratorSchema& s,
                              const ParamAssignment& a) {
  if (!s.satisfied(a))
    fail(Errc::constraint_violation, "parameters violate the constraints of schema " + s.id);
  return s.instantiate(spec, a);
}

// --- contexts and certificates ---

const GeneratorSchema* SpanContext::find_schema(const std::string& space,
                                                const std::string& id) const {
  for (const auto& [sp, sc] : schemas)
    if (sp == space && sc.id == id) return &sc;
  return nullptr;
}

const SparsePoly* SpanContext::find_generator(const std::string& space,
                                              const std::string& id) const {
  for (const auto& [sp, g] : generators)
    if (sp == space && g.first == id) return &g.second;
  return nullptr;
}

namespace {

std::string source_key(const FieldSpec& spec, const CertStep& s) {
  std::ostringstream os;
  if (const auto* sr = std::get_if<CertStep::SchemaRef>(&s.source)) {
    os << "s|" << sr->space << '|' << sr->schema << '|';
    for (const auto& [k, v] : sr->params) os << k << '=' << v.str() << ',';
  } else {
    const auto& gr = std::get<CertStep::GenRef>(s.source);
    os << "g|" << gr.space << '|' << gr.gen << '|';
    for (const auto& [e, c] : gr.subst.terms()) os << e.str() << ':' << spec.index_of(c) << ',';
  }
  return os.str();
}

Combo coalesce(const FieldSpec& spec, const Combo& combo) {
  std::map<std::string, CertStep> acc;
  for (const auto& s : combo) {
    auto key = source_key(spec, s);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, s);
    else
      it->second.scalar = spec.add(it->second.scalar, s.scalar);
  }
  Combo out;
  for (auto& [k, s] : acc)
    if (!s.scalar.is_zero()) out.push_back(std::move(s));
  return out;
}

void append_scaled(const FieldSpec& spec, Combo& dst, const FieldElement& c, const Combo& src) {
  for (const auto& s : src) {
    CertStep t = s;
    t.scalar = spec.mul(c, s.scalar);
    if (!t.scalar.is_zero()) dst.push_back(std::move(t));
  }
}

}  // namespace

SparsePoly replay_combo(const SpanContext& ctx, const Combo& combo) {
  SparsePoly acc(Ambient::nonunitary);
  for (const auto& s : combo) {
    SparsePoly inst(Ambient::nonunitary);
    if (const auto* sr = std::get_if<CertStep::SchemaRef>(&s.source)) {
      const auto* sc = ctx.find_schema(sr->space, sr->schema);
      if (!sc) fail(Errc::unknown_label, "certificate names unknown schema " + sr->schema);
      inst = instantiate_schema(ctx.spec, *sc, sr->params);
    } else {
      const auto& gr = std::get<CertStep::GenRef>(s.source);
      const auto* g = ctx.find_generator(gr.space, gr.gen);
      if (!g) fail(Errc::unknown_label, "certificate names unknown generator " + gr.gen);
      inst = compose(ctx.spec, *g, gr.subst);
    }
    acc = add(ctx.spec, acc, scale(ctx.spec, s.scalar, inst));
  }
  return acc;
}

bool validate_member_cert(const SpanContext& ctx, const MemberCert& cert,
                          const SparsePoly& target) {
  return replay_combo(ctx, cert.steps) == target;
}

FieldElement PeriodicFunctional::apply(const FieldSpec& spec, const SparsePoly& f) const {
  FieldElement v = spec.zero();
  for (const auto& [e, c] : f.terms())
    v = spec.add(v, spec.mul(c, weights[(uint32_t)(e % period)]));
  return v;
}

// --- echelon ---

SparsePoly EchelonBasis::reduce(const SparsePoly& f, Combo* used) const {
  SparsePoly r = f;
  while (!r.is_zero()) {
    auto it = rows_.find(r.min_exp());
    if (it == rows_.end()) break;
    FieldElement c = r.terms().begin()->second;
    r = sub(spec_, r, scale(spec_, c, it->second.poly));
    if (used) append_scaled(spec_, *used, c, it->second.combo);
  }
  return r;
}

SparsePoly EchelonBasis::insert(const SparsePoly& f, const Combo& provenance) {
  Combo used;
  SparsePoly r = reduce(f, &used);
  if (r.is_zero()) return r;
  if (r.min_exp() > cutoff_) return r;  // overflow residual, caller keeps it

  Combo combo = provenance;
  append_scaled(spec_, combo, spec_.neg(spec_.one()), used);
  FieldElement d = spec_.inv(r.terms().begin()->second);
  EchelonRow row{scale(spec_, d, r), coalesce(spec_, [&] {
                   Combo c2;
                   append_scaled(spec_, c2, d, combo);
                   return c2;
                 }())};
  const BigInt pivot = row.poly.min_exp();
  rows_.emplace(pivot, std::move(row));

  // back-reduce: keep every pivot exponent out of all other rows
  const auto& just = rows_.at(pivot);
  for (auto& [pv, other] : rows_) {
    if (pv == pivot) continue;
    FieldElement c = other.poly.coeff(spec_, pivot);
    if (c.is_zero()) continue;
    other.poly = sub(spec_, other.poly, scale(spec_, c, just.poly));
    append_scaled(spec_, other.combo, spec_.neg(c), just.combo);
    other.combo = coalesce(spec_, other.combo);
  }
  return r;
}

// --- instance enumeration ---

namespace {

// Least over the schema's terms of the evaluated exponent form, before
// merging. The merged instance's minimal exponent is never below this.
BigInt form_min(const GeneratorSchema& s, const ParamAssignment& a) {
  BigInt best = -1;
  for (const auto& t : s.terms) {
    BigInt v = t.exp.eval(a);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

struct Instance {
  ParamAssignment params;
  SparsePoly poly;
};

// All instances whose merged minimal exponent lies in (lo, hi]. nullopt if
// the family cannot be bounded or the count would exceed the limit.
std::optional<std::vector<Instance>> instances_in_range(const FieldSpec& spec,
                                                        const GeneratorSchema& s, const BigInt& lo,
                                                        const BigInt& hi, size_t limit) {
  std::vector<Instance> out;
  auto consider = [&](const ParamAssignment& a) -> bool {
    if (!s.satisfied(a)) return true;
    SparsePoly f = s.instantiate(spec, a);
    if (f.is_zero()) return true;
    if (f.min_exp() > lo && f.min_exp() <= hi) {
      out.push_back({a, std::move(f)});
      if (out.size() > limit) return false;
    }
    return true;
  };

  if (s.params.empty()) {
    if (!consider({})) return std::nullopt;
    return out;
  }

  if (s.params.size() == 1) {
    const std::string& name = s.params[0];
    auto mu = [&](const BigInt& i) { return form_min(s, {{name, i}}); };
    if (mu(hi + 1) <= hi) return std::nullopt;  // unbounded family below hi
    // mu is nondecreasing; find the window (lo, hi] by binary search
    BigInt a = 1, b = hi + 1;  // first index with mu > lo lies in [a, b]
    if (mu(1) <= lo) {
      while (a + 1 < b) {
        BigInt mid = (a + b) / 2;
        (mu(mid) <= lo ? a : b) = mid;
      }
      a = b;
    }
    BigInt c = a, d = hi + 1;  // first index with mu > hi
    while (c < d) {
      BigInt mid = (c + d) / 2;
      if (mu(mid) <= hi)
        c = mid + 1;
      else
        d = mid;
    }
    if (c - a > (int64_t)limit) return std::nullopt;
    for (BigInt i = a; i < c; ++i)
      if (!consider({{name, i}})) return std::nullopt;
    return out;
  }

  // several parameters: box enumeration, requires every parameter to carry
  // a positive coefficient in every term so that min-form <= hi bounds each
  // parameter by hi
  for (const auto& p : s.params)
    for (const auto& t : s.terms) {
      BigInt c = 0;
      for (const auto& [n, v] : t.exp.coeffs)
        if (n == p) c += v;
      if (c < 1) return std::nullopt;
    }
  if (hi > (int64_t)limit) return std::nullopt;
  BigInt box = 1;
  for (size_t k = 0; k < s.params.size(); ++k) {
    box *= hi;
    if (box > (int64_t)limit) return std::nullopt;
  }
  uint64_t h = to_u64(hi);
  std::vector<uint64_t> v(s.params.size(), 1);
  while (true) {
    ParamAssignment a;
    for (size_t k = 0; k < v.size(); ++k) a[s.params[k]] = v[k];
    if (!consider(a)) return std::nullopt;
    size_t k = v.size();
    while (k > 0) {
      if (++v[k - 1] <= h) break;
      v[k - 1] = 1;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

}  // namespace

MembershipVerdict decide_membership(const SpanContext& ctx, const SparsePoly& g,
                                    const BigInt& cutoff, const MdeOptions& opt) {
  if (g.ambient() != Ambient::nonunitary)
    fail(Errc::ambient_mismatch, "membership decisions run in k[x]_0");

  MembershipVerdict v;
  EchelonBasis basis(ctx.spec, cutoff);
  SparsePoly residual = g;
  Combo trail;
  BigInt seen = 0;
  bool gap_ok = true;

  while (true) {
    residual = basis.reduce(residual, &trail);
    if (residual.is_zero()) {
      v.kind = MembershipVerdict::Kind::member;
      v.cert = MemberCert{coalesce(ctx.spec, trail)};
      return v;
    }
    const BigInt e = residual.min_exp();
    if (e > cutoff) {
      v.kind = MembershipVerdict::Kind::unknown;
      v.bound = cutoff;
      return v;
    }
    if (!basis.has_pivot(e)) {
      if (seen < e) {
        bool all_full = true;
        struct Tagged {
          std::string space, schema;
          Instance inst;
        };
        std::vector<Tagged> batch;
        for (const auto& [space, schema] : ctx.schemas) {
          auto r = instances_in_range(ctx.spec, schema, seen, e, opt.level_limit);
          if (!r) {
            all_full = false;
            r = instances_in_range(ctx.spec, schema, e - 1, e, opt.level_limit);
            if (!r) continue;  // this family stays out of reach at this level
          }
          for (auto& inst : *r) batch.push_back({space, schema.id, std::move(inst)});
        }
        std::stable_sort(batch.begin(), batch.end(), [](const Tagged& a, const Tagged& b) {
          return a.inst.poly.min_exp() < b.inst.poly.min_exp();
        });
        for (auto& t : batch) {
          Combo prov{
              CertStep{CertStep::SchemaRef{t.space, t.schema, t.inst.params}, ctx.spec.one()}};
          basis.insert(t.inst.poly, prov);
        }
        if (all_full)
          seen = e;
        else
          gap_ok = false;
      }
      if (!basis.has_pivot(e)) {
        if (gap_ok && seen >= e) {
          v.kind = MembershipVerdict::Kind::nonmember;
          v.gap = PivotGap{e};
          return v;
        }
        v.kind = MembershipVerdict::Kind::unknown;
        v.bound = cutoff;
        return v;
      }
    }
  }
}

bool validate_pivot_gap(const SpanContext& ctx, const PivotGap& gap, const BigInt& cutoff) {
  if (gap.exponent > cutoff) return false;
  for (const auto& [space, schema] : ctx.schemas) {
    auto r = instances_in_range(ctx.spec, schema, gap.exponent - 1, gap.exponent, 1000000);
    if (!r) return false;  // cannot verify
    if (!r->empty()) return false;
  }
  return true;
}

// --- periodic functionals ---

namespace {

// Nullspace basis of the homogeneous system rows * c = 0 over GF(q).
std::vector<std::vector<FieldElement>> nullspace(const FieldSpec& spec,
                                                 std::vector<std::vector<FieldElement>> rows,
                                                 uint32_t n) {
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (uint32_t col = 0; col < n && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    FieldElement d = spec.inv(rows[rank][col]);
    for (uint32_t j = 0; j < n; ++j) rows[rank][j] = spec.mul(d, rows[rank][j]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      FieldElement c = rows[r][col];
      for (uint32_t j = 0; j < n; ++j)
        rows[r][j] = spec.sub(rows[r][j], spec.mul(c, rows[rank][j]));
    }
    pivot_col.push_back((int)col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (uint32_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(n, spec.zero());
    v[free] = spec.one();
    for (size_t r = 0; r < rank; ++r)
      v[pivot_col[r]] = spec.neg(rows[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::optional<PeriodicFunctional> solve_periodic_functional(const SpanContext& ctx,
                                                            uint32_t period,
                                                            const SparsePoly& target) {
  if (period < 2) fail(Errc::bad_params, "functional period must be >= 2");
  const FieldSpec& spec = ctx.spec;
  std::vector<std::vector<FieldElement>> rows;

  for (const auto& [space, schema] : ctx.schemas) {
    const size_t k = schema.params.size();
    std::vector<uint32_t> res(k, 0);
    while (true) {
      ParamAssignment a;
      for (size_t i = 0; i < k; ++i) a[schema.params[i]] = res[i];
      std::vector<FieldElement> row(period, spec.zero());
      bool nonzero = false;
      for (const auto& t : schema.terms) {
        uint32_t idx = (uint32_t)(t.exp.eval(a) % period);
        row[idx] = spec.add(row[idx], t.coef);
      }
      for (const auto& c : row) nonzero |= !c.is_zero();
      if (nonzero) rows.push_back(std::move(row));
      size_t i = k;
      while (i > 0) {
        if (++res[i - 1] < period) break;
        res[i - 1] = 0;
        --i;
      }
      if (i == 0 || k == 0) break;
    }
  }

  auto basis = nullspace(spec, std::move(rows), period);
  for (const auto& v : basis) {
    PeriodicFunctional fn{period, v};
    if (!fn.apply(spec, target).is_zero()) return fn;
  }
  return std::nullopt;
}

bool validate_functional(const SpanContext& ctx, const PeriodicFunctional& fn,
                         const SparsePoly& target, size_t trials, uint64_t max_param,
                         uint64_t seed) {
  const FieldSpec& spec = ctx.spec;
  if (fn.apply(spec, target).is_zero()) return false;
  if (ctx.schemas.empty()) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> pick(1, max_param);
  for (size_t t = 0; t < trials; ++t) {
    const auto& [space, schema] = ctx.schemas[t % ctx.schemas.size()];
    ParamAssignment a;
    for (const auto& p : schema.params) a[p] = pick(rng);
    // enforce strict inequalities deterministically
    for (const auto& [big, small] : schema.strict_gt) {
      if (a[big] < a[small]) std::swap(a[big], a[small]);
      if (a[big] == a[small]) a[big] += 1;
    }
    SparsePoly inst = instantiate_schema(spec, schema, a);
    if (!fn.apply(spec, inst).is_zero()) return false;
  }
  return true;
}

// --- truncated closure ---

namespace {

using Dense = std::vector<uint8_t>;  // index = exponent, entries mod p

Dense dense_mul(const Dense& a, const Dense& b, uint32_t p, size_t keep) {
  Dense r(std::min(keep, a.size() + b.size() - 1), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size() && i + j < r.size(); ++j)
      r[i + j] = (uint8_t)((r[i + j] + a[i] * b[j]) % p);
  }
  return r;
}

bool dense_is_zero(const Dense& v) {
  for (auto c : v)
    if (c) return false;
  return true;
}

size_t dense_deg(const Dense& v) {
  for (size_t i = v.size(); i-- > 0;)
    if (v[i]) return i;
  return 0;
}

Dense dense_pow(const Dense& u, uint64_t e, uint32_t p, size_t keep) {
  Dense r{1};
  Dense base = u;
  while (e) {
    if (e & 1) r = dense_mul(r, base, p, keep);
    e >>= 1;
    if (e) base = dense_mul(base, base, p, keep);
  }
  return r;
}

}  // namespace

namespace {

// pivot = maximal exponent with a nonzero entry; row.size() if zero
size_t max_pivot(const std::vector<uint8_t>& r) {
  for (size_t i = r.size(); i-- > 0;)
    if (r[i]) return i;
  return r.size();
}

}  // namespace

TruncatedClosure::TruncatedClosure(const FieldSpec& spec, const std::vector<SparsePoly>& generators,
                                   uint32_t D, TruncMode mode, bool unitary_substitutions)
    : D_(D),
      work_(mode == TruncMode::quotient ? D : 2 * D),
      p_(spec.p()),
      unitary_(unitary_substitutions) {
  if (spec.m() != 1 || (spec.p() != 2 && spec.p() != 3))
    fail(Errc::oracle_too_large, "closure oracle supports q in {2,3} only");
  if (D > 13 || D < 1) fail(Errc::oracle_too_large, "closure oracle supports 1 <= D <= 13");

  const uint32_t q = spec.q();
  const uint32_t lo = unitary_ ? 0 : 1;
  const uint32_t digits = D + 1 - lo;
  const size_t keep = work_ + 1;
  const uint32_t full_dim = D + (unitary_ ? 1 : 0);

  std::vector<uint8_t> u(digits, 0);
  while (true) {
    Dense up(D + 1, 0);
    for (uint32_t i = 0; i < digits; ++i) up[lo + i] = u[i];
    const bool u_zero = dense_is_zero(up);
    const size_t du = u_zero ? 0 : dense_deg(up);

    for (const auto& g : generators) {
      if (g.is_zero()) continue;
      // In exact mode an image is expanded exactly or not at all. Its
      // degree is maxexp(g) * deg(u) whenever u is not constant (leading
      // terms of distinct powers cannot collide), so overlong images are
      // dropped up front.
      if (mode == TruncMode::exact && !u_zero && du > 0 && g.max_exp() * du > (int64_t)work_)
        continue;

      Dense img(keep, 0);
      for (const auto& [e, c] : g.terms()) {
        uint8_t cv = (uint8_t)(c.residue[0] % p_);
        if (e == 0) {
          img[0] = (uint8_t)((img[0] + cv) % p_);
          continue;
        }
        if (u_zero) continue;  // u^e = 0 for e >= 1
        if (du == 0) {
          // constant substitution (unitary mode): u^e is a field power
          uint32_t base = up[0];
          uint32_t r = 1;
          BigInt er = e % (p_ - 1) == 0 ? BigInt(p_ - 1) : e % (p_ - 1);
          for (BigInt k = 0; k < er; ++k) r = r * base % p_;
          img[0] = (uint8_t)((img[0] + cv * r) % p_);
          continue;
        }
        if (e > (int64_t)(1 << 20)) {
          // enormous exponents only vanish for substitutions without
          // constant term
          if (mode == TruncMode::quotient && !unitary_) continue;
          fail(Errc::oracle_too_large, "generator exponent out of range for this oracle mode");
        }
        uint64_t eu = to_u64(e);
        if (eu > work_ && !unitary_) continue;  // min degree of u^e exceeds the window
        if (eu > work_)
          fail(Errc::oracle_too_large, "generator exponent out of range for this oracle mode");
        Dense pw = dense_pow(up, eu, p_, keep);
        for (size_t i = 0; i < pw.size(); ++i) img[i] = (uint8_t)((img[i] + cv * pw[i]) % p_);
      }
      if (!unitary_) img[0] = 0;
      if (!dense_is_zero(img)) insert_dense(std::move(img));
    }
    if (dimension() == full_dim) break;  // the reported space cannot grow further
    uint32_t i = digits;
    while (i > 0) {
      if (++u[i - 1] < q) break;
      u[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
}

void TruncatedClosure::insert_dense(std::vector<uint8_t> row) {
  row.resize(work_ + 1);
  // full reduction against the current max-pivot echelon
  for (const auto& r : rows_) {
    size_t piv = max_pivot(r);
    uint8_t c = row[piv];
    if (!c) continue;
    for (size_t i = 0; i <= piv; ++i) row[i] = (uint8_t)((row[i] + (p_ - c) * r[i]) % p_);
  }
  size_t piv = max_pivot(row);
  if (piv == row.size()) return;
  if (row[piv] != 1) {
    uint8_t inv = (uint8_t)(p_ - 1);  // only 2 mod 3 needs an inverse
    for (auto& c : row) c = (uint8_t)(c * inv % p_);
  }
  for (auto& r : rows_) {
    uint8_t c = r[piv];
    if (!c) continue;
    for (size_t i = 0; i <= piv; ++i) r[i] = (uint8_t)((r[i] + (p_ - c) * row[i]) % p_);
  }
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), row,
                              [](const Dense& a, const Dense& b) {
                                return max_pivot(a) < max_pivot(b);
                              });
  rows_.insert(pos, std::move(row));
}

void TruncatedClosure::insert_external(const SparsePoly& f, const FieldSpec& spec) {
  Dense row(work_ + 1, 0);
  for (const auto& [e, c] : f.terms()) {
    if (e > (int64_t)work_) fail(Errc::oracle_too_large, "row exceeds the working window");
    row[(uint32_t)e] = (uint8_t)((row[(uint32_t)e] + c.residue[0]) % p_);
  }
  if (!dense_is_zero(row)) insert_dense(std::move(row));
}

uint32_t TruncatedClosure::dimension() const {
  uint32_t n = 0;
  for (const auto& r : rows_) n += max_pivot(r) <= D_ ? 1 : 0;
  return n;
}

std::vector<std::vector<uint8_t>> TruncatedClosure::basis() const {
  std::vector<std::vector<uint8_t>> out;
  for (const auto& r : rows_) {
    if (max_pivot(r) > D_) continue;
    std::vector<uint8_t> row(r.begin(), r.begin() + D_ + 1);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<uint8_t> TruncatedClosure::reduce_dense(std::vector<uint8_t> row) const {
  row.resize(D_ + 1);
  for (const auto& r : rows_) {
    size_t piv = max_pivot(r);
    if (piv > D_) continue;  // reported rows only
    uint8_t c = row[piv];
    if (!c) continue;
    for (size_t i = 0; i <= piv; ++i) row[i] = (uint8_t)((row[i] + (p_ - c) * r[i]) % p_);
  }
  return row;
}

bool TruncatedClosure::contains(const FieldSpec& spec, const SparsePoly& f) const {
  std::vector<uint8_t> row(D_ + 1, 0);
  for (const auto& [e, c] : f.terms()) {
    if (e > D_) continue;  // truncated away
    uint32_t i = (uint32_t)e;
    row[i] = (uint8_t)((row[i] + c.residue[0]) % p_);
  }
  return dense_is_zero(reduce_dense(std::move(row)));
}

std::vector<SparsePoly> TruncatedClosure::basis_polys(const FieldSpec& spec) const {
  std::vector<SparsePoly> out;
  for (const auto& r : basis()) {
    SparsePoly f(unitary_ ? Ambient::unitary : Ambient::nonunitary);
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i]) f.add_term(spec, BigInt(i), spec.from_int(r[i]));
    out.push_back(std::move(f));
  }
  return out;
}

ClosureResult truncated_closure(const FieldSpec& spec, const std::vector<SparsePoly>& generators,
                                uint32_t D, TruncMode mode) {
  TruncatedClosure cl(spec, generators, D, mode);
  return ClosureResult{cl.dimension(), cl.basis_polys(spec)};
}

}  // namespace tspace
