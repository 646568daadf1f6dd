#include "cluster/qtorus.hpp"

#include <algorithm>
#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/smith.hpp"

namespace qcl {

QCoeff qc_zero() { return {}; }

QCoeff qc_int(const Int& n) {
  QCoeff c;
  if (n != 0) c.emplace(0, n);
  return c;
}

QCoeff qc_s_power(const Int& power) {
  QCoeff c;
  c.emplace(power, 1);
  return c;
}

QCoeff qc_term(const Int& power, const Int& coeff) {
  QCoeff c;
  if (coeff != 0) c.emplace(power, coeff);
  return c;
}

bool qc_is_zero(const QCoeff& c) { return c.empty(); }

bool qc_is_one(const QCoeff& c) {
  return c.size() == 1 && c.begin()->first == 0 && c.begin()->second == 1;
}

bool qc_is_monomial(const QCoeff& c) {
  return c.size() == 1 && abs(c.begin()->second) == 1;
}

QCoeff qc_add(const QCoeff& a, const QCoeff& b) {
  QCoeff r = a;
  for (const auto& [p, c] : b) {
    Int& slot = r[p];
    slot += c;
    if (slot == 0) r.erase(p);
  }
  return r;
}

QCoeff qc_sub(const QCoeff& a, const QCoeff& b) { return qc_add(a, qc_neg(b)); }

QCoeff qc_neg(const QCoeff& a) {
  QCoeff r;
  for (const auto& [p, c] : a) r.emplace(p, -c);
  return r;
}

QCoeff qc_mul(const QCoeff& a, const QCoeff& b) {
  QCoeff r;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      Int& slot = r[pa + pb];
      slot += ca * cb;
      if (slot == 0) r.erase(pa + pb);
    }
  return r;
}

QCoeff qc_divide(const QCoeff& a, const QCoeff& b) {
  if (qc_is_zero(b)) throw DivideByZero("qc_divide: zero divisor");
  if (qc_is_zero(a)) return qc_zero();
  if (b.size() == 1) {
    // Single term s^p * c: shift powers and divide coefficients.
    const Int& p = b.begin()->first;
    const Int& c = b.begin()->second;
    QCoeff r;
    for (const auto& [pa, ca] : a) {
      if (ca % c != 0)
        throw NotDivisible("qc_divide: coefficient not divisible");
      r.emplace(pa - p, ca / c);
    }
    return r;
  }
  // Long division after shifting both operands into Z[s].
  QCoeff rem = a;
  QCoeff quot;
  const auto& [bp, bc] = *b.rbegin();  // leading term of b
  std::size_t guard = a.size() * 4 + 64;
  while (!qc_is_zero(rem)) {
    if (guard-- == 0) throw NotDivisible("qc_divide: no exact quotient");
    const Int rp = rem.rbegin()->first;
    const Int rc = rem.rbegin()->second;
    if (rc % bc != 0) throw NotDivisible("qc_divide: leading coefficient");
    QCoeff t = qc_term(rp - bp, rc / bc);
    quot = qc_add(quot, t);
    rem = qc_sub(rem, qc_mul(t, b));
    if (!qc_is_zero(rem) && rem.rbegin()->first >= rp)
      throw NotDivisible("qc_divide: degree did not decrease");
  }
  return quot;
}

Int qc_at_one(const QCoeff& c) {
  Int acc = 0;
  for (const auto& [p, v] : c) acc += v;
  return acc;
}

std::string qc_str(const QCoeff& c) {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest power first.
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const Int& p = it->first;
    const Int& v = it->second;
    if (!first && v > 0) out << "+";
    if (p == 0) {
      out << v.str();
    } else {
      if (v == -1)
        out << "-";
      else if (v != 1)
        out << v.str() << "*";
      out << "s";
      if (p != 1) out << "^" << p.str();
    }
    first = false;
  }
  return out.str();
}

bool TorusContext::commutative() const {
  for (const auto& row : gram)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

TorusPtr make_torus(BasisPtr basis, Mat gram) {
  const std::size_t n = basis->rank();
  if (mat_rows(gram) != n || (n > 0 && mat_cols(gram) != n))
    throw BadInput("make_torus: gram matrix shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gram[i][j] != -gram[j][i])
        throw BadInput("make_torus: gram matrix is not skew-symmetric");
  return std::make_shared<const TorusContext>(
      TorusContext{std::move(basis), std::move(gram)});
}

TorusPtr commutative_torus(BasisPtr basis) {
  const std::size_t n = basis->rank();
  return make_torus(std::move(basis), mat_zero(n, n));
}

TorusPtr commutative_twin(const TorusPtr& ctx) {
  return commutative_torus(ctx->basis);
}

Int skew_eval(const TorusContext& ctx, const Exp& v, const Exp& w) {
  Int acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0 || ctx.gram[i][j] == 0) continue;
      acc += v[i] * w[j] * ctx.gram[i][j];
    }
  }
  return acc;
}

bool TermLess::operator()(const Exp& a, const Exp& b) const {
  Int da = 0, db = 0;
  for (const Int& x : a) da += x;
  for (const Int& x : b) db += x;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

QLaurent ql_zero(TorusPtr ctx) { return {std::move(ctx), {}}; }

QLaurent ql_one(TorusPtr ctx) {
  QLaurent f{std::move(ctx), {}};
  f.terms.emplace(Exp(f.ctx->basis->rank(), 0), qc_int(1));
  return f;
}

QLaurent ql_monomial(TorusPtr ctx, Exp e, QCoeff c) {
  QLaurent f{std::move(ctx), {}};
  if (e.size() != f.ctx->basis->rank())
    throw BadInput("ql_monomial: exponent size mismatch");
  if (!qc_is_zero(c)) f.terms.emplace(std::move(e), std::move(c));
  return f;
}

QLaurent ql_from_lattice(TorusPtr ctx, const LatticeElement& v) {
  if (!same_basis(v.basis, ctx->basis))
    throw BadInput("ql_from_lattice: element not in the torus lattice");
  std::vector<Int> coords = lat_coordinates(v);
  return ql_monomial(std::move(ctx), std::move(coords), qc_int(1));
}

bool ql_is_zero(const QLaurent& f) { return f.terms.empty(); }

bool ql_equal(const QLaurent& f, const QLaurent& g) {
  if (!same_basis(f.ctx->basis, g.ctx->basis)) return false;
  if (f.ctx->gram != g.ctx->gram) return false;
  return std::equal(f.terms.begin(), f.terms.end(), g.terms.begin(),
                    g.terms.end());
}

std::size_t ql_term_count(const QLaurent& f) { return f.terms.size(); }

QLaurent ql_add(const QLaurent& f, const QLaurent& g) {
  QLaurent r = f;
  for (const auto& [e, c] : g.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms.emplace(e, c);
    } else {
      it->second = qc_add(it->second, c);
      if (qc_is_zero(it->second)) r.terms.erase(it);
    }
  }
  return r;
}

QLaurent ql_sub(const QLaurent& f, const QLaurent& g) {
  return ql_add(f, ql_neg(g));
}

QLaurent ql_neg(const QLaurent& f) {
  QLaurent r{f.ctx, {}};
  for (const auto& [e, c] : f.terms) r.terms.emplace(e, qc_neg(c));
  return r;
}

QLaurent ql_scale(const QCoeff& c, const QLaurent& f) {
  QLaurent r{f.ctx, {}};
  if (qc_is_zero(c)) return r;
  for (const auto& [e, fc] : f.terms) {
    QCoeff p = qc_mul(c, fc);
    if (!qc_is_zero(p)) r.terms.emplace(e, std::move(p));
  }
  return r;
}

QLaurent ql_mul(const QLaurent& f, const QLaurent& g) {
  QLaurent r{f.ctx, {}};
  const std::size_t n = f.ctx->basis->rank();
  for (const auto& [ef, cf] : f.terms)
    for (const auto& [eg, cg] : g.terms) {
      Exp e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = ef[i] + eg[i];
      QCoeff c = qc_mul(qc_mul(cf, cg), qc_s_power(skew_eval(*f.ctx, ef, eg)));
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        if (!qc_is_zero(c)) r.terms.emplace(std::move(e), std::move(c));
      } else {
        it->second = qc_add(it->second, c);
        if (qc_is_zero(it->second)) r.terms.erase(it);
      }
    }
  return r;
}

QLaurent ql_pow(const QLaurent& f, const Int& n) {
  if (n < 0) throw BadInput("ql_pow: negative exponent");
  QLaurent acc = ql_one(f.ctx);
  QLaurent base = f;
  Int e = n;
  while (e > 0) {
    if (e % 2 != 0) acc = ql_mul(acc, base);
    e /= 2;
    if (e > 0) base = ql_mul(base, base);
  }
  return acc;
}

QCoeff sym_scalar(const TorusContext& ctx, const Exp& v) {
  return sym_scalar(ctx.gram, v);
}

QCoeff sym_scalar(const Mat& gram, const Exp& v) {
  Int acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[j] != 0 && gram[i][j] != 0) acc += v[i] * v[j] * gram[i][j];
  }
  return qc_s_power(-acc);
}

QLaurent exact_right_divide(const QLaurent& f, const QLaurent& g) {
  if (ql_is_zero(g)) throw DivideByZero("exact_right_divide: zero divisor");
  if (!same_basis(f.ctx->basis, g.ctx->basis) || f.ctx->gram != g.ctx->gram)
    throw BadInput("exact_right_divide: mismatched torus contexts");
  QLaurent h = ql_zero(f.ctx);
  if (ql_is_zero(f)) return h;

  TermLess less;
  const auto& [gw, gc] = *g.terms.rbegin();  // leading term of g
  const std::size_t n = f.ctx->basis->rank();

  // In an exact division f = h*g the minimal exponents multiply, so every
  // quotient term t satisfies t >= min(f) - min(g) in the term order.
  Exp f_min = f.terms.begin()->first;
  Exp g_min = g.terms.begin()->first;
  Exp t_floor(n);
  for (std::size_t i = 0; i < n; ++i) t_floor[i] = f_min[i] - g_min[i];

  QLaurent rem = f;
  // The order is not well-founded on Laurent exponents, so a hard cap backs
  // up the floor check.
  std::size_t guard = 200000;
  while (!ql_is_zero(rem)) {
    if (guard-- == 0)
      throw NotDivisible("exact_right_divide: iteration cap exceeded");
    const Exp u = rem.terms.rbegin()->first;
    const QCoeff cu = rem.terms.rbegin()->second;
    Exp t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = u[i] - gw[i];
    if (less(t, t_floor) && t != t_floor)
      throw NotDivisible("exact_right_divide: no exact quotient");
    // (c x^t)(gc x^gw) = c * s^{<t,gw>} * gc * x^u  =>  c = cu * s^{-<t,gw>} / gc
    QCoeff c;
    try {
      c = qc_divide(qc_mul(cu, qc_s_power(-skew_eval(*f.ctx, t, gw))), gc);
    } catch (const NotDivisible&) {
      throw NotDivisible("exact_right_divide: coefficient obstruction");
    }
    QLaurent term = ql_monomial(f.ctx, t, c);
    h = ql_add(h, term);
    rem = ql_sub(rem, ql_mul(term, g));
    if (!ql_is_zero(rem) && !less(rem.terms.rbegin()->first, u))
      throw Internal("exact_right_divide: leading term did not decrease");
  }
  return h;
}

QLaurent specialize_commutative(const QLaurent& f) {
  return specialize_commutative(f, commutative_twin(f.ctx));
}

QLaurent specialize_commutative(const QLaurent& f, const TorusPtr& twin) {
  if (!same_basis(twin->basis, f.ctx->basis))
    throw BadInput("specialize_commutative: basis mismatch");
  if (!twin->commutative())
    throw BadInput("specialize_commutative: target context is not commutative");
  QLaurent r = ql_zero(twin);
  for (const auto& [e, c] : f.terms) {
    Int v = qc_at_one(c);
    if (v != 0) r.terms.emplace(e, qc_int(v));
  }
  return r;
}

bool ql_is_polynomial(const QLaurent& f) {
  for (const auto& [e, c] : f.terms)
    for (const Int& x : e)
      if (x < 0) return false;
  return true;
}

std::string ql_str(const QLaurent& f) {
  if (ql_is_zero(f)) return "0";
  std::ostringstream out;
  bool first = true;
  // Leading term first.
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    const QCoeff& c = it->second;
    bool zero_exp = true;
    for (const Int& x : it->first)
      if (x != 0) zero_exp = false;
    if (zero_exp) {
      out << (c.size() > 1 ? "(" + qc_str(c) + ")" : qc_str(c));
      continue;
    }
    if (!qc_is_one(c)) {
      if (c.size() > 1)
        out << "(" << qc_str(c) << ")*";
      else
        out << qc_str(c) << "*";
    }
    out << "x^("
        << render(lat_from_coordinates(f.ctx->basis, it->first)) << ")";
  }
  return out.str();
}

}  // namespace qcl
