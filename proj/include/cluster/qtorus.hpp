#pragma once

// Twisted (quantum) Laurent algebras attached to a lattice with a skew form.
//
// A TorusContext fixes an exponent lattice Z[B] and the Gram matrix of a
// skew-symmetric form <.,.> on it.  The algebra has one generator x^{e} per
// basis label and multiplication
//     x^v * x^w = s^{<v,w>} x^{v+w},
// with s a central formal parameter.  Coefficients live in Z[s, s^{-1}].
// Setting every Gram entry to zero recovers the commutative Laurent ring.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cluster/ints.hpp"
#include "cluster/lattice.hpp"

namespace qcl {

// Z[s, s^{-1}]: power of s -> coefficient, zero coefficients never stored.
using QCoeff = std::map<Int, Int>;

QCoeff qc_zero();
QCoeff qc_int(const Int& n);
QCoeff qc_s_power(const Int& power);          // s^power
QCoeff qc_term(const Int& power, const Int& coeff);
bool qc_is_zero(const QCoeff& c);
bool qc_is_one(const QCoeff& c);
// True when c = +/- s^m for some m (a unit of Z[s,s^{-1}] up to sign).
bool qc_is_monomial(const QCoeff& c);
QCoeff qc_add(const QCoeff& a, const QCoeff& b);
QCoeff qc_sub(const QCoeff& a, const QCoeff& b);
QCoeff qc_neg(const QCoeff& a);
QCoeff qc_mul(const QCoeff& a, const QCoeff& b);
// Exact division in Z[s,s^{-1}]; throws NotDivisible when no quotient exists.
QCoeff qc_divide(const QCoeff& a, const QCoeff& b);
// Sum of coefficients: the image of c under s -> 1.
Int qc_at_one(const QCoeff& c);
std::string qc_str(const QCoeff& c);

struct TorusContext {
  BasisPtr basis;  // exponent lattice
  Mat gram;        // gram[i][j] = <e_i, e_j>, skew-symmetric

  bool commutative() const;
};

using TorusPtr = std::shared_ptr<const TorusContext>;

TorusPtr make_torus(BasisPtr basis, Mat gram);
TorusPtr commutative_torus(BasisPtr basis);
// Same basis, zero form (the s -> 1 shadow of ctx).
TorusPtr commutative_twin(const TorusPtr& ctx);

// Dense exponent vector in basis order.
using Exp = std::vector<Int>;

// <v, w> for dense exponents under the context Gram matrix.
Int skew_eval(const TorusContext& ctx, const Exp& v, const Exp& w);

// Total degree first, then lexicographic; translation-invariant, so leading
// terms are compatible with multiplication by a fixed monomial.
struct TermLess {
  bool operator()(const Exp& a, const Exp& b) const;
};

struct QLaurent {
  TorusPtr ctx;
  std::map<Exp, QCoeff, TermLess> terms;
};

QLaurent ql_zero(TorusPtr ctx);
QLaurent ql_one(TorusPtr ctx);
QLaurent ql_monomial(TorusPtr ctx, Exp e, QCoeff c);
// x^v for a lattice element v of the context basis, coefficient 1.
QLaurent ql_from_lattice(TorusPtr ctx, const LatticeElement& v);

bool ql_is_zero(const QLaurent& f);
bool ql_equal(const QLaurent& f, const QLaurent& g);
std::size_t ql_term_count(const QLaurent& f);
QLaurent ql_add(const QLaurent& f, const QLaurent& g);
QLaurent ql_sub(const QLaurent& f, const QLaurent& g);
QLaurent ql_neg(const QLaurent& f);
// s is central, so coefficient scaling is two-sided.
QLaurent ql_scale(const QCoeff& c, const QLaurent& f);
QLaurent ql_mul(const QLaurent& f, const QLaurent& g);
QLaurent ql_pow(const QLaurent& f, const Int& n);  // n >= 0, binary powering

// s^{- sum_{i<j} v_i v_j gram[i][j]}: the scalar with
// x^v = sym_scalar(v) * prod_{i increasing} (x^{e_i})^{v_i}.
QCoeff sym_scalar(const TorusContext& ctx, const Exp& v);
QCoeff sym_scalar(const Mat& gram, const Exp& v);

// h with f = h * g, by leading-term elimination in the term order.  Throws
// NotDivisible when no such h exists (or when the safety cap trips).
QLaurent exact_right_divide(const QLaurent& f, const QLaurent& g);

// Image under s -> 1 in the commutative twin context.
QLaurent specialize_commutative(const QLaurent& f);
// Same, but into a caller-supplied commutative context on the same basis.
QLaurent specialize_commutative(const QLaurent& f, const TorusPtr& twin);

// Every exponent has non-negative entries (f lies in the ordered subalgebra).
bool ql_is_polynomial(const QLaurent& f);

std::string ql_str(const QLaurent& f);

}  // namespace qcl
