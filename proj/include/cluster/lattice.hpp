#pragma once

// Free abelian lattices on labelled bases, their duals, and integer linear
// maps between them.
//
// Conventions used across the library:
//   * A Label is a base symbol plus a dual flag; "b*" denotes the dual label
//     of "b".  The dual basis of Z[B] reuses the labels of B with the flag
//     toggled, and double duals are identified with the original lattice.
//   * eval_pairing(f, v) evaluates a functional f in Z[B]^* on v in Z[B];
//     on basis elements <b*, c> = delta_{bc}.
//   * LinearMap stores one column per domain label; composition, duals and
//     matrix bridges are explicit functions rather than operator overloads.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cluster/ints.hpp"

namespace qcl {

struct Label {
  std::string text;
  bool dual = false;

  friend auto operator<=>(const Label&, const Label&) = default;
};

inline Label primal(std::string text) { return Label{std::move(text), false}; }
inline Label dual_of(const Label& l) { return Label{l.text, !l.dual}; }

// Canonical rendering: "b" for primal, "b*" for dual labels.
std::string label_str(const Label& l);
// Inverse of label_str: a trailing '*' marks a dual label.
Label parse_label(const std::string& s);

class Basis {
 public:
  explicit Basis(std::vector<Label> labels);

  const std::vector<Label>& labels() const { return labels_; }
  std::size_t rank() const { return labels_.size(); }
  bool contains(const Label& l) const { return index_.count(l) != 0; }
  // Position in the epsilon (storage) order; throws BadInput if absent.
  std::size_t index_of(const Label& l) const;

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<Label> labels_;
  std::map<Label, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr make_basis(std::vector<Label> labels);
// Same label texts in the same order with every dual flag toggled.
BasisPtr dual_basis(const BasisPtr& b);
bool same_basis(const BasisPtr& a, const BasisPtr& b);

// An element of the free lattice on `basis`; zero coordinates are not stored.
struct LatticeElement {
  BasisPtr basis;
  std::map<Label, Int> coords;
};

LatticeElement lat_zero(BasisPtr basis);
LatticeElement lat_unit(BasisPtr basis, const Label& l);
LatticeElement lat_make(BasisPtr basis, std::map<Label, Int> coords);

bool lat_is_zero(const LatticeElement& v);
Int lat_coeff(const LatticeElement& v, const Label& l);
LatticeElement lat_add(const LatticeElement& a, const LatticeElement& b);
LatticeElement lat_sub(const LatticeElement& a, const LatticeElement& b);
LatticeElement lat_scale(const Int& c, const LatticeElement& v);
LatticeElement lat_neg(const LatticeElement& v);
bool lat_equal(const LatticeElement& a, const LatticeElement& b);

// v = [v]_+ - [v]_- with both parts non-negative and of disjoint support.
std::pair<LatticeElement, LatticeElement> pos_neg_parts(const LatticeElement& v);

// f lives in Z[B]^*, v in Z[B] (basis of f must be dual to basis of v).
Int eval_pairing(const LatticeElement& f, const LatticeElement& v);

// Dense coordinates in basis order.
std::vector<Int> lat_coordinates(const LatticeElement& v);
LatticeElement lat_from_coordinates(BasisPtr basis, const std::vector<Int>& c);

// "2a+3b", "a*-b*", "0"; coordinates appear in basis order.
std::string render(const LatticeElement& v);

// Reinterpret v inside a sub-basis (support must lie in `sub`) or along the
// inclusion of a sub-basis into a larger one.
LatticeElement lat_restrict(const LatticeElement& v, BasisPtr sub);
LatticeElement lat_extend(const LatticeElement& v, BasisPtr super);

struct LinearMap {
  BasisPtr domain;
  BasisPtr codomain;
  std::map<Label, LatticeElement> columns;  // one entry per domain label
};

LinearMap identity_map(BasisPtr basis);
LinearMap zero_map(BasisPtr domain, BasisPtr codomain);
LinearMap make_map(BasisPtr domain, BasisPtr codomain,
                   std::map<Label, LatticeElement> columns);

LatticeElement map_apply(const LinearMap& f, const LatticeElement& v);
// (g o f): apply f first.
LinearMap map_compose(const LinearMap& g, const LinearMap& f);
// The adjoint f^*: codomain^* -> domain^*, characterised by
// <f^*(y), x> = <y, f(x)> for y in codomain^*, x in domain.
LinearMap map_dual(const LinearMap& f);
bool map_equal(const LinearMap& a, const LinearMap& b);

// Rows follow codomain order, columns domain order.
Mat map_matrix(const LinearMap& f);
LinearMap map_from_matrix(BasisPtr domain, BasisPtr codomain, const Mat& m);

// Reinterpret the columns of f in a different codomain basis of equal rank
// (coordinatewise; label texts may differ).  Used when two lattices are
// identified along an order-preserving label correspondence.
LinearMap map_recast(const LinearMap& f, BasisPtr new_domain, BasisPtr new_codomain);

// Restriction of f to a sub-basis of its domain.
LinearMap map_restrict(const LinearMap& f, BasisPtr subdomain);

// Saturated generating sets for both radicals of the bilinear form
// B(x, y) = <f(x), y> attached to a map f: X -> Y^*:
//   left  = { x in X : f(x) = 0 }
//   right = { y in Y : <f(x), y> = 0 for all x }.
struct Radicals {
  std::vector<LatticeElement> left;
  std::vector<LatticeElement> right;
};
Radicals form_radicals(const LinearMap& f);

}  // namespace qcl
