#include "cluster/lattice.hpp"

#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/smith.hpp"

namespace qcl {

std::string label_str(const Label& l) { return l.dual ? l.text + "*" : l.text; }

Label parse_label(const std::string& s) {
  if (!s.empty() && s.back() == '*')
    return Label{s.substr(0, s.size() - 1), true};
  return Label{s, false};
}

Basis::Basis(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, fresh] = index_.emplace(labels_[i], i);
    if (!fresh)
      throw BadInput("duplicate basis label: " + label_str(labels_[i]));
  }
}

std::size_t Basis::index_of(const Label& l) const {
  auto it = index_.find(l);
  if (it == index_.end())
    throw BadInput("label not in basis: " + label_str(l));
  return it->second;
}

BasisPtr make_basis(std::vector<Label> labels) {
  return std::make_shared<const Basis>(std::move(labels));
}

BasisPtr dual_basis(const BasisPtr& b) {
  std::vector<Label> duals;
  duals.reserve(b->rank());
  for (const Label& l : b->labels()) duals.push_back(dual_of(l));
  return make_basis(std::move(duals));
}

bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a == b || (a && b && *a == *b);
}

LatticeElement lat_zero(BasisPtr basis) { return {std::move(basis), {}}; }

LatticeElement lat_unit(BasisPtr basis, const Label& l) {
  if (!basis->contains(l))
    throw BadInput("lat_unit: label not in basis: " + label_str(l));
  LatticeElement v{std::move(basis), {}};
  v.coords.emplace(l, 1);
  return v;
}

LatticeElement lat_make(BasisPtr basis, std::map<Label, Int> coords) {
  LatticeElement v{std::move(basis), {}};
  for (auto& [l, c] : coords) {
    if (c == 0) continue;
    if (!v.basis->contains(l))
      throw BadInput("lat_make: label not in basis: " + label_str(l));
    v.coords.emplace(l, std::move(c));
  }
  return v;
}

bool lat_is_zero(const LatticeElement& v) { return v.coords.empty(); }

Int lat_coeff(const LatticeElement& v, const Label& l) {
  auto it = v.coords.find(l);
  return it == v.coords.end() ? Int(0) : it->second;
}

LatticeElement lat_add(const LatticeElement& a, const LatticeElement& b) {
  if (!same_basis(a.basis, b.basis))
    throw BadInput("lat_add: mismatched bases");
  LatticeElement r = a;
  for (const auto& [l, c] : b.coords) {
    Int& slot = r.coords[l];
    slot += c;
    if (slot == 0) r.coords.erase(l);
  }
  return r;
}

LatticeElement lat_sub(const LatticeElement& a, const LatticeElement& b) {
  return lat_add(a, lat_neg(b));
}

LatticeElement lat_scale(const Int& c, const LatticeElement& v) {
  LatticeElement r{v.basis, {}};
  if (c == 0) return r;
  for (const auto& [l, x] : v.coords) r.coords.emplace(l, c * x);
  return r;
}

LatticeElement lat_neg(const LatticeElement& v) { return lat_scale(-1, v); }

bool lat_equal(const LatticeElement& a, const LatticeElement& b) {
  return same_basis(a.basis, b.basis) && a.coords == b.coords;
}

std::pair<LatticeElement, LatticeElement> pos_neg_parts(
    const LatticeElement& v) {
  LatticeElement pos{v.basis, {}}, neg{v.basis, {}};
  for (const auto& [l, c] : v.coords) {
    if (c > 0)
      pos.coords.emplace(l, c);
    else
      neg.coords.emplace(l, -c);
  }
  return {std::move(pos), std::move(neg)};
}

Int eval_pairing(const LatticeElement& f, const LatticeElement& v) {
  if (!same_basis(f.basis, dual_basis(v.basis)))
    throw BadInput("eval_pairing: functional basis is not dual to argument");
  Int acc = 0;
  for (const auto& [l, c] : f.coords) {
    auto it = v.coords.find(dual_of(l));
    if (it != v.coords.end()) acc += c * it->second;
  }
  return acc;
}

std::vector<Int> lat_coordinates(const LatticeElement& v) {
  std::vector<Int> out;
  out.reserve(v.basis->rank());
  for (const Label& l : v.basis->labels()) out.push_back(lat_coeff(v, l));
  return out;
}

LatticeElement lat_from_coordinates(BasisPtr basis, const std::vector<Int>& c) {
  if (c.size() != basis->rank())
    throw BadInput("lat_from_coordinates: size mismatch");
  LatticeElement v{basis, {}};
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) v.coords.emplace(basis->labels()[i], c[i]);
  return v;
}

std::string render(const LatticeElement& v) {
  if (lat_is_zero(v)) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Label& l : v.basis->labels()) {
    Int c = lat_coeff(v, l);
    if (c == 0) continue;
    if (c > 0 && !first) out << "+";
    if (c == -1)
      out << "-";
    else if (c != 1)
      out << c.str();
    out << label_str(l);
    first = false;
  }
  return out.str();
}

LatticeElement lat_restrict(const LatticeElement& v, BasisPtr sub) {
  LatticeElement r{std::move(sub), {}};
  for (const auto& [l, c] : v.coords) {
    if (!r.basis->contains(l))
      throw BadInput("lat_restrict: support outside sub-basis at " +
                     label_str(l));
    r.coords.emplace(l, c);
  }
  return r;
}

LatticeElement lat_extend(const LatticeElement& v, BasisPtr super) {
  LatticeElement r{std::move(super), {}};
  for (const auto& [l, c] : v.coords) {
    if (!r.basis->contains(l))
      throw BadInput("lat_extend: label missing from super-basis: " +
                     label_str(l));
    r.coords.emplace(l, c);
  }
  return r;
}

LinearMap identity_map(BasisPtr basis) {
  LinearMap f{basis, basis, {}};
  for (const Label& l : basis->labels())
    f.columns.emplace(l, lat_unit(basis, l));
  return f;
}

LinearMap zero_map(BasisPtr domain, BasisPtr codomain) {
  LinearMap f{std::move(domain), std::move(codomain), {}};
  for (const Label& l : f.domain->labels())
    f.columns.emplace(l, lat_zero(f.codomain));
  return f;
}

LinearMap make_map(BasisPtr domain, BasisPtr codomain,
                   std::map<Label, LatticeElement> columns) {
  LinearMap f{std::move(domain), std::move(codomain), std::move(columns)};
  for (const Label& l : f.domain->labels()) {
    auto it = f.columns.find(l);
    if (it == f.columns.end())
      throw BadInput("make_map: missing column for " + label_str(l));
    if (!same_basis(it->second.basis, f.codomain))
      throw BadInput("make_map: column in wrong codomain for " + label_str(l));
  }
  if (f.columns.size() != f.domain->rank())
    throw BadInput("make_map: extra columns outside the domain basis");
  return f;
}

LatticeElement map_apply(const LinearMap& f, const LatticeElement& v) {
  if (!same_basis(v.basis, f.domain))
    throw BadInput("map_apply: element not in the domain");
  LatticeElement out = lat_zero(f.codomain);
  for (const auto& [l, c] : v.coords)
    out = lat_add(out, lat_scale(c, f.columns.at(l)));
  return out;
}

LinearMap map_compose(const LinearMap& g, const LinearMap& f) {
  if (!same_basis(f.codomain, g.domain))
    throw BadInput("map_compose: codomain/domain mismatch");
  LinearMap h{f.domain, g.codomain, {}};
  for (const auto& [l, col] : f.columns) h.columns.emplace(l, map_apply(g, col));
  return h;
}

LinearMap map_dual(const LinearMap& f) {
  BasisPtr dom = dual_basis(f.codomain);
  BasisPtr cod = dual_basis(f.domain);
  LinearMap g{dom, cod, {}};
  for (const Label& y : dom->labels()) g.columns.emplace(y, lat_zero(cod));
  // <f^*(y*), x> = <y*, f(x)>: column x of f contributes its y-coordinate
  // to coordinate x* of column y*.
  for (const auto& [x, col] : f.columns)
    for (const auto& [y, c] : col.coords) {
      LatticeElement& target = g.columns.at(dual_of(y));
      Int& slot = target.coords[dual_of(x)];
      slot += c;
      if (slot == 0) target.coords.erase(dual_of(x));
    }
  return g;
}

bool map_equal(const LinearMap& a, const LinearMap& b) {
  if (!same_basis(a.domain, b.domain) || !same_basis(a.codomain, b.codomain))
    return false;
  for (const Label& l : a.domain->labels())
    if (!lat_equal(a.columns.at(l), b.columns.at(l))) return false;
  return true;
}

Mat map_matrix(const LinearMap& f) {
  Mat m = mat_zero(f.codomain->rank(), f.domain->rank());
  for (std::size_t j = 0; j < f.domain->rank(); ++j) {
    const LatticeElement& col = f.columns.at(f.domain->labels()[j]);
    for (const auto& [l, c] : col.coords) m[f.codomain->index_of(l)][j] = c;
  }
  return m;
}

LinearMap map_from_matrix(BasisPtr domain, BasisPtr codomain, const Mat& m) {
  // A 0 x n matrix is just {}, so the column count is only meaningful when
  // there is at least one row.
  if (mat_rows(m) != codomain->rank() ||
      (mat_rows(m) > 0 && mat_cols(m) != domain->rank()))
    throw BadInput("map_from_matrix: shape mismatch");
  LinearMap f{std::move(domain), std::move(codomain), {}};
  for (std::size_t j = 0; j < f.domain->rank(); ++j) {
    LatticeElement col = lat_zero(f.codomain);
    for (std::size_t i = 0; i < f.codomain->rank(); ++i)
      if (m[i][j] != 0) col.coords.emplace(f.codomain->labels()[i], m[i][j]);
    f.columns.emplace(f.domain->labels()[j], std::move(col));
  }
  return f;
}

LinearMap map_recast(const LinearMap& f, BasisPtr new_domain,
                     BasisPtr new_codomain) {
  if (new_domain->rank() != f.domain->rank() ||
      new_codomain->rank() != f.codomain->rank())
    throw BadInput("map_recast: rank mismatch");
  return map_from_matrix(std::move(new_domain), std::move(new_codomain),
                         map_matrix(f));
}

LinearMap map_restrict(const LinearMap& f, BasisPtr subdomain) {
  LinearMap g{std::move(subdomain), f.codomain, {}};
  for (const Label& l : g.domain->labels()) {
    auto it = f.columns.find(l);
    if (it == f.columns.end())
      throw BadInput("map_restrict: label outside domain: " + label_str(l));
    g.columns.emplace(l, it->second);
  }
  return g;
}

Radicals form_radicals(const LinearMap& f) {
  // f: X -> Y^*; matrix rows index Y^* labels, columns index X labels.
  Mat m = map_matrix(f);
  Radicals rad;
  Mat rk = right_kernel(m);  // columns: x with f(x) = 0
  for (std::size_t j = 0; j < mat_cols(rk); ++j) {
    std::vector<Int> coords(mat_rows(rk));
    for (std::size_t i = 0; i < mat_rows(rk); ++i) coords[i] = rk[i][j];
    rad.left.push_back(lat_from_coordinates(f.domain, coords));
  }
  // <f(x), y> = sum_l m[l][x] y_l: right radical = right kernel of m^T,
  // living in Y (primal labels of the codomain duals).
  BasisPtr y_basis = dual_basis(f.codomain);
  Mat rk2 = right_kernel(mat_transpose(m));
  for (std::size_t j = 0; j < mat_cols(rk2); ++j) {
    std::vector<Int> coords(mat_rows(rk2));
    for (std::size_t i = 0; i < mat_rows(rk2); ++i) coords[i] = rk2[i][j];
    rad.right.push_back(lat_from_coordinates(y_basis, coords));
  }
  return rad;
}

}  // namespace qcl
