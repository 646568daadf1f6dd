#include "cluster/acscat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/jsonio.hpp"
#include "cluster/smith.hpp"

namespace qcl {

namespace {

// Composite functor images along a path of edges in `acs`, starting at
// vertex index `start`: a-maps compose covariantly, x-maps contravariantly.
struct PathMaps {
  LinearMap a_plus, a_minus, x_plus, x_minus;
  std::size_t end = 0;
};

PathMaps path_maps(const AcsTruncation& acs,
                   const std::vector<std::string>& ids, std::size_t start) {
  PathMaps pm;
  pm.end = start;
  pm.a_plus = identity_map(acs.vertices[start].a_basis);
  pm.a_minus = pm.a_plus;
  pm.x_plus = identity_map(acs.vertices[start].x_basis);
  pm.x_minus = pm.x_plus;
  for (const std::string& id : ids) {
    const AcsEdge& e = acs.edge(id);
    if (e.src != pm.end)
      throw BadInput("edge path does not chain at " + id);
    pm.a_plus = map_compose(e.a_plus, pm.a_plus);
    pm.a_minus = map_compose(e.a_minus, pm.a_minus);
    pm.x_plus = map_compose(pm.x_plus, e.x_plus);
    pm.x_minus = map_compose(pm.x_minus, e.x_minus);
    pm.end = e.dst;
  }
  return pm;
}

bool same_truncation_shape(const AcsTruncation& a, const AcsTruncation& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size())
    return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (a.vertices[i].id != b.vertices[i].id) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].id != b.edges[i].id) return false;
  return true;
}

bool is_unimodular(const Mat& m) {
  if (mat_rows(m) != mat_cols(m)) return false;
  std::vector<Int> invs = smith_invariants(m);
  if (invs.size() != mat_rows(m)) return false;
  for (const Int& d : invs)
    if (d != 1) return false;
  return true;
}

Label tag_label(const Label& l, const char* suffix) {
  return Label{l.text + suffix, l.dual};
}

BasisPtr sum_basis(const BasisPtr& a, const BasisPtr& b) {
  std::vector<Label> labels;
  labels.reserve(a->rank() + b->rank());
  for (const Label& l : a->labels()) labels.push_back(tag_label(l, ".1"));
  for (const Label& l : b->labels()) labels.push_back(tag_label(l, ".2"));
  return make_basis(std::move(labels));
}

Mat block_diag(const Mat& a, const Mat& b) {
  const std::size_t r1 = mat_rows(a), c1 = mat_cols(a);
  const std::size_t r2 = mat_rows(b), c2 = mat_cols(b);
  Mat m = mat_zero(r1 + r2, c1 + c2);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < c1; ++j) m[i][j] = a[i][j];
  for (std::size_t i = 0; i < r2; ++i)
    for (std::size_t j = 0; j < c2; ++j) m[r1 + i][c1 + j] = b[i][j];
  return m;
}

// [I | 0] or [0 | I] selecting one summand of a direct sum, positionally.
Mat select_block(std::size_t first, std::size_t second, bool left) {
  Mat m = mat_zero(left ? first : second, first + second);
  for (std::size_t i = 0; i < mat_rows(m); ++i)
    m[i][left ? i : first + i] = 1;
  return m;
}

}  // namespace

AcsMorphism identity_morphism(const AcsTruncation& acs) {
  AcsMorphism m;
  m.src = acs;
  m.dst = acs;
  for (const AcsVertex& v : acs.vertices) {
    m.f_obj[v.id] = v.id;
    m.chi.emplace(v.id, identity_map(v.x_basis));
    m.alpha.emplace(v.id, identity_map(v.a_basis));
  }
  for (const AcsEdge& e : acs.edges) m.f_edge[e.id] = {e.id};
  return m;
}

MorphismReport verify_morphism(const AcsMorphism& m, bool quantum) {
  MorphismReport rep;
  auto fail = [&rep](std::string where, std::string rule, std::string detail) {
    rep.violations.push_back({std::move(where), std::move(rule), std::move(detail)});
  };

  // Vertex-level data: totality, shapes, factorization, quantum conditions.
  std::map<std::string, std::size_t> image;  // src vertex id -> dst index
  for (const AcsVertex& v : m.src.vertices) {
    auto it = m.f_obj.find(v.id);
    if (it == m.f_obj.end()) {
      fail(v.id, "functor", "vertex has no image under F");
      continue;
    }
    std::size_t w_idx;
    try {
      w_idx = m.dst.vertex_index(it->second);
    } catch (const BadInput&) {
      fail(v.id, "functor",
           "target truncation has no vertex '" + it->second +
               "' (too shallow?)");
      continue;
    }
    image[v.id] = w_idx;
    const AcsVertex& w = m.dst.vertices[w_idx];

    auto cit = m.chi.find(v.id);
    auto ait = m.alpha.find(v.id);
    if (cit == m.chi.end() || ait == m.alpha.end()) {
      fail(v.id, "shape", "missing chi or alpha component");
      image.erase(v.id);
      continue;
    }
    if (!same_basis(cit->second.domain, v.x_basis) ||
        !same_basis(cit->second.codomain, w.x_basis) ||
        !same_basis(ait->second.domain, v.a_basis) ||
        !same_basis(ait->second.codomain, w.a_basis)) {
      fail(v.id, "shape", "chi or alpha has the wrong endpoints");
      image.erase(v.id);
      continue;
    }

    if (!map_equal(map_compose(ait->second, v.beta),
                   map_compose(w.beta, cit->second)))
      fail(v.id, "factorization", "alpha o beta_src != beta_dst o chi");

    const bool pairing_ok = mat_equal(
        v.pairing, mat_mul(mat_transpose(map_matrix(ait->second)),
                           mat_mul(w.pairing, map_matrix(cit->second))));
    if (quantum) {
      if (!v.lambda || !w.lambda) {
        fail(v.id, "lambda-missing",
             "quantum verification but lambda is absent at the vertex or its image");
      } else if (!map_equal(*v.lambda,
                            map_compose(map_dual(ait->second),
                                        map_compose(*w.lambda, ait->second)))) {
        fail(v.id, "lambda-condition",
             "lambda_src != alpha^* o lambda_dst o alpha");
      }
      if (!pairing_ok)
        fail(v.id, "pairing-preservation",
             "<a,x>_src != <alpha(a), chi(x)>_dst");
    } else if (!pairing_ok) {
      rep.notes.push_back(
          {v.id, "pairing-preservation",
           "informational: the pairing is not preserved at this vertex"});
    }
  }

  // Edge-level data: the image path chains correctly and both naturality
  // squares commute for both signs.
  for (const AcsEdge& e : m.src.edges) {
    auto sit = image.find(m.src.vertices[e.src].id);
    auto dit = image.find(m.src.vertices[e.dst].id);
    if (sit == image.end() || dit == image.end()) continue;
    auto pit = m.f_edge.find(e.id);
    if (pit == m.f_edge.end()) {
      fail(e.id, "functor", "edge has no image under F");
      continue;
    }
    PathMaps pm;
    try {
      pm = path_maps(m.dst, pit->second, sit->second);
    } catch (const BadInput& err) {
      fail(e.id, "functor", err.what());
      continue;
    }
    if (pm.end != dit->second) {
      fail(e.id, "functor", "image path does not end at F(dst)");
      continue;
    }
    const LinearMap& chi_c = m.chi.at(m.src.vertices[e.src].id);
    const LinearMap& chi_d = m.chi.at(m.src.vertices[e.dst].id);
    const LinearMap& alpha_c = m.alpha.at(m.src.vertices[e.src].id);
    const LinearMap& alpha_d = m.alpha.at(m.src.vertices[e.dst].id);

    struct Signed {
      const char* name;
      const LinearMap *ea, *ex, *pa, *px;
    };
    for (const Signed& sg :
         {Signed{"+", &e.a_plus, &e.x_plus, &pm.a_plus, &pm.x_plus},
          Signed{"-", &e.a_minus, &e.x_minus, &pm.a_minus, &pm.x_minus}}) {
      if (!map_equal(map_compose(chi_c, *sg.ex), map_compose(*sg.px, chi_d)))
        fail(e.id, "naturality-chi",
             std::string("chi square fails for sign ") + sg.name);
      if (!map_equal(map_compose(alpha_d, *sg.ea), map_compose(*sg.pa, alpha_c)))
        fail(e.id, "naturality-alpha",
             std::string("alpha square fails for sign ") + sg.name);
    }
  }
  return rep;
}

AcsMorphism compose(const AcsMorphism& g, const AcsMorphism& f) {
  if (!same_truncation_shape(f.dst, g.src))
    throw BadInput("compose: middle truncations differ");
  AcsMorphism m;
  m.src = f.src;
  m.dst = g.dst;
  for (const auto& [c, fc] : f.f_obj) m.f_obj[c] = g.f_obj.at(fc);
  for (const auto& [e, path] : f.f_edge) {
    std::vector<std::string> out;
    for (const std::string& mid : path) {
      const auto& tail = g.f_edge.at(mid);
      out.insert(out.end(), tail.begin(), tail.end());
    }
    m.f_edge[e] = std::move(out);
  }
  for (const auto& [c, chi1] : f.chi)
    m.chi.emplace(c, map_compose(g.chi.at(f.f_obj.at(c)), chi1));
  for (const auto& [c, a1] : f.alpha)
    m.alpha.emplace(c, map_compose(g.alpha.at(f.f_obj.at(c)), a1));
  return m;
}

bool is_isomorphism(const AcsMorphism& m) {
  if (m.f_obj.size() != m.src.vertices.size()) return false;
  std::set<std::string> vimages;
  for (const auto& [c, fc] : m.f_obj) vimages.insert(fc);
  if (vimages.size() != m.dst.vertices.size() ||
      m.src.vertices.size() != m.dst.vertices.size())
    return false;

  if (m.f_edge.size() != m.src.edges.size()) return false;
  std::set<std::string> eimages;
  for (const auto& [e, path] : m.f_edge) {
    if (path.size() != 1) return false;
    eimages.insert(path[0]);
  }
  if (eimages.size() != m.dst.edges.size() ||
      m.src.edges.size() != m.dst.edges.size())
    return false;

  for (const auto& [c, chi] : m.chi)
    if (!is_unimodular(map_matrix(chi))) return false;
  for (const auto& [c, alpha] : m.alpha)
    if (!is_unimodular(map_matrix(alpha))) return false;
  return m.chi.size() == m.src.vertices.size() &&
         m.alpha.size() == m.src.vertices.size();
}

AcsMorphism inverse(const AcsMorphism& m) {
  if (!is_isomorphism(m)) throw BadInput("inverse: not an isomorphism");
  AcsMorphism inv;
  inv.src = m.dst;
  inv.dst = m.src;
  for (const auto& [c, fc] : m.f_obj) inv.f_obj[fc] = c;
  for (const auto& [e, path] : m.f_edge) inv.f_edge[path[0]] = {e};
  for (const auto& [c, chi] : m.chi) {
    const std::string& fc = m.f_obj.at(c);
    auto mi = unimodular_inverse(map_matrix(chi));
    inv.chi.emplace(fc, map_from_matrix(m.dst.vertex(fc).x_basis,
                                        m.src.vertex(c).x_basis, *mi));
  }
  for (const auto& [c, alpha] : m.alpha) {
    const std::string& fc = m.f_obj.at(c);
    auto mi = unimodular_inverse(map_matrix(alpha));
    inv.alpha.emplace(fc, map_from_matrix(m.dst.vertex(fc).a_basis,
                                          m.src.vertex(c).a_basis, *mi));
  }
  return inv;
}

bool morphisms_equal(const AcsMorphism& a, const AcsMorphism& b) {
  if (!same_truncation_shape(a.src, b.src) ||
      !same_truncation_shape(a.dst, b.dst))
    return false;
  if (a.f_obj != b.f_obj) return false;
  for (const AcsVertex& v : a.src.vertices) {
    if (!map_equal(a.chi.at(v.id), b.chi.at(v.id))) return false;
    if (!map_equal(a.alpha.at(v.id), b.alpha.at(v.id))) return false;
  }
  // Edge images may be different paths with the same composite.
  for (const AcsEdge& e : a.src.edges) {
    std::size_t start = a.dst.vertex_index(a.f_obj.at(a.src.vertices[e.src].id));
    PathMaps pa = path_maps(a.dst, a.f_edge.at(e.id), start);
    PathMaps pb = path_maps(b.dst, b.f_edge.at(e.id), start);
    if (pa.end != pb.end || !map_equal(pa.a_plus, pb.a_plus) ||
        !map_equal(pa.a_minus, pb.a_minus) ||
        !map_equal(pa.x_plus, pb.x_plus) ||
        !map_equal(pa.x_minus, pb.x_minus))
      return false;
  }
  return true;
}

ProductResult product(const AcsTruncation& a1, const AcsTruncation& a2) {
  ProductResult res;
  AcsTruncation& p = res.acs;
  p.quantum = false;  // products live in the non-quantum category
  const std::size_t n2 = a2.vertices.size();
  auto pair_id = [](const std::string& l, const std::string& r) {
    return l + " x " + r;
  };

  for (const AcsVertex& v1 : a1.vertices)
    for (const AcsVertex& v2 : a2.vertices) {
      AcsVertex v;
      v.id = pair_id(v1.id, v2.id);
      v.x_basis = sum_basis(v1.x_basis, v2.x_basis);
      v.a_basis = sum_basis(v1.a_basis, v2.a_basis);
      v.beta = map_from_matrix(
          v.x_basis, v.a_basis,
          block_diag(map_matrix(v1.beta), map_matrix(v2.beta)));
      v.pairing = block_diag(v1.pairing, v2.pairing);
      p.vertices.push_back(std::move(v));
    }
  if (!a1.root.empty() && !a2.root.empty())
    p.root = pair_id(a1.root, a2.root);

  for (const AcsEdge& e1 : a1.edges)
    for (std::size_t j = 0; j < n2; ++j) {
      const AcsVertex& c2 = a2.vertices[j];
      AcsEdge e;
      e.id = pair_id(e1.id, c2.id);
      e.src = e1.src * n2 + j;
      e.dst = e1.dst * n2 + j;
      const AcsVertex& ps = p.vertices[e.src];
      const AcsVertex& pd = p.vertices[e.dst];
      e.a_plus = map_from_matrix(
          ps.a_basis, pd.a_basis,
          block_diag(map_matrix(e1.a_plus), mat_identity(c2.a_basis->rank())));
      e.a_minus = map_from_matrix(
          ps.a_basis, pd.a_basis,
          block_diag(map_matrix(e1.a_minus), mat_identity(c2.a_basis->rank())));
      e.x_plus = map_from_matrix(
          pd.x_basis, ps.x_basis,
          block_diag(map_matrix(e1.x_plus), mat_identity(c2.x_basis->rank())));
      e.x_minus = map_from_matrix(
          pd.x_basis, ps.x_basis,
          block_diag(map_matrix(e1.x_minus), mat_identity(c2.x_basis->rank())));
      p.edges.push_back(std::move(e));
    }
  for (std::size_t i = 0; i < a1.vertices.size(); ++i) {
    const AcsVertex& c1 = a1.vertices[i];
    for (const AcsEdge& e2 : a2.edges) {
      AcsEdge e;
      e.id = pair_id(c1.id, e2.id);
      e.src = i * n2 + e2.src;
      e.dst = i * n2 + e2.dst;
      const AcsVertex& ps = p.vertices[e.src];
      const AcsVertex& pd = p.vertices[e.dst];
      e.a_plus = map_from_matrix(
          ps.a_basis, pd.a_basis,
          block_diag(mat_identity(c1.a_basis->rank()), map_matrix(e2.a_plus)));
      e.a_minus = map_from_matrix(
          ps.a_basis, pd.a_basis,
          block_diag(mat_identity(c1.a_basis->rank()), map_matrix(e2.a_minus)));
      e.x_plus = map_from_matrix(
          pd.x_basis, ps.x_basis,
          block_diag(mat_identity(c1.x_basis->rank()), map_matrix(e2.x_plus)));
      e.x_minus = map_from_matrix(
          pd.x_basis, ps.x_basis,
          block_diag(mat_identity(c1.x_basis->rank()), map_matrix(e2.x_minus)));
      p.edges.push_back(std::move(e));
    }
  }

  AcsMorphism& pr1 = res.proj1;
  AcsMorphism& pr2 = res.proj2;
  pr1.src = p;
  pr1.dst = a1;
  pr2.src = p;
  pr2.dst = a2;
  for (std::size_t i = 0; i < a1.vertices.size(); ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const AcsVertex& v1 = a1.vertices[i];
      const AcsVertex& v2 = a2.vertices[j];
      const AcsVertex& pv = p.vertices[i * n2 + j];
      pr1.f_obj[pv.id] = v1.id;
      pr2.f_obj[pv.id] = v2.id;
      pr1.chi.emplace(pv.id, map_from_matrix(
          pv.x_basis, v1.x_basis,
          select_block(v1.x_basis->rank(), v2.x_basis->rank(), true)));
      pr1.alpha.emplace(pv.id, map_from_matrix(
          pv.a_basis, v1.a_basis,
          select_block(v1.a_basis->rank(), v2.a_basis->rank(), true)));
      pr2.chi.emplace(pv.id, map_from_matrix(
          pv.x_basis, v2.x_basis,
          select_block(v1.x_basis->rank(), v2.x_basis->rank(), false)));
      pr2.alpha.emplace(pv.id, map_from_matrix(
          pv.a_basis, v2.a_basis,
          select_block(v1.a_basis->rank(), v2.a_basis->rank(), false)));
    }
  for (const AcsEdge& e1 : a1.edges)
    for (std::size_t j = 0; j < n2; ++j) {
      const std::string id = pair_id(e1.id, a2.vertices[j].id);
      pr1.f_edge[id] = {e1.id};
      pr2.f_edge[id] = {};  // contracted
    }
  for (std::size_t i = 0; i < a1.vertices.size(); ++i)
    for (const AcsEdge& e2 : a2.edges) {
      const std::string id = pair_id(a1.vertices[i].id, e2.id);
      pr1.f_edge[id] = {};
      pr2.f_edge[id] = {e2.id};
    }
  return res;
}

AcsMorphism product_mediator(const ProductResult& p, const AcsMorphism& f1,
                             const AcsMorphism& f2) {
  if (!same_truncation_shape(f1.src, f2.src))
    throw BadInput("product_mediator: cone legs have different sources");
  if (!same_truncation_shape(f1.dst, p.proj1.dst) ||
      !same_truncation_shape(f2.dst, p.proj2.dst))
    throw BadInput("product_mediator: cone legs do not match the factors");
  auto pair_id = [](const std::string& l, const std::string& r) {
    return l + " x " + r;
  };

  AcsMorphism m;
  m.src = f1.src;
  m.dst = p.acs;
  for (const AcsVertex& v : m.src.vertices) {
    const std::string& c1 = f1.f_obj.at(v.id);
    const std::string& c2 = f2.f_obj.at(v.id);
    const std::string pid = pair_id(c1, c2);
    m.f_obj[v.id] = pid;
    const AcsVertex& pv = p.acs.vertex(pid);
    // Stacked components (chi1; chi2) and (alpha1; alpha2).
    Mat cx = map_matrix(f1.chi.at(v.id));
    for (const auto& row : map_matrix(f2.chi.at(v.id))) cx.push_back(row);
    Mat ca = map_matrix(f1.alpha.at(v.id));
    for (const auto& row : map_matrix(f2.alpha.at(v.id))) ca.push_back(row);
    m.chi.emplace(v.id, map_from_matrix(v.x_basis, pv.x_basis, cx));
    m.alpha.emplace(v.id, map_from_matrix(v.a_basis, pv.a_basis, ca));
  }
  for (const AcsEdge& e : m.src.edges) {
    // Traverse the f1-path in the first coordinate (second fixed at the
    // start), then the f2-path in the second (first fixed at the end).
    const std::string& c2 = f2.f_obj.at(m.src.vertices[e.src].id);
    const std::string& d1 = f1.f_obj.at(m.src.vertices[e.dst].id);
    std::vector<std::string> path;
    for (const std::string& e1 : f1.f_edge.at(e.id))
      path.push_back(pair_id(e1, c2));
    for (const std::string& e2 : f2.f_edge.at(e.id))
      path.push_back(pair_id(d1, e2));
    m.f_edge[e.id] = std::move(path);
  }
  return m;
}

CoproductResult coproduct(const AcsTruncation& a1, const AcsTruncation& a2) {
  CoproductResult res;
  AcsTruncation& c = res.acs;
  c.quantum = a1.quantum && a2.quantum;
  auto copy_in = [&c](const AcsTruncation& a, const char* prefix,
                      std::size_t offset) {
    for (const AcsVertex& v : a.vertices) {
      AcsVertex w = v;
      w.id = prefix + v.id;
      if (!c.quantum) w.lambda.reset();
      c.vertices.push_back(std::move(w));
    }
    for (const AcsEdge& e : a.edges) {
      AcsEdge f = e;
      f.id = prefix + e.id;
      f.src = e.src + offset;
      f.dst = e.dst + offset;
      c.edges.push_back(std::move(f));
    }
  };
  copy_in(a1, "1:", 0);
  copy_in(a2, "2:", a1.vertices.size());
  std::set<Label> inv(a1.inv.begin(), a1.inv.end());
  inv.insert(a2.inv.begin(), a2.inv.end());
  c.inv.assign(inv.begin(), inv.end());

  auto make_inj = [&c](const AcsTruncation& a, const char* prefix) {
    AcsMorphism m;
    m.src = a;
    m.dst = c;
    for (const AcsVertex& v : a.vertices) {
      m.f_obj[v.id] = prefix + v.id;
      m.chi.emplace(v.id, identity_map(v.x_basis));
      m.alpha.emplace(v.id, identity_map(v.a_basis));
    }
    for (const AcsEdge& e : a.edges) m.f_edge[e.id] = {prefix + e.id};
    return m;
  };
  res.inj1 = make_inj(a1, "1:");
  res.inj2 = make_inj(a2, "2:");
  return res;
}

AcsMorphism coproduct_mediator(const CoproductResult& c, const AcsMorphism& g1,
                               const AcsMorphism& g2) {
  if (!same_truncation_shape(g1.dst, g2.dst))
    throw BadInput("coproduct_mediator: cocone legs have different targets");
  AcsMorphism m;
  m.src = c.acs;
  m.dst = g1.dst;
  auto copy_leg = [&m](const AcsMorphism& g, const char* prefix) {
    for (const auto& [v, fv] : g.f_obj) m.f_obj[prefix + v] = fv;
    for (const auto& [e, path] : g.f_edge) m.f_edge[prefix + e] = path;
    for (const auto& [v, chi] : g.chi) m.chi.emplace(prefix + v, chi);
    for (const auto& [v, alpha] : g.alpha) m.alpha.emplace(prefix + v, alpha);
  };
  copy_leg(g1, "1:");
  copy_leg(g2, "2:");
  return m;
}

AcsTruncation initial_object() { return AcsTruncation{}; }

AcsTruncation terminal_object() {
  AcsTruncation t;
  AcsVertex v;
  v.id = "pt";
  v.x_basis = make_basis({});
  v.a_basis = make_basis({});
  v.beta = zero_map(v.x_basis, v.a_basis);
  v.pairing = {};
  t.vertices.push_back(std::move(v));
  return t;
}

AcsTruncation quantized_terminal_object() {
  AcsTruncation t = terminal_object();
  t.quantum = true;
  AcsVertex& v = t.vertices[0];
  v.lambda = zero_map(v.a_basis, dual_basis(v.a_basis));
  return t;
}

AcsMorphism initial_morphism(const AcsTruncation& to) {
  AcsMorphism m;
  m.src = initial_object();
  m.dst = to;
  return m;
}

AcsMorphism terminal_morphism(const AcsTruncation& from, bool quantized) {
  AcsMorphism m;
  m.src = from;
  m.dst = quantized ? quantized_terminal_object() : terminal_object();
  const AcsVertex& pt = m.dst.vertices[0];
  for (const AcsVertex& v : from.vertices) {
    m.f_obj[v.id] = pt.id;
    m.chi.emplace(v.id, zero_map(v.x_basis, pt.x_basis));
    m.alpha.emplace(v.id, zero_map(v.a_basis, pt.a_basis));
  }
  for (const AcsEdge& e : from.edges) m.f_edge[e.id] = {};
  return m;
}

AcsMorphism morphism_from_json(const std::string& text,
                               const AcsTruncation& src,
                               const AcsTruncation& dst) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("invalid JSON: ") + e.what());
  }
  try {
    AcsMorphism m;
    m.src = src;
    m.dst = dst;
    for (const auto& [c, fc] : j.at("f_obj").items())
      m.f_obj[c] = fc.get<std::string>();
    if (j.contains("f_edge"))
      for (const auto& [e, img] : j.at("f_edge").items()) {
        std::vector<std::string> path;
        if (img.is_string()) {
          if (img.get<std::string>() != "contract")
            throw BadInput("edge image must be a path array or \"contract\"");
        } else {
          for (const auto& s : img) path.push_back(s.get<std::string>());
        }
        m.f_edge[e] = std::move(path);
      }
    auto load_components = [&](const char* key, bool x_side,
                               std::map<std::string, LinearMap>& out) {
      for (const auto& [c, rows] : j.at(key).items()) {
        const AcsVertex& v = src.vertex(c);
        const AcsVertex& w = dst.vertex(m.f_obj.at(c));
        Mat mat;
        for (const auto& row : rows) {
          std::vector<Int> r;
          for (const auto& x : row) r.push_back(int_from_json(x));
          mat.push_back(std::move(r));
        }
        out.emplace(c, map_from_matrix(x_side ? v.x_basis : v.a_basis,
                                       x_side ? w.x_basis : w.a_basis, mat));
      }
    };
    load_components("chi", true, m.chi);
    load_components("alpha", false, m.alpha);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("malformed morphism document: ") + e.what());
  }
}

std::string morphism_to_json(const AcsMorphism& m) {
  nlohmann::json j;
  nlohmann::json fo = nlohmann::json::object();
  for (const auto& [c, fc] : m.f_obj) fo[c] = fc;
  j["f_obj"] = fo;
  nlohmann::json fe = nlohmann::json::object();
  for (const auto& [e, path] : m.f_edge) {
    if (path.empty()) {
      fe[e] = "contract";
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const std::string& s : path) arr.push_back(s);
      fe[e] = arr;
    }
  }
  j["f_edge"] = fe;
  auto dump_components = [&](const char* key,
                             const std::map<std::string, LinearMap>& comps) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [c, f] : comps) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : map_matrix(f)) {
        nlohmann::json r = nlohmann::json::array();
        for (const Int& v : row) r.push_back(json_int(v));
        rows.push_back(std::move(r));
      }
      o[c] = rows;
    }
    j[key] = o;
  };
  dump_components("chi", m.chi);
  dump_components("alpha", m.alpha);
  return j.dump(2) + "\n";
}

}  // namespace qcl
