#include "cluster/acs.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "cluster/engine.hpp"
#include "cluster/errors.hpp"
#include "cluster/jsonio.hpp"
#include "cluster/smith.hpp"

namespace qcl {

namespace {

// f restricted to a sub-basis of the domain, with the images reinterpreted
// in a sub-basis of the codomain (their support must lie inside it).
LinearMap restrict_between(const LinearMap& f, BasisPtr dom_sub,
                           BasisPtr cod_sub) {
  std::map<Label, LatticeElement> cols;
  for (const Label& l : dom_sub->labels())
    cols.emplace(l, lat_restrict(map_apply(f, lat_unit(f.domain, l)), cod_sub));
  return make_map(std::move(dom_sub), std::move(cod_sub), std::move(cols));
}

AcsVertex vertex_from_seed(const Seed& seed, std::string id) {
  AcsVertex v;
  v.id = std::move(id);
  v.x_basis = seed.ex_basis;
  v.a_basis = dual_basis(seed.basis);
  v.beta = seed.beta;
  v.lambda = seed.lambda;
  const std::size_t n = v.a_basis->rank();
  const std::size_t m = v.x_basis->rank();
  v.pairing = mat_zero(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      v.pairing[i][j] = eval_pairing(lat_unit(v.a_basis, v.a_basis->labels()[i]),
                                     lat_unit(seed.basis, v.x_basis->labels()[j]));
  return v;
}

bool is_skew(const Mat& m) {
  if (mat_rows(m) != mat_cols(m)) return false;
  for (std::size_t i = 0; i < mat_rows(m); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m[i][j] != -m[j][i]) return false;
  return true;
}

std::string edge_tag(const AcsTruncation& acs, const AcsEdge& e) {
  return e.id + " (" + acs.vertices[e.src].id + " -> " + acs.vertices[e.dst].id +
         ")";
}

}  // namespace

std::size_t AcsTruncation::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return i;
  throw BadInput("unknown vertex id: " + id);
}

const AcsVertex& AcsTruncation::vertex(const std::string& id) const {
  return vertices[vertex_index(id)];
}

const AcsEdge& AcsTruncation::edge(const std::string& id) const {
  for (const AcsEdge& e : edges)
    if (e.id == id) return e;
  throw BadInput("unknown edge id: " + id);
}

AcsTruncation acs_from_seed(const Seed& seed, std::size_t depth) {
  AcsTruncation acs;
  acs.quantum = seed.lambda.has_value();
  acs.inv = seed.inv;
  acs.root = path_str({});

  struct Node {
    Seed seed;
    std::vector<Label> path;
    std::optional<Label> arrived_by;  // fresh label of the incoming step
  };
  std::vector<Node> nodes;
  nodes.push_back({seed, {}, std::nullopt});
  acs.vertices.push_back(vertex_from_seed(seed, path_str({})));

  std::size_t next_edge = 0;
  for (std::size_t at = 0; at < nodes.size(); ++at) {
    if (nodes[at].path.size() >= depth) continue;
    // Copy: nodes grows inside the loop and may relocate.
    const Node node = nodes[at];
    for (const Label& k : node.seed.ex_basis->labels()) {
      if (node.arrived_by && k == *node.arrived_by) continue;
      MutationResult res = mutate_seed(node.seed, k, node.path);
      std::vector<Label> child_path = node.path;
      child_path.push_back(k);

      const std::size_t child = nodes.size();
      nodes.push_back({res.seed, child_path, res.maps.fresh});
      acs.vertices.push_back(vertex_from_seed(res.seed, path_str(child_path)));

      const MutationMaps& m = res.maps;
      BasisPtr old_ex = node.seed.ex_basis;
      BasisPtr new_ex = res.seed.ex_basis;

      AcsEdge fwd;
      fwd.id = "e" + std::to_string(next_edge++);
      fwd.src = at;
      fwd.dst = child;
      fwd.a_plus = m.e_plus;
      fwd.a_minus = m.e_minus;
      fwd.x_plus = restrict_between(m.fi_plus, new_ex, old_ex);
      fwd.x_minus = restrict_between(m.fi_minus, new_ex, old_ex);
      acs.edges.push_back(std::move(fwd));

      // Reverse edge: the inverses, with the signs swapped (this is what the
      // digon relations ask for, and it matches mutating back at the fresh
      // label up to the canonical relabeling).
      AcsEdge rev;
      rev.id = "e" + std::to_string(next_edge++);
      rev.src = child;
      rev.dst = at;
      rev.a_plus = m.ei_minus;
      rev.a_minus = m.ei_plus;
      rev.x_plus = restrict_between(m.f_minus, old_ex, new_ex);
      rev.x_minus = restrict_between(m.f_plus, old_ex, new_ex);
      acs.edges.push_back(std::move(rev));
    }
  }
  return acs;
}

std::vector<AcsViolation> verify_acs(const AcsTruncation& acs) {
  std::vector<AcsViolation> out;
  auto add = [&out](std::string where, std::string rule, std::string detail) {
    out.push_back({std::move(where), std::move(rule), std::move(detail)});
  };

  std::vector<bool> vertex_ok(acs.vertices.size(), true);
  for (std::size_t i = 0; i < acs.vertices.size(); ++i) {
    const AcsVertex& v = acs.vertices[i];
    const std::size_t n = v.a_basis->rank();
    const std::size_t m = v.x_basis->rank();
    if (!same_basis(v.beta.domain, v.x_basis) ||
        !same_basis(v.beta.codomain, v.a_basis)) {
      add(v.id, "shape", "beta is not a map X -> A");
      vertex_ok[i] = false;
    }
    if (mat_rows(v.pairing) != n || (n > 0 && mat_cols(v.pairing) != m)) {
      add(v.id, "shape", "pairing is not an A x X matrix");
      vertex_ok[i] = false;
    }
    if (acs.quantum && v.lambda &&
        (!same_basis(v.lambda->domain, v.a_basis) ||
         !same_basis(v.lambda->codomain, dual_basis(v.a_basis)))) {
      add(v.id, "shape", "lambda is not a map A -> A^*");
      vertex_ok[i] = false;
    }
    if (!vertex_ok[i]) continue;

    // Right non-degeneracy: no x pairs to zero against every a.
    if (m > 0) {
      if (n == 0) {
        add(v.id, "right-nondegenerate", "X is non-zero but A is zero");
      } else if (mat_cols(right_kernel(v.pairing)) != 0) {
        add(v.id, "right-nondegenerate",
            "the pairing has a non-trivial right kernel");
      }
    }

    if (acs.quantum) {
      if (!v.lambda) {
        add(v.id, "lambda-missing", "quantum structure without lambda");
        continue;
      }
      const Mat lm = map_matrix(*v.lambda);
      if (!is_skew(lm)) add(v.id, "lambda-skew", "lambda is not skew-symmetric");

      // Compatibility at the vertex: the three linear identities plus the
      // split-mono condition that together characterise a quantum structure.
      bool form_ok = true;
      for (std::size_t a = 0; a < n && form_ok; ++a)
        for (std::size_t x = 0; x < m && form_ok; ++x) {
          const Label& al = v.a_basis->labels()[a];
          const Label& xl = v.x_basis->labels()[x];
          Int got = eval_pairing(map_apply(*v.lambda, lat_unit(v.a_basis, al)),
                                 map_apply(v.beta, lat_unit(v.x_basis, xl)));
          if (got != v.pairing[a][x]) {
            add(v.id, "form-identity",
                "<lambda(" + label_str(al) + "), beta(" + label_str(xl) +
                    ")> = " + int_str(got) + ", pairing gives " +
                    int_str(v.pairing[a][x]));
            form_ok = false;
          }
        }
      LinearMap delta_x =
          map_from_matrix(v.x_basis, dual_basis(v.a_basis), v.pairing);
      LinearMap delta_a = map_from_matrix(v.a_basis, dual_basis(v.x_basis),
                                          mat_transpose(v.pairing));
      if (!map_equal(map_compose(map_dual(*v.lambda), v.beta), delta_x))
        add(v.id, "lambda-dual-beta", "lambda^* o beta != delta_X");
      if (!map_equal(map_compose(map_dual(v.beta), *v.lambda), delta_a))
        add(v.id, "beta-dual-lambda", "beta^* o lambda != delta_A");
      std::vector<Int> invs = smith_invariants(map_matrix(v.beta));
      bool split = invs.size() == m;
      for (const Int& d : invs)
        if (d != 1) split = false;
      if (!split)
        add(v.id, "beta-split-mono", "beta is not a split monomorphism");
    }
  }

  std::vector<bool> edge_ok(acs.edges.size(), true);
  for (std::size_t i = 0; i < acs.edges.size(); ++i) {
    const AcsEdge& e = acs.edges[i];
    if (e.src >= acs.vertices.size() || e.dst >= acs.vertices.size()) {
      add(e.id, "shape", "edge endpoint out of range");
      edge_ok[i] = false;
      continue;
    }
    const AcsVertex& s = acs.vertices[e.src];
    const AcsVertex& d = acs.vertices[e.dst];
    if (!vertex_ok[e.src] || !vertex_ok[e.dst]) {
      edge_ok[i] = false;
      continue;
    }
    auto a_shape = [&](const LinearMap& f) {
      return same_basis(f.domain, s.a_basis) && same_basis(f.codomain, d.a_basis);
    };
    auto x_shape = [&](const LinearMap& f) {
      return same_basis(f.domain, d.x_basis) && same_basis(f.codomain, s.x_basis);
    };
    if (!a_shape(e.a_plus) || !a_shape(e.a_minus) || !x_shape(e.x_plus) ||
        !x_shape(e.x_minus)) {
      add(edge_tag(acs, e), "shape",
          "edge maps do not run A_src -> A_dst and X_dst -> X_src");
      edge_ok[i] = false;
      continue;
    }

    struct Signed {
      const char* name;
      const LinearMap* a;
      const LinearMap* x;
    };
    for (const Signed& sg : {Signed{"+", &e.a_plus, &e.x_plus},
                             Signed{"-", &e.a_minus, &e.x_minus}}) {
      if (!map_equal(d.beta, map_compose(*sg.a, map_compose(s.beta, *sg.x))))
        add(edge_tag(acs, e), "factorization",
            std::string("beta_dst != a_") + sg.name + " o beta_src o x_" +
                sg.name);
      if (!mat_equal(mat_mul(s.pairing, map_matrix(*sg.x)),
                     mat_mul(mat_transpose(map_matrix(*sg.a)), d.pairing)))
        add(edge_tag(acs, e), "adjointness",
            std::string("<a, x_") + sg.name + "(x)>_src != <a_" + sg.name +
                "(a), x>_dst");
      if (acs.quantum && s.lambda && d.lambda) {
        if (!map_equal(*s.lambda,
                       map_compose(map_dual(*sg.a),
                                   map_compose(*d.lambda, *sg.a))))
          add(edge_tag(acs, e), "lambda-square",
              std::string("lambda_src != a_") + sg.name + "^* o lambda_dst o a_" +
                  sg.name);
      }
    }
  }

  // Digon relations: opposite edges compose to identities, with the signs
  // paired oppositely.
  for (std::size_t i = 0; i < acs.edges.size(); ++i) {
    if (!edge_ok[i]) continue;
    const AcsEdge& e = acs.edges[i];
    for (std::size_t j = 0; j < acs.edges.size(); ++j) {
      if (i == j || !edge_ok[j]) continue;
      const AcsEdge& f = acs.edges[j];
      if (f.src != e.dst || f.dst != e.src) continue;
      const AcsVertex& s = acs.vertices[e.src];
      const std::string where = edge_tag(acs, e) + " vs " + edge_tag(acs, f);
      if (!map_equal(map_compose(f.a_minus, e.a_plus),
                     identity_map(s.a_basis)))
        add(where, "digon", "a_-(reverse) o a_+(forward) != id on A");
      if (!map_equal(map_compose(f.a_plus, e.a_minus),
                     identity_map(s.a_basis)))
        add(where, "digon", "a_+(reverse) o a_-(forward) != id on A");
      if (!map_equal(map_compose(e.x_plus, f.x_minus),
                     identity_map(s.x_basis)))
        add(where, "digon", "x_+(forward) o x_-(reverse) != id on X");
      if (!map_equal(map_compose(e.x_minus, f.x_plus),
                     identity_map(s.x_basis)))
        add(where, "digon", "x_-(forward) o x_+(reverse) != id on X");
    }
  }
  return out;
}

AcsTruncation principal_part(const AcsTruncation& acs) {
  // Per-vertex quotient data: A -> A / rad_left(pairing).
  struct Quot {
    Mat pi;     // r x n, the quotient map
    Mat sigma;  // n x r, a section (pi o sigma = id)
    BasisPtr pbasis;
  };

  bool all_trivial = true;
  std::vector<Quot> quots;
  quots.reserve(acs.vertices.size());
  for (const AcsVertex& v : acs.vertices) {
    const std::size_t n = v.a_basis->rank();
    SmithResult sr = smith(v.pairing);
    const std::size_t r = sr.rank;
    if (r != n) all_trivial = false;
    // Rows of U beyond the rank span the left kernel; the first r rows span a
    // complement.  With W = U^T the quotient map reads off the first r
    // coordinates in the W-column basis.
    Mat w = mat_transpose(sr.u);
    auto winv = unimodular_inverse(w);
    if (!winv) throw Internal("principal_part: U is not unimodular");
    Quot q;
    q.pi = Mat(winv->begin(), winv->begin() + r);
    q.sigma = mat_zero(n, r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) q.sigma[i][j] = w[i][j];
    std::vector<Label> labels;
    for (std::size_t j = 0; j < r; ++j)
      labels.push_back(primal("p" + std::to_string(j + 1)));
    q.pbasis = make_basis(std::move(labels));
    quots.push_back(std::move(q));
  }
  if (all_trivial) return acs;

  AcsTruncation out;
  out.quantum = false;
  out.root = acs.root;
  for (std::size_t i = 0; i < acs.vertices.size(); ++i) {
    const AcsVertex& v = acs.vertices[i];
    const Quot& q = quots[i];
    AcsVertex pv;
    pv.id = v.id;
    pv.x_basis = v.x_basis;
    pv.a_basis = q.pbasis;
    pv.beta = map_from_matrix(v.x_basis, q.pbasis,
                              mat_mul(q.pi, map_matrix(v.beta)));
    pv.pairing = mat_mul(mat_transpose(q.sigma), v.pairing);
    out.vertices.push_back(std::move(pv));
  }
  for (const AcsEdge& e : acs.edges) {
    const Quot& qs = quots[e.src];
    const Quot& qd = quots[e.dst];
    auto descend = [&](const LinearMap& a) {
      return map_from_matrix(
          qs.pbasis, qd.pbasis,
          mat_mul(qd.pi, mat_mul(map_matrix(a), qs.sigma)));
    };
    AcsEdge pe;
    pe.id = e.id;
    pe.src = e.src;
    pe.dst = e.dst;
    pe.a_plus = descend(e.a_plus);
    pe.a_minus = descend(e.a_minus);
    pe.x_plus = e.x_plus;
    pe.x_minus = e.x_minus;
    out.edges.push_back(std::move(pe));
  }
  return out;
}

SkewReport skew_symmetrizable_report(const AcsTruncation& acs,
                                     const std::string& vertex_id) {
  SkewReport r;
  const AcsVertex& v = acs.vertex(vertex_id);
  Mat b = map_matrix(v.beta);
  r.x_form_skew = is_skew(mat_mul(mat_transpose(b), v.pairing));
  r.delta_beta_skew = is_skew(mat_mul(mat_transpose(v.pairing), b));
  AcsTruncation pp = principal_part(acs);
  const AcsVertex& pv = pp.vertex(vertex_id);
  Mat pb = map_matrix(pv.beta);
  r.principal_x_form_skew = is_skew(mat_mul(mat_transpose(pb), pv.pairing));
  r.principal_delta_beta_skew = is_skew(mat_mul(mat_transpose(pv.pairing), pb));
  return r;
}

RankReport classify(const AcsTruncation& acs) {
  RankReport report;
  for (const AcsVertex& v : acs.vertices)
    report.per_vertex.push_back({v.id, v.a_basis->rank(), v.x_basis->rank()});

  report.constant_rank = true;
  for (const auto& vr : report.per_vertex)
    if (vr.a_rank != report.per_vertex[0].a_rank ||
        vr.x_rank != report.per_vertex[0].x_rank)
      report.constant_rank = false;
  if (report.constant_rank && !report.per_vertex.empty()) {
    report.total_rank = report.per_vertex[0].a_rank;
    report.mutable_rank = report.per_vertex[0].x_rank;
    report.frozen_rank = report.total_rank >= report.mutable_rank
                             ? report.total_rank - report.mutable_rank
                             : 0;
  }

  const std::size_t n = acs.vertices.size();
  std::vector<std::vector<std::size_t>> fwd(n), und(n);
  std::set<std::pair<std::size_t, std::size_t>> arrows;
  for (const AcsEdge& e : acs.edges) {
    if (e.src >= n || e.dst >= n) continue;
    fwd[e.src].push_back(e.dst);
    und[e.src].push_back(e.dst);
    und[e.dst].push_back(e.src);
    arrows.insert({e.src, e.dst});
  }
  auto reach_count = [&](std::size_t s,
                         const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> q{s};
    seen[s] = true;
    std::size_t cnt = 0;
    while (!q.empty()) {
      std::size_t at = q.front();
      q.pop_front();
      ++cnt;
      for (std::size_t to : adj[at])
        if (!seen[to]) {
          seen[to] = true;
          q.push_back(to);
        }
    }
    return cnt;
  };

  report.weakly_connected = n <= 1 || reach_count(0, und) == n;
  report.strongly_connected = true;
  for (std::size_t i = 0; i < n && report.strongly_connected; ++i)
    if (reach_count(i, fwd) != n) report.strongly_connected = false;
  if (n == 0) report.strongly_connected = true;

  report.bi_directed = true;
  for (const auto& [s, d] : arrows)
    if (!arrows.count({d, s})) report.bi_directed = false;

  report.rootable = false;
  for (std::size_t i = 0; i < n; ++i)
    if (reach_count(i, fwd) == n) {
      report.rootable = true;
      report.root = acs.vertices[i].id;
      break;
    }
  return report;
}

Seed seed_from_acs(const AcsTruncation& acs, const std::string& vertex_id) {
  const AcsVertex& v = acs.vertex(vertex_id);
  const std::size_t n = v.a_basis->rank();
  const std::size_t m = v.x_basis->rank();
  if (acs.quantum && !v.lambda)
    throw BadInput("seed_from_acs: quantum structure but vertex " + vertex_id +
                   " has no lambda");

  // Seed-adapted means the pairing columns are distinct standard basis
  // vectors: each x is delta-paired with exactly one a.
  std::vector<std::size_t> row_of(m, n);
  std::set<std::size_t> used;
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v.pairing[i][j] == 0) continue;
      ++hits;
      row_of[j] = i;
      if (v.pairing[i][j] != 1) hits = 2;
    }
    if (hits != 1 || !used.insert(row_of[j]).second)
      throw BadInput(
          "seed_from_acs: vertex " + vertex_id +
          " is not seed-adapted (pairing columns are not distinct unit "
          "vectors)");
  }

  auto to_primal = [](const Label& l) { return l.dual ? dual_of(l) : l; };
  std::vector<Label> blabels;
  blabels.reserve(n);
  for (const Label& a : v.a_basis->labels()) blabels.push_back(to_primal(a));
  BasisPtr sbasis = make_basis(blabels);
  BasisPtr dual_s = dual_basis(sbasis);

  std::vector<Label> ex;
  ex.reserve(m);
  for (std::size_t j = 0; j < m; ++j) ex.push_back(blabels[row_of[j]]);
  std::set<Label> ex_set(ex.begin(), ex.end());
  std::vector<Label> ex_ordered;
  for (const Label& l : sbasis->labels())
    if (ex_set.count(l)) ex_ordered.push_back(l);
  BasisPtr ex_basis = make_basis(ex_ordered);

  // beta positionally: x_j corresponds to ex[j].
  LinearMap recast = map_recast(v.beta, make_basis(ex), dual_s);
  LinearMap beta = make_map(ex_basis, dual_s, recast.columns);

  std::optional<LinearMap> lambda;
  if (acs.quantum) lambda = map_recast(*v.lambda, dual_s, sbasis);

  std::vector<Label> inv;
  for (const Label& l : acs.inv)
    if (sbasis->contains(l) && !ex_set.count(l)) inv.push_back(l);

  return make_seed(sbasis, ex, inv, std::move(beta), std::move(lambda));
}

namespace {

nlohmann::json labels_json(const BasisPtr& b) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Label& l : b->labels()) arr.push_back(label_str(l));
  return arr;
}

BasisPtr basis_from_json(const nlohmann::json& arr) {
  std::vector<Label> labels;
  for (const auto& s : arr) labels.push_back(parse_label(s.get<std::string>()));
  return make_basis(std::move(labels));
}

nlohmann::json map_cols_json(const LinearMap& f) {
  nlohmann::json o = nlohmann::json::object();
  for (const Label& l : f.domain->labels()) {
    nlohmann::json col = nlohmann::json::object();
    for (const auto& [cl, c] : f.columns.at(l).coords)
      col[label_str(cl)] = json_int(c);
    o[label_str(l)] = col;
  }
  return o;
}

LinearMap map_cols_from_json(BasisPtr dom, BasisPtr cod,
                             const nlohmann::json& j) {
  std::map<Label, LatticeElement> cols;
  for (const Label& l : dom->labels()) {
    std::map<Label, Int> coords;
    const std::string key = label_str(l);
    if (j.contains(key))
      for (const auto& [cl, c] : j.at(key).items())
        coords[parse_label(cl)] = int_from_json(c);
    cols.emplace(l, lat_make(cod, std::move(coords)));
  }
  return make_map(std::move(dom), std::move(cod), std::move(cols));
}

nlohmann::json mat_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const Int& v : row) r.push_back(json_int(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

Mat mat_from_json(const nlohmann::json& j) {
  Mat m;
  for (const auto& row : j) {
    std::vector<Int> r;
    for (const auto& v : row) r.push_back(int_from_json(v));
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

AcsTruncation acs_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("invalid JSON: ") + e.what());
  }
  try {
    AcsTruncation acs;
    acs.quantum = j.value("quantum", false);
    acs.root = j.value("root", std::string());
    if (j.contains("inv"))
      for (const auto& s : j.at("inv"))
        acs.inv.push_back(parse_label(s.get<std::string>()));
    for (const auto& jv : j.at("vertices")) {
      AcsVertex v;
      v.id = jv.at("id").get<std::string>();
      v.x_basis = basis_from_json(jv.at("x_basis"));
      v.a_basis = basis_from_json(jv.at("a_basis"));
      v.beta = map_cols_from_json(v.x_basis, v.a_basis, jv.at("beta"));
      if (jv.contains("lambda"))
        v.lambda = map_cols_from_json(v.a_basis, dual_basis(v.a_basis),
                                      jv.at("lambda"));
      v.pairing = mat_from_json(jv.at("pairing"));
      acs.vertices.push_back(std::move(v));
    }
    for (const auto& je : j.at("edges")) {
      AcsEdge e;
      e.id = je.at("id").get<std::string>();
      e.src = acs.vertex_index(je.at("src").get<std::string>());
      e.dst = acs.vertex_index(je.at("dst").get<std::string>());
      const AcsVertex& s = acs.vertices[e.src];
      const AcsVertex& d = acs.vertices[e.dst];
      e.a_plus = map_cols_from_json(s.a_basis, d.a_basis, je.at("a_plus"));
      e.a_minus = map_cols_from_json(s.a_basis, d.a_basis, je.at("a_minus"));
      e.x_plus = map_cols_from_json(d.x_basis, s.x_basis, je.at("x_plus"));
      e.x_minus = map_cols_from_json(d.x_basis, s.x_basis, je.at("x_minus"));
      acs.edges.push_back(std::move(e));
    }
    return acs;
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("malformed truncation document: ") + e.what());
  }
}

std::string acs_to_json(const AcsTruncation& acs) {
  nlohmann::json j;
  j["quantum"] = acs.quantum;
  if (!acs.root.empty()) j["root"] = acs.root;
  nlohmann::json inv = nlohmann::json::array();
  for (const Label& l : acs.inv) inv.push_back(label_str(l));
  j["inv"] = inv;
  nlohmann::json vertices = nlohmann::json::array();
  for (const AcsVertex& v : acs.vertices) {
    nlohmann::json jv;
    jv["id"] = v.id;
    jv["x_basis"] = labels_json(v.x_basis);
    jv["a_basis"] = labels_json(v.a_basis);
    jv["beta"] = map_cols_json(v.beta);
    if (v.lambda) jv["lambda"] = map_cols_json(*v.lambda);
    jv["pairing"] = mat_json(v.pairing);
    vertices.push_back(std::move(jv));
  }
  j["vertices"] = vertices;
  nlohmann::json edges = nlohmann::json::array();
  for (const AcsEdge& e : acs.edges) {
    nlohmann::json je;
    je["id"] = e.id;
    je["src"] = acs.vertices[e.src].id;
    je["dst"] = acs.vertices[e.dst].id;
    je["a_plus"] = map_cols_json(e.a_plus);
    je["a_minus"] = map_cols_json(e.a_minus);
    je["x_plus"] = map_cols_json(e.x_plus);
    je["x_minus"] = map_cols_json(e.x_minus);
    edges.push_back(std::move(je));
  }
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

std::string acs_report_json(const std::vector<AcsViolation>& violations) {
  nlohmann::json j;
  j["pass"] = violations.empty();
  nlohmann::json arr = nlohmann::json::array();
  for (const AcsViolation& v : violations) {
    nlohmann::json jv;
    jv["where"] = v.where;
    jv["rule"] = v.rule;
    jv["detail"] = v.detail;
    arr.push_back(std::move(jv));
  }
  j["violations"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace qcl
