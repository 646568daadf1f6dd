#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cluster/engine.hpp"
#include "cluster/errors.hpp"
#include "cluster/randgen.hpp"

using namespace qcl;

namespace {

Seed a2(bool quantum) {
  BasisPtr basis = make_basis({primal("x1"), primal("x2")});
  LinearMap beta =
      map_from_matrix(basis, dual_basis(basis), Mat{{0, -1}, {1, 0}});
  std::optional<LinearMap> lambda;
  if (quantum)
    lambda = map_from_matrix(dual_basis(basis), basis, Mat{{0, -1}, {1, 0}});
  return make_seed(basis, {primal("x1"), primal("x2")}, {}, std::move(beta),
                   std::move(lambda));
}

Seed kronecker() {
  BasisPtr basis = make_basis({primal("x1"), primal("x2")});
  LinearMap beta =
      map_from_matrix(basis, dual_basis(basis), Mat{{0, 2}, {-2, 0}});
  return make_seed(basis, {primal("x1"), primal("x2")}, {}, std::move(beta),
                   std::nullopt);
}

// The five cluster variables of commutative A2, as exponent supports over
// the initial dual basis (x1*, x2*):
//   x1, x2, (1+x2)/x1, (1+x1)/x2, (1+x1+x2)/(x1 x2).
std::vector<QLaurent> a2_variable_oracle(const TorusPtr& ctx) {
  auto sum = [&](std::vector<Exp> exps) {
    QLaurent f = ql_zero(ctx);
    for (auto& e : exps) f = ql_add(f, ql_monomial(ctx, e, qc_int(1)));
    return f;
  };
  return {sum({{1, 0}}),
          sum({{0, 1}}),
          sum({{-1, 0}, {-1, 1}}),
          sum({{0, -1}, {1, -1}}),
          sum({{-1, -1}, {-1, 0}, {0, -1}})};
}

bool same_variable_set(const std::vector<QLaurent>& got,
                       const std::vector<QLaurent>& want) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(want.size(), false);
  for (const QLaurent& g : got) {
    bool hit = false;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (used[i]) continue;
      if (ql_equal(specialize_commutative(g), specialize_commutative(want[i]))) {
        used[i] = true;
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the root frame is the canonical toric frame") {
  Seed seed = a2(true);
  Frame root = root_frame(seed);
  CHECK(root.path.empty());
  CHECK(path_str(root.path) == "()");
  for (const Label& b : seed.basis->labels()) {
    const QLaurent& var = root.vars.at(dual_of(b));
    CHECK(ql_term_count(var) == 1);
    CHECK(ql_equal(var, ql_from_lattice(root.initial,
                                        lat_unit(root.initial->basis,
                                                 dual_of(b)))));
  }
  // Quantum A2: <x1*, x2*> = 1 in the initial torus.
  CHECK(root.current_gram == Mat{{0, 1}, {-1, 0}});
}

TEST_CASE("one mutation produces the classical exchange") {
  Seed seed = a2(false);
  Frame root = root_frame(seed);
  Frame next = mutate_frame(root, primal("x1"));
  CHECK(path_str(next.path) == "(x1)");
  REQUIRE(next.arrived_by.has_value());
  // The new variable is (1 + x2)/x1.
  const QLaurent& fresh = next.vars.at(dual_of(*next.arrived_by));
  QLaurent expect = ql_add(
      ql_monomial(root.initial, Exp{-1, 0}, qc_int(1)),
      ql_monomial(root.initial, Exp{-1, 1}, qc_int(1)));
  CHECK(ql_equal(fresh, expect));
  // The untouched variable is carried over.
  CHECK(ql_equal(next.vars.at(dual_of(primal("x2"))),
                 root.vars.at(dual_of(primal("x2")))));
}

TEST_CASE("frame mutation is involutive") {
  for (bool quantum : {false, true}) {
    Seed seed = a2(quantum);
    Frame root = root_frame(seed);
    Frame once = mutate_frame(root, primal("x1"));
    Frame twice = mutate_frame(once, *once.arrived_by);
    CAPTURE(quantum);
    CHECK(frames_equal_positionally(twice, root));
    CHECK(canonical_key(twice) == canonical_key(root));
  }
}

TEST_CASE("commutative A2 folds to the pentagon") {
  ExploreOptions o;
  o.max_depth = 8;
  o.fold = true;
  ExchangeGraph g = explore(a2(false), o);
  CHECK(g.nodes.size() == 5);
  CHECK(g.closed);
  CHECK(g.complete);
  CHECK(g.failures.empty());
  std::size_t edges = 0;
  for (const GraphNode& n : g.nodes) {
    CHECK(n.edges.size() == 2);  // the pentagon is 2-regular
    edges += n.edges.size();
    for (const auto& [k, target] : n.edges) CHECK(target != n.id);
  }
  CHECK(edges == 10);

  VariableReport vars = collect_variables(g);
  CHECK(vars.frozen_vars.empty());
  Frame root = root_frame(a2(false));
  CHECK(same_variable_set(vars.mutable_vars, a2_variable_oracle(root.initial)));
}

TEST_CASE("quantum A2 folds to the same pentagon") {
  ExploreOptions o;
  o.max_depth = 8;
  o.fold = true;
  ExchangeGraph g = explore(a2(true), o);
  CHECK(g.nodes.size() == 5);
  CHECK(g.closed);
  CHECK(g.failures.empty());
  VariableReport vars = collect_variables(g);
  REQUIRE(vars.mutable_vars.size() == 5);
  // Specializing s -> 1 lands exactly on the commutative variables.
  Frame root = root_frame(a2(false));
  CHECK(same_variable_set(vars.mutable_vars, a2_variable_oracle(root.initial)));
}

TEST_CASE("specialization commutes with mutation step by step") {
  Seed q = a2(true), c = a2(false);
  std::vector<std::vector<Label>> paths{
      {primal("x1")}, {primal("x2")}, {primal("x1"), primal("x2")}};
  for (const auto& path : paths) {
    Frame fq = root_frame(q), fc = root_frame(c);
    for (const Label& k0 : path) {
      // The quantum frame renames mutated directions the same way.
      Label k = k0;
      fq = mutate_frame(fq, k);
      fc = mutate_frame(fc, k);
    }
    REQUIRE(fq.vars.size() == fc.vars.size());
    auto qi = fq.vars.begin();
    auto ci = fc.vars.begin();
    for (; qi != fq.vars.end(); ++qi, ++ci) {
      CHECK(qi->first == ci->first);
      CHECK(ql_equal(specialize_commutative(qi->second), ci->second));
    }
  }
}

TEST_CASE("the Kronecker quiver grows a line of clusters") {
  ExploreOptions o;
  o.max_depth = 5;
  o.fold = true;
  ExchangeGraph g = explore(kronecker(), o);
  CHECK(g.nodes.size() == 11);  // 1 + 2 per depth level
  CHECK_FALSE(g.closed);
  CHECK(g.complete);
  CHECK(g.failures.empty());
  // Every variable is a Laurent polynomial with positive coefficients here.
  VariableReport vars = collect_variables(g);
  CHECK(vars.mutable_vars.size() == 12);  // 2 + 2 new per expanded level
}

TEST_CASE("exploration respects the node budget") {
  ExploreOptions o;
  o.max_depth = 20;
  o.fold = false;
  o.max_nodes = 30;
  ExchangeGraph g = explore(kronecker(), o);
  CHECK(g.nodes.size() <= 30);
  CHECK_FALSE(g.complete);
  CHECK_FALSE(g.closed);
}

TEST_CASE("tree exploration skips backtracking only") {
  ExploreOptions o;
  o.max_depth = 3;
  o.fold = false;
  ExchangeGraph g = explore(a2(false), o);
  // Tree nodes: 1 + 2 + 2 + 2 (each non-root has one forward direction).
  CHECK(g.nodes.size() == 7);
  CHECK_FALSE(g.folded);
}

TEST_CASE("parallel exploration is deterministic") {
  ExploreOptions serial;
  serial.max_depth = 6;
  serial.fold = true;
  ExploreOptions parallel = serial;
  parallel.jobs = 4;
  ExchangeGraph a = explore(a2(true), serial);
  ExchangeGraph b = explore(a2(true), parallel);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].key == b.nodes[i].key);
    CHECK(a.nodes[i].edges == b.nodes[i].edges);
  }
}

TEST_CASE("verification suites pass on known and random seeds") {
  CHECK(verify_laurent(a2(true), 8).pass);
  CHECK(verify_laurent(kronecker(), 6).pass);
  CHECK(verify_involution(a2(true)).pass);
  CHECK(verify_signs(a2(true)).pass);
  CHECK(verify_compat(a2(true)).pass);
  for (std::uint64_t s = 0; s < 5; ++s) {
    RandomSeedOptions o;
    o.mutable_rank = 3;
    o.max_entry = 1;
    o.quantum = true;
    o.rng_seed = 2000 + s;
    Seed seed = random_seed(o);
    CAPTURE(s);
    CHECK(verify_involution(seed).pass);
    CHECK(verify_signs(seed).pass);
    CHECK(verify_compat(seed).pass);
    CHECK(verify_laurent(seed, 4).pass);
  }
}

TEST_CASE("graph exports carry the structure") {
  ExploreOptions o;
  o.max_depth = 8;
  o.fold = true;
  ExchangeGraph g = explore(a2(false), o);
  std::string dot = graph_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("n0") != std::string::npos);
  CHECK(dot.find("n4") != std::string::npos);
  std::string gj = graph_json(g);
  CHECK(gj.find("\"closed\": true") != std::string::npos);
  std::string vj = variables_json(g);
  CHECK(vj.find("mutable") != std::string::npos);
}
