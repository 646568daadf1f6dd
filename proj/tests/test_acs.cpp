#include <doctest.h>

#include <string>
#include <vector>

#include "cluster/acs.hpp"
#include "cluster/errors.hpp"
#include "cluster/randgen.hpp"

using namespace qcl;

namespace {

Seed build_seed(std::vector<std::string> labels, std::vector<std::string> ex,
                const Mat& bmat, std::optional<Mat> lmat = std::nullopt) {
  std::vector<Label> ls, exs;
  for (auto& t : labels) ls.push_back(primal(t));
  for (auto& t : ex) exs.push_back(primal(t));
  BasisPtr basis = make_basis(ls);
  LinearMap beta = map_from_matrix(make_basis(exs), dual_basis(basis), bmat);
  std::optional<LinearMap> lambda;
  if (lmat) lambda = map_from_matrix(dual_basis(basis), basis, *lmat);
  return make_seed(basis, exs, {}, std::move(beta), std::move(lambda));
}

Seed a2(bool quantum) {
  return build_seed({"x1", "x2"}, {"x1", "x2"}, Mat{{0, -1}, {1, 0}},
                    quantum ? std::optional<Mat>(Mat{{0, -1}, {1, 0}})
                            : std::nullopt);
}

// A3 chain with its first vertex frozen: a non-trivial pairing radical.
Seed frozen_chain() {
  return build_seed({"y1", "y2", "y3"}, {"y2", "y3"},
                    Mat{{-1, 0}, {0, -1}, {1, 0}});
}

}  // namespace

TEST_CASE("the depth-2 truncation of A2 is the bi-directed path tree") {
  AcsTruncation acs = acs_from_seed(a2(false), 2);
  CHECK(acs.vertices.size() == 5);
  CHECK(acs.edges.size() == 8);  // four tree edges, both directions
  CHECK(acs.root == "()");
  CHECK_FALSE(acs.quantum);
  CHECK(acs.vertex_index("()") == 0);
  CHECK_THROWS_AS(acs.vertex_index("(bogus)"), BadInput);
  CHECK(acs.vertex("(x1)").a_basis->rank() == 2);
  CHECK(verify_acs(acs).empty());
}

TEST_CASE("quantum truncations carry lambda and still verify") {
  AcsTruncation acs = acs_from_seed(a2(true), 2);
  CHECK(acs.quantum);
  for (const AcsVertex& v : acs.vertices) CHECK(v.lambda.has_value());
  CHECK(verify_acs(acs).empty());
}

TEST_CASE("tampered edge maps are caught by the axiom suite") {
  AcsTruncation acs = acs_from_seed(a2(false), 1);
  REQUIRE_FALSE(acs.edges.empty());
  std::swap(acs.edges[0].a_plus, acs.edges[0].a_minus);
  CHECK_FALSE(verify_acs(acs).empty());
}

TEST_CASE("classification of a full mutable truncation") {
  AcsTruncation acs = acs_from_seed(a2(false), 2);
  RankReport r = classify(acs);
  CHECK(r.constant_rank);
  CHECK(r.total_rank == 2);
  CHECK(r.mutable_rank == 2);
  CHECK(r.frozen_rank == 0);
  CHECK(r.weakly_connected);
  CHECK(r.strongly_connected);
  CHECK(r.bi_directed);
  CHECK(r.rootable);
  CHECK(r.per_vertex.size() == 5);
}

TEST_CASE("frozen directions appear as pairing corank") {
  AcsTruncation acs = acs_from_seed(frozen_chain(), 2);
  CHECK(verify_acs(acs).empty());
  RankReport r = classify(acs);
  CHECK(r.total_rank == 3);
  CHECK(r.mutable_rank == 2);
  CHECK(r.frozen_rank == 1);
}

TEST_CASE("the principal part quotients away the pairing radical") {
  AcsTruncation acs = acs_from_seed(frozen_chain(), 2);
  AcsTruncation p = principal_part(acs);
  CHECK(verify_acs(p).empty());
  RankReport r = classify(p);
  CHECK(r.total_rank == 2);
  CHECK(r.frozen_rank == 0);
  CHECK(p.vertices.size() == acs.vertices.size());
  // Idempotent: a second application returns the input unchanged.
  CHECK(acs_to_json(principal_part(p)) == acs_to_json(p));
  // X-side data is untouched.
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    CHECK(same_basis(p.vertices[i].x_basis, acs.vertices[i].x_basis));
}

TEST_CASE("skew reports agree between a truncation and its principal part") {
  for (const Seed& seed : {a2(false), frozen_chain()}) {
    AcsTruncation acs = acs_from_seed(seed, 1);
    SkewReport s = skew_symmetrizable_report(acs, "()");
    CHECK(s.x_form_skew);
    CHECK(s.principal_x_form_skew == s.x_form_skew);
    CHECK(s.delta_beta_skew == s.principal_delta_beta_skew);
  }
}

TEST_CASE("a seed survives the round trip through its truncation") {
  for (bool quantum : {false, true}) {
    Seed seed = a2(quantum);
    AcsTruncation acs = acs_from_seed(seed, 2);
    Seed back = seed_from_acs(acs, "()");
    CAPTURE(quantum);
    CHECK(map_equal(back.beta, seed.beta));
    CHECK(same_basis(back.basis, seed.basis));
    CHECK(back.lambda.has_value() == quantum);
    if (quantum) CHECK(map_equal(*back.lambda, *seed.lambda));
  }
  // Non-root vertices are seeds of the mutated cluster.
  AcsTruncation acs = acs_from_seed(a2(false), 1);
  Seed mutated = seed_from_acs(acs, "(x1)");
  CHECK(validate(mutated).empty());
  CHECK(mutated.basis->contains(primal("x2")));
  CHECK_FALSE(mutated.basis->contains(primal("x1")));
}

TEST_CASE("truncation documents round-trip through JSON") {
  AcsTruncation acs = acs_from_seed(a2(true), 2);
  AcsTruncation back = acs_from_json(acs_to_json(acs));
  CHECK(back.vertices.size() == acs.vertices.size());
  CHECK(back.edges.size() == acs.edges.size());
  CHECK(back.quantum == acs.quantum);
  CHECK(back.root == acs.root);
  CHECK(verify_acs(back).empty());
  CHECK(acs_to_json(back) == acs_to_json(acs));
  CHECK_THROWS_AS(acs_from_json("[]"), BadInput);
}

TEST_CASE("random seeds produce verifying truncations") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    RandomSeedOptions o;
    o.mutable_rank = 3;
    o.extra_frozen = s % 2;
    o.max_entry = 2;
    o.with_frozen = true;
    o.quantum = (s % 3 == 0);
    o.rng_seed = 3000 + s;
    Seed seed = random_seed(o);
    AcsTruncation acs = acs_from_seed(seed, 2);
    CAPTURE(s);
    CHECK(verify_acs(acs).empty());
  }
}
