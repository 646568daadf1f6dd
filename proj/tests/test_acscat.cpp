#include <doctest.h>

#include <string>
#include <vector>

#include "cluster/acscat.hpp"
#include "cluster/errors.hpp"

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

AcsTruncation a2_acs(std::size_t depth = 1, bool quantum = false) {
  return acs_from_seed(
      build_seed({"x1", "x2"}, {"x1", "x2"}, Mat{{0, -1}, {1, 0}},
                 quantum ? std::optional<Mat>(Mat{{0, -1}, {1, 0}})
                         : std::nullopt),
      depth);
}

AcsTruncation a1_acs(std::size_t depth = 1) {
  return acs_from_seed(build_seed({"u"}, {"u"}, Mat{{0}}), depth);
}

}  // namespace

TEST_CASE("identity morphisms verify and compose to themselves") {
  for (bool quantum : {false, true}) {
    AcsTruncation acs = a2_acs(2, quantum);
    AcsMorphism id = identity_morphism(acs);
    MorphismReport r = verify_morphism(id, quantum);
    CAPTURE(quantum);
    CHECK(r.pass());
    CHECK(is_isomorphism(id));
    CHECK(morphisms_equal(compose(id, id), id));
    CHECK(morphisms_equal(inverse(id), id));
  }
}

TEST_CASE("products come with verifying projections and a unique mediator") {
  AcsTruncation a = a2_acs(1), b = a1_acs(1);
  ProductResult p = product(a, b);
  CHECK(verify_acs(p.acs).empty());
  CHECK(p.acs.vertices.size() == a.vertices.size() * b.vertices.size());
  CHECK_FALSE(p.acs.quantum);  // quantum data cannot survive projections
  CHECK(verify_morphism(p.proj1, false).pass());
  CHECK(verify_morphism(p.proj2, false).pass());
  // The mediator of the product's own cone is the identity.
  AcsMorphism med = product_mediator(p, p.proj1, p.proj2);
  CHECK(morphisms_equal(med, identity_morphism(p.acs)));
  CHECK(verify_morphism(med, false).pass());
}

TEST_CASE("coproducts come with verifying injections and a unique mediator") {
  AcsTruncation a = a2_acs(1, true), b = a2_acs(1, true);
  CoproductResult c = coproduct(a, b);
  CHECK(c.acs.quantum);  // disjoint unions stay quantum
  CHECK(verify_acs(c.acs).empty());
  CHECK(c.acs.vertices.size() == a.vertices.size() + b.vertices.size());
  CHECK(verify_morphism(c.inj1, true).pass());
  CHECK(verify_morphism(c.inj2, true).pass());
  AcsMorphism med = coproduct_mediator(c, c.inj1, c.inj2);
  CHECK(morphisms_equal(med, identity_morphism(c.acs)));
  // Injections are not isomorphisms (they miss the other summand).
  CHECK_FALSE(is_isomorphism(c.inj1));
}

TEST_CASE("initial and terminal objects behave and differ") {
  AcsTruncation a = a2_acs(1);
  AcsMorphism from_initial = initial_morphism(a);
  CHECK(verify_morphism(from_initial, false).pass());
  AcsMorphism to_terminal = terminal_morphism(a, false);
  CHECK(verify_morphism(to_terminal, false).pass());
  CHECK(initial_object().vertices.empty());
  CHECK(terminal_object().vertices.size() == 1);
  // Initial and terminal are not isomorphic: no morphism T -> 0 exists at
  // the vertex level, and the objects differ structurally.
  CHECK(initial_object().vertices.size() !=
        terminal_object().vertices.size());
}

TEST_CASE("the quantized terminal object is not terminal for quantum sources") {
  AcsTruncation q = a2_acs(1, true);
  AcsMorphism m = terminal_morphism(q, true);
  // With the quantum axioms enabled the lambda condition fails: a rank-0
  // target cannot carry the source form.
  MorphismReport strict = verify_morphism(m, true);
  CHECK_FALSE(strict.pass());
  // The same map is a perfectly good non-quantum morphism.
  CHECK(verify_morphism(m, false).pass());
}

TEST_CASE("composition respects verification") {
  AcsTruncation a = a2_acs(1, true), b = a2_acs(1, true);
  CoproductResult c = coproduct(a, b);
  AcsMorphism t = terminal_morphism(c.acs, false);
  AcsMorphism comp = compose(t, c.inj1);
  CHECK(verify_morphism(comp, false).pass());
  CHECK(morphisms_equal(comp, terminal_morphism(a, false)));
}

TEST_CASE("morphism documents round-trip with caller-supplied endpoints") {
  AcsTruncation acs = a2_acs(1);
  AcsMorphism id = identity_morphism(acs);
  std::string doc = morphism_to_json(id);
  AcsMorphism back = morphism_from_json(doc, acs, acs);
  CHECK(morphisms_equal(back, id));
  CHECK(verify_morphism(back, false).pass());
  CHECK_THROWS_AS(morphism_from_json("{}", acs, acs), BadInput);
}

TEST_CASE("broken naturality is reported with a location") {
  AcsTruncation acs = a2_acs(1);
  AcsMorphism id = identity_morphism(acs);
  // Send one chi component to zero: factorization and naturality break.
  const std::string where = acs.vertices[1].id;
  id.chi[where] = zero_map(acs.vertices[1].x_basis, acs.vertices[1].x_basis);
  MorphismReport r = verify_morphism(id, false);
  CHECK_FALSE(r.pass());
  bool located = false;
  for (const auto& v : r.violations)
    located |= v.where.find(where) != std::string::npos;
  CHECK(located);
}
