#include <doctest.h>

#include <set>
#include <vector>

#include "cluster/errors.hpp"
#include "cluster/surface.hpp"

using namespace qcl;

TEST_CASE("arcs normalize, classify and cross correctly") {
  Arc a = make_arc(5, 2, 6);
  CHECK(a.a == 2);
  CHECK(a.b == 5);
  CHECK(arc_str(a) == "{2,5}");
  CHECK(arc_is_boundary(make_arc(1, 2, 6), 6));
  CHECK(arc_is_boundary(make_arc(1, 6, 6), 6));  // the wrap-around edge
  CHECK_FALSE(arc_is_boundary(make_arc(1, 3, 6), 6));

  CHECK(arcs_cross(make_arc(1, 3, 6), make_arc(2, 4, 6)));
  CHECK_FALSE(arcs_cross(make_arc(1, 3, 6), make_arc(3, 5, 6)));  // shared end
  CHECK_FALSE(arcs_cross(make_arc(1, 3, 6), make_arc(4, 6, 6)));  // nested apart
  CHECK(arcs_cross(make_arc(2, 6, 6), make_arc(1, 4, 6)));
  CHECK_THROWS_AS(make_arc(1, 1, 6), BadInput);
}

TEST_CASE("triangulation counts are the Catalan numbers") {
  const std::size_t catalan[] = {2, 5, 14, 42, 132};
  for (int n = 4; n <= 8; ++n) {
    auto all = enumerate_triangulations(n);
    CHECK(all.size() == catalan[n - 4]);
    for (const Triangulation& t : all) {
      CHECK(t.n == n);
      CHECK(t.diagonals.size() == static_cast<std::size_t>(n - 3));
      CHECK(tri_valid(t));
    }
    // No duplicates.
    std::set<std::string> keys;
    for (const Triangulation& t : all) keys.insert(tri_str(t));
    CHECK(keys.size() == all.size());
  }
  CHECK_THROWS_AS(enumerate_triangulations(3), BadInput);
}

TEST_CASE("the fan triangulation and its arcs") {
  Triangulation fan = fan_triangulation(6);
  CHECK(tri_valid(fan));
  CHECK(fan.diagonals ==
        std::vector<Arc>{make_arc(1, 3, 6), make_arc(1, 4, 6),
                         make_arc(1, 5, 6)});
  auto arcs = all_arcs(fan);
  CHECK(arcs.size() == 9);  // 6 boundary + 3 diagonals
  CHECK(arcs.front() == make_arc(1, 2, 6));
  CHECK(boundary_arcs(6).size() == 6);
}

TEST_CASE("flips replace one diagonal and are involutive") {
  Triangulation fan = fan_triangulation(6);
  for (const Arc& d : fan.diagonals) {
    Arc e = flipped_arc(fan, d);
    CHECK(e != d);
    Triangulation t2 = flip(fan, d);
    CHECK(tri_valid(t2));
    CHECK(flipped_arc(t2, e) == d);
    CHECK(tri_str(flip(t2, e)) == tri_str(fan));
  }
  // Flipping {1,3} in the square fan gives the other triangulation.
  Triangulation sq = fan_triangulation(4);
  CHECK(flipped_arc(sq, make_arc(1, 3, 4)) == make_arc(2, 4, 4));
}

TEST_CASE("the quadrilateral boundary map follows the orientation rule") {
  // Square, diagonal {1,3}: triangles (1,2,3) and (1,3,4).
  Triangulation sq = fan_triangulation(4);
  Quadrilateral q = quadrilateral_of(sq, make_arc(1, 3, 4));
  CHECK(q.diagonal == make_arc(1, 3, 4));
  CHECK(q.circ_plus == make_arc(1, 2, 4));
  CHECK(q.circ_minus == make_arc(2, 3, 4));
  CHECK(q.bullet_plus == make_arc(3, 4, 4));
  CHECK(q.bullet_minus == make_arc(1, 4, 4));

  LinearMap beta = beta_from_triangulation(sq);
  LatticeElement col = beta.columns.at(quad_label(make_arc(1, 3, 4)));
  CHECK(lat_coeff(col, arc_label(make_arc(1, 2, 4))) == 1);
  CHECK(lat_coeff(col, arc_label(make_arc(3, 4, 4))) == 1);
  CHECK(lat_coeff(col, arc_label(make_arc(2, 3, 4))) == -1);
  CHECK(lat_coeff(col, arc_label(make_arc(1, 4, 4))) == -1);
}

TEST_CASE("flip transport factors the new boundary map") {
  for (int n : {5, 6}) {
    for (const Triangulation& t : enumerate_triangulations(n)) {
      for (const Arc& d : t.diagonals) {
        Triangulation t2 = flip(t, d);
        FlipMaps maps = mutate_quadrilaterals(t, d);
        LinearMap b1 = beta_from_triangulation(t);
        LinearMap b2 = beta_from_triangulation(t2);
        CAPTURE(tri_str(t));
        CAPTURE(arc_str(d));
        // beta' = a_s o beta o x_s for both signs.
        CHECK(map_equal(b2, map_compose(maps.a_plus,
                                        map_compose(b1, maps.x_plus))));
        CHECK(map_equal(b2, map_compose(maps.a_minus,
                                        map_compose(b1, maps.x_minus))));
      }
    }
  }
}

TEST_CASE("polygon flip graphs satisfy the full axiom suite") {
  AcsTruncation acs = acs_from_polygon(5);
  CHECK(acs.vertices.size() == 5);
  CHECK(acs.edges.size() == 2 * 5);  // pentagon cycle, both directions
  CHECK(verify_acs(acs).empty());
  RankReport r = classify(acs);
  CHECK(r.total_rank == 7);    // 5 boundary + 2 diagonals
  CHECK(r.mutable_rank == 2);
  CHECK(r.frozen_rank == 5);
  CHECK(r.bi_directed);
  CHECK(r.strongly_connected);
  CHECK_THROWS_AS(acs_from_polygon(3), BadInput);
}

TEST_CASE("the hexagon flip graph has fourteen triangulations") {
  AcsTruncation acs = acs_from_polygon(6);
  CHECK(acs.vertices.size() == 14);
  CHECK(verify_acs(acs).empty());
}

TEST_CASE("the Pluecker seed of Gr(2,6)") {
  Seed seed = gr26_seed();
  CHECK(validate(seed).empty());
  CHECK(seed.ex_basis->rank() == 3);
  CHECK(seed.basis->rank() == 9);
  CHECK(seed.inv.size() == 6);  // boundary coordinates are invertible
  CHECK(seed.basis->contains(primal("x13")));
  CHECK(seed.basis->contains(primal("x16")));
}

TEST_CASE("the hexagon flip graph is the Gr(2,6) exchange graph") {
  HexagonGr26 h = hexagon_gr26_isomorphism();
  CHECK(h.surface.vertices.size() == 14);
  CHECK(h.cluster.vertices.size() == 14);
  CHECK(verify_acs(h.surface).empty());
  CHECK(verify_acs(h.cluster).empty());
  MorphismReport r = verify_morphism(h.iso, false);
  CHECK(r.pass());
  CHECK(is_isomorphism(h.iso));
}
