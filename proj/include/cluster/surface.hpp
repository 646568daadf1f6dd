#pragma once

// Polygon surface model: triangulations of a disk with n marked boundary
// points, quadrilaterals, the boundary map beta, flips, and the extraction
// of an abstract cluster structure from the (finite, bi-directed) flip graph.
//
// Orientation is fixed anticlockwise with marked points 1..n in boundary
// order.  For a triangle with vertices a < b < c the anticlockwise boundary
// is a -> b -> c -> a, and the edge following the diagonal in that cyclic
// order is the "+" edge of its triangle:
//     beta(q) = (q_{o,+} + q_{*,+}) - (q_{o,-} + q_{*,-}).

#include <string>
#include <vector>

#include "cluster/acs.hpp"
#include "cluster/acscat.hpp"
#include "cluster/seed.hpp"

namespace qcl {

// Unordered pair of marked points, stored with a < b.
struct Arc {
  int a = 0, b = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

Arc make_arc(int i, int j, int n);
bool arc_is_boundary(const Arc& arc, int n);
// Strict interior crossing; arcs sharing an endpoint never cross.
bool arcs_cross(const Arc& x, const Arc& y);
std::string arc_str(const Arc& arc);  // "{1,3}"

struct Triangulation {
  int n = 0;
  std::vector<Arc> diagonals;  // sorted, pairwise non-crossing, n-3 of them
};

std::string tri_str(const Triangulation& t);
// Non-crossing, maximal, all chords valid.
bool tri_valid(const Triangulation& t);
// The n boundary arcs in cyclic order ({1,2}, ..., {n-1,n}, {1,n}).
std::vector<Arc> boundary_arcs(int n);
// Boundary arcs first (cyclic order), then the diagonals (sorted).
std::vector<Arc> all_arcs(const Triangulation& t);
Triangulation fan_triangulation(int n);

// All triangulations of the n-gon (4 <= n <= 12); the count is the Catalan
// number C_{n-2}.
std::vector<Triangulation> enumerate_triangulations(int n);

// The two triangles adjacent to a diagonal, with their edges split by sign
// according to the orientation; "o" is the triangle with the smaller apex.
struct Quadrilateral {
  Arc diagonal;
  Arc circ_plus, circ_minus;      // q_{o,+}, q_{o,-}
  Arc bullet_plus, bullet_minus;  // q_{*,+}, q_{*,-}
};

Quadrilateral quadrilateral_of(const Triangulation& t, const Arc& d);

// The unique distinct arc completing the quadrilateral of d.
Arc flipped_arc(const Triangulation& t, const Arc& d);
Triangulation flip(const Triangulation& t, const Arc& d);

// Lattice labels: arc {i,j} -> "a<i>_<j>", its quadrilateral -> "q<i>_<j>".
Label arc_label(const Arc& arc);
Label quad_label(const Arc& diagonal);

// Z[Q(t)] -> Z[A(t)], the signed sum of quadrilateral edges.
LinearMap beta_from_triangulation(const Triangulation& t);

// The tropical mutation attached to one flip, in arc coordinates:
// a_s : Z[A(t)] -> Z[A(t')] fixes every shared arc and sends the flipped
// diagonal to [beta_t(q_d)]_s - d'; x_s : Z[Q(t')] -> Z[Q(t)] is the inverse
// transport on quadrilaterals.  beta(flip(t, d)) = a_s o beta_t o x_s.
struct FlipMaps {
  Arc diagonal, replacement;
  LinearMap a_plus, a_minus;
  LinearMap x_plus, x_minus;
};

FlipMaps mutate_quadrilaterals(const Triangulation& t, const Arc& d);

// The full flip graph as a bi-directed ACS: A c = Z[arcs], X c = Z[quads],
// <a, q> = delta_{a, diag(q)}; boundary arcs are the invertible coefficients.
// 4 <= n <= 10.
AcsTruncation acs_from_polygon(int n);

// The Gr(2,6) Pluecker seed at the fan triangulation: mutable x13, x14, x15,
// frozen boundary coordinates x12, x23, x34, x45, x56, x16.
Seed gr26_seed();

// The hexagon flip-graph ACS, the folded exchange "graph" ACS of gr26_seed
// (vertices keyed by the matching triangulation), and the arc <-> Pluecker
// label isomorphism between them.
struct HexagonGr26 {
  AcsTruncation surface;
  AcsTruncation cluster;
  AcsMorphism iso;  // surface -> cluster
};

HexagonGr26 hexagon_gr26_isomorphism();

}  // namespace qcl
