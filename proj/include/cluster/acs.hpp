#pragma once

// Abstract (quantum) cluster structures as finite truncations.
//
// A truncation is a directed graph whose vertices carry lattices X, A, a map
// beta: X -> A, a pairing <.,.>: A x X -> Z (rows A, columns X) and, in the
// quantum case, a skew form lambda: A -> A^*.  Each directed edge carries
// two covariant A-maps (one per sign) and two contravariant X-maps
//     a_s : A_src -> A_dst,   x_s : X_dst -> X_src,
// subject to the digon relations (opposite edges compose to identities with
// opposite signs), the factorization beta_dst = a_s o beta_src o x_s, and
// adjointness <a, x_s(x)>_src = <a_s(a), x>_dst.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cluster/seed.hpp"

namespace qcl {

struct AcsVertex {
  std::string id;
  BasisPtr x_basis, a_basis;
  LinearMap beta;                   // X -> A
  std::optional<LinearMap> lambda;  // A -> A^*
  Mat pairing;                      // rows A, cols X
};

struct AcsEdge {
  std::string id;
  std::size_t src = 0, dst = 0;     // indices into vertices
  LinearMap a_plus, a_minus;        // A_src -> A_dst
  LinearMap x_plus, x_minus;        // X_dst -> X_src
};

struct AcsTruncation {
  std::vector<AcsVertex> vertices;
  std::vector<AcsEdge> edges;
  bool quantum = false;
  std::vector<Label> inv;  // invertible frozen labels (for seed round-trips)
  std::string root;        // vertex id of the originating seed, if any

  std::size_t vertex_index(const std::string& id) const;
  const AcsVertex& vertex(const std::string& id) const;
  const AcsEdge& edge(const std::string& id) const;
};

// Bi-directed exchange tree truncated to `depth`: vertices are admissible
// sequences (no immediate backtracks), every tree edge appears in both
// directions with the reverse maps set to the inverses (signs swapped).
AcsTruncation acs_from_seed(const Seed& seed, std::size_t depth);

struct AcsViolation {
  std::string where;  // vertex or edge id
  std::string rule;   // "digon", "factorization", "adjointness", ...
  std::string detail;
};

// Full axiom suite: digon relations, factorization squares (both signs),
// adjointness, right non-degeneracy, and in the quantum case the lambda
// factorization squares plus the per-vertex compatibility conditions
// (form identity, lambda^* o beta = delta_X, beta^* o lambda = delta_A,
// split-monomorphism of beta).
std::vector<AcsViolation> verify_acs(const AcsTruncation& acs);

// Quotient of every A-lattice by the left radical of the pairing (computed
// via Smith normal form; quotients get synthetic labels "p1", "p2", ...).
// Drops lambda unless every radical is already trivial, in which case the
// input is returned unchanged (making the operation idempotent).
AcsTruncation principal_part(const AcsTruncation& acs);

struct SkewReport {
  bool x_form_skew = false;            // <beta(x), y> skew at the vertex
  bool principal_x_form_skew = false;  // same check in the principal part
  bool delta_beta_skew = false;        // delta_A o beta skew-symmetric
  bool principal_delta_beta_skew = false;
};

SkewReport skew_symmetrizable_report(const AcsTruncation& acs,
                                     const std::string& vertex_id);

struct RankReport {
  struct VertexRank {
    std::string id;
    std::size_t a_rank = 0, x_rank = 0;
  };
  std::vector<VertexRank> per_vertex;
  bool constant_rank = false;
  std::size_t total_rank = 0, mutable_rank = 0, frozen_rank = 0;
  bool weakly_connected = false, strongly_connected = false;
  bool bi_directed = false, rootable = false;
  std::string root;  // a vertex that reaches every other, when rootable
};

RankReport classify(const AcsTruncation& acs);

// Rebuild a seed from a vertex whose pairing columns are distinct standard
// basis vectors (seed-adapted); throws BadInput otherwise, or when quantum
// data is requested but lambda is absent.
Seed seed_from_acs(const AcsTruncation& acs, const std::string& vertex_id);

AcsTruncation acs_from_json(const std::string& text);
std::string acs_to_json(const AcsTruncation& acs);
std::string acs_report_json(const std::vector<AcsViolation>& violations);

}  // namespace qcl
