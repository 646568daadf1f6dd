#pragma once

// The category layer over truncations: morphisms (F, chi, alpha) with
// first-class edge contraction, composition, isomorphism testing, finite
// products and coproducts, and the initial/terminal objects.
//
// A morphism carries a vertex map F_obj, an edge map F_edge sending each
// source edge to a path of target edges (the empty path contracts the edge
// to an identity), and per-vertex components
//     chi_c : X_src(c) -> X_dst(Fc),   alpha_c : A_src(c) -> A_dst(Fc)
// subject to naturality over every signed edge, alpha o beta_1 = beta_2 o chi
// at every vertex, and in the quantum case lambda_1 = alpha^* o lambda_2 o alpha.

#include <map>
#include <string>
#include <vector>

#include "cluster/acs.hpp"

namespace qcl {

struct AcsMorphism {
  AcsTruncation src, dst;
  std::map<std::string, std::string> f_obj;               // vertex -> vertex
  std::map<std::string, std::vector<std::string>> f_edge; // edge -> path ([] = contract)
  std::map<std::string, LinearMap> chi;                   // vertex -> X component
  std::map<std::string, LinearMap> alpha;                 // vertex -> A component
};

struct MorphismReport {
  std::vector<AcsViolation> violations;
  std::vector<AcsViolation> notes;  // informational only, never failures
  bool pass() const { return violations.empty(); }
};

AcsMorphism identity_morphism(const AcsTruncation& acs);

// Checks functoriality of (F_obj, F_edge), both naturality squares per signed
// edge, the factorization condition per vertex and, when `quantum`, the
// lambda condition plus the derived pairing identity.  In non-quantum mode
// the pairing identity is reported under `notes` only.
MorphismReport verify_morphism(const AcsMorphism& m, bool quantum);

// g o f (apply f first); endpoints must agree structurally.
AcsMorphism compose(const AcsMorphism& g, const AcsMorphism& f);

// F bijective on vertices and edges (single-edge paths) and every chi/alpha
// unimodular.
bool is_isomorphism(const AcsMorphism& m);
// Componentwise inverse; throws BadInput when not an isomorphism.
AcsMorphism inverse(const AcsMorphism& m);

// Same endpoints, same vertex map, equal components, and for every source
// edge the composite image maps agree (paths may differ as sequences).
bool morphisms_equal(const AcsMorphism& a, const AcsMorphism& b);

// Categorical product in ACS: vertex pairs, edges changing one coordinate,
// direct-sum lattices (labels tagged ".1"/".2"); quantum data is dropped
// (projections cannot satisfy the lambda condition).
struct ProductResult {
  AcsTruncation acs;
  AcsMorphism proj1, proj2;
};
ProductResult product(const AcsTruncation& a1, const AcsTruncation& a2);
// The unique mediator T -> a1 x a2 of a cone (f1 : T -> a1, f2 : T -> a2).
AcsMorphism product_mediator(const ProductResult& p, const AcsMorphism& f1,
                             const AcsMorphism& f2);

// Coproduct (disjoint union, ids prefixed "1:"/"2:"): valid in the quantum
// category as well, injections have identity components.
struct CoproductResult {
  AcsTruncation acs;
  AcsMorphism inj1, inj2;
};
CoproductResult coproduct(const AcsTruncation& a1, const AcsTruncation& a2);
AcsMorphism coproduct_mediator(const CoproductResult& c, const AcsMorphism& g1,
                               const AcsMorphism& g2);

// Initial object: the empty truncation.  Terminal object: one vertex with
// zero lattices; its quantized variant carries the (zero) lambda and is NOT
// terminal among quantum structures — morphisms into it fail the lambda
// condition whenever the source lambda is non-zero.
AcsTruncation initial_object();
AcsTruncation terminal_object();
AcsTruncation quantized_terminal_object();
AcsMorphism initial_morphism(const AcsTruncation& to);
AcsMorphism terminal_morphism(const AcsTruncation& from, bool quantized = false);

// Document shape: {f_obj, f_edge (arrays or "contract"), chi, alpha} with
// positional matrices per vertex; endpoints are supplied by the caller.
AcsMorphism morphism_from_json(const std::string& text,
                               const AcsTruncation& src,
                               const AcsTruncation& dst);
std::string morphism_to_json(const AcsMorphism& m);

}  // namespace qcl
