#pragma once

// Seeds (ex, B, inv, beta, lambda) and tropical mutation.
//
// A seed fixes a basis B, a set ex of mutable labels, a set inv of frozen
// labels declared invertible, the exchange map beta: Z[ex] -> Z[B]^* and an
// optional skew form lambda: Z[B]^* -> Z[B].  Conventions:
//   * <k, b>_beta = beta(k)(b); the Gram matrix with rows ex / columns B is
//     the transpose-extended exchange matrix.
//   * lambda is compatible with beta when <lambda(b*), beta(k)> = delta_{bk}
//     for all b in B, k in ex.
// Mutation at k in ex replaces k by a fresh label and transports beta and
// lambda through the tropical E/F isomorphisms; mutation is involutive up to
// the canonical relabeling and independent of the sign choice.

#include <optional>
#include <string>
#include <vector>

#include "cluster/ints.hpp"
#include "cluster/lattice.hpp"

namespace qcl {

struct Seed {
  BasisPtr basis;                   // B, primal labels, epsilon order
  BasisPtr ex_basis;                // mutable sub-basis, in basis order
  std::vector<Label> inv;           // invertible frozen labels
  LinearMap beta;                   // Z[ex] -> Z[B]^*
  std::optional<LinearMap> lambda;  // Z[B]^* -> Z[B]
};

// Structural construction: checks shapes and containments, not the seed
// axioms (use validate for those).
Seed make_seed(BasisPtr basis, std::vector<Label> ex, std::vector<Label> inv,
               LinearMap beta, std::optional<LinearMap> lambda);

struct Violation {
  std::string rule;    // stable identifier, e.g. "beta-principal-skew"
  std::string detail;  // human-readable witness
};

// Checks: principal form skew-symmetric; lambda (if present) skew-symmetric;
// compatibility on every pair (b, k); beta injective when lambda is present.
std::vector<Violation> validate(const Seed& seed);
bool is_valid(const Seed& seed);

// B-matrix with rows B / columns ex (the matrix of beta).
Mat beta_matrix(const Seed& seed);
// Gram matrix of <.,.>_beta, rows ex / columns B.
Mat beta_gram(const Seed& seed);
// Matrix of lambda, rows and columns in basis order.
Mat lambda_matrix(const Seed& seed);

// Deterministic fresh label for mutating k after the given path: base text
// suffixed with "|<step>", bumped past any collision with existing labels.
Label fresh_label(const Seed& seed, const Label& k,
                  const std::vector<Label>& path);

// The eight tropical isomorphisms attached to one mutation step.
struct MutationMaps {
  Label k;          // mutated direction (in the old basis)
  Label fresh;      // its replacement (in the new basis)
  BasisPtr old_basis, new_basis;
  LinearMap f_plus, f_minus;    // Z[B] -> Z[muB]
  LinearMap fi_plus, fi_minus;  // inverses Z[muB] -> Z[B]
  LinearMap e_plus, e_minus;    // Z[B]^* -> Z[muB]^*
  LinearMap ei_plus, ei_minus;  // inverses Z[muB]^* -> Z[B]^*
};

MutationMaps mutation_maps(const Seed& seed, const Label& k, const Label& fresh);

// beta transported to the new bases: E_+ o beta o Fi_+ on the new ex.
LinearMap mutate_beta(const Seed& seed, const MutationMaps& maps);
// lambda transported: F_+ o lambda o Ei_+.
LinearMap mutate_lambda(const Seed& seed, const MutationMaps& maps);
// The same transports through the chosen sign (mutation is sign-invariant,
// so both signs must agree; exposed for that check).
LinearMap mutate_beta_signed(const Seed& seed, const MutationMaps& maps,
                             bool plus);
LinearMap mutate_lambda_signed(const Seed& seed, const MutationMaps& maps,
                               bool plus);

struct MutationResult {
  Seed seed;
  MutationMaps maps;
};

MutationResult mutate_seed(const Seed& seed, const Label& k, const Label& fresh);
// Fresh label derived from k and the path via fresh_label.
MutationResult mutate_seed(const Seed& seed, const Label& k,
                           const std::vector<Label>& path = {});

// Mutate at k, then at the fresh label; true iff beta, lambda, ex and inv
// return to the original values under the canonical relabeling.
bool check_involution(const Seed& seed, const Label& k);

// <x, y>_X = <beta(x), y> for x, y in Z[ex].
Int x_form(const Seed& seed, const LatticeElement& x, const LatticeElement& y);
// <a, b>_A = <lambda(a), b> for a, b in Z[B]^*.
Int a_form(const Seed& seed, const LatticeElement& a, const LatticeElement& b);

// A retraction rho of beta (rho o beta = id) together with the compatible
// skew form lambda it induces.
struct Retraction {
  LinearMap rho;     // Z[B]^* -> Z[ex]
  LinearMap lambda;  // Z[B]^* -> Z[B]
};

// Solves the compatibility system over Z.  Throws NoRetraction when beta is
// not a split monomorphism, or when it is but no skew-symmetric compatible
// lambda exists (the two causes get distinct messages).
Retraction find_retraction(const Seed& seed);

struct FundamentalGroup {
  std::vector<Int> invariants;  // invariant factors of beta
  std::size_t free_rank = 0;    // rank of the free part of coker(beta)
};

FundamentalGroup fundamental_group(const Seed& seed);
// "trivial", "Z^2", "Z x Z/2 x Z/6", ...
std::string fg_str(const FundamentalGroup& g);

// Document shape: {labels, ex, inv, beta_columns, lambda_columns?, order}.
Seed seed_from_json(const std::string& text);
std::string seed_to_json(const Seed& seed);

}  // namespace qcl
