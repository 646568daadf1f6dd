#pragma once

// Toric frames, quantum cluster-variable mutation, and exchange-tree
// exploration with optional folding into the exchange graph.
//
// A frame assigns to each current dual label a cluster variable expressed in
// the INITIAL quantum torus (the canonical toric frame maps b* to x^{b*}).
// Mutation at k produces the fresh variable
//     X' = M([beta_c(k)]_+ - k*) + M([beta_c(k)]_- - k*)
// and evaluation M(.) works through ordered monomials and exact division, so
// a division failure is precisely a Laurent-phenomenon violation.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cluster/qtorus.hpp"
#include "cluster/seed.hpp"

namespace qcl {

struct Frame {
  Seed seed;                         // current cluster data
  TorusPtr initial;                  // the fixed ambient quantum torus
  std::map<Label, QLaurent> vars;    // current dual label -> variable
  Mat current_gram;                  // <b*,c*>_{lambda_c} in current order
  std::vector<Label> path;           // directions mutated so far, oldest first
  std::optional<Label> arrived_by;   // fresh label created by the last step
};

Frame root_frame(const Seed& seed);

// "(k_r,...,k_1)" latest-first; "()" for the root.
std::string path_str(const std::vector<Label>& path);

// M(w) for w over the current dual basis: w with non-negative coordinates,
// or w = N - k* with N non-negative and N(k*) = 0.  Throws NotDivisible on a
// Laurent violation and BadInput on unsupported exponent shapes.
QLaurent frame_eval(const Frame& frame, const LatticeElement& w);

Frame mutate_frame(const Frame& frame, const Label& k);

// True when the two frames carry the same variables position-by-position
// (bases may differ by relabeling).
bool frames_equal_positionally(const Frame& a, const Frame& b);

// Fingerprint of (variable multiset, beta Gram, lambda Gram) invariant under
// relabeling; frames with equal keys are the same cluster.
std::string canonical_key(const Frame& frame);
// The label order the key sorting induces (ties resolved deterministically).
std::vector<Label> canonical_order(const Frame& frame);

struct LaurentFailure {
  std::vector<Label> path;  // node where mutation was attempted
  Label direction;
  std::string message;
};

struct GraphNode {
  std::size_t id = 0;
  Frame frame;
  std::string key;                                  // empty when not folding
  std::vector<std::pair<Label, std::size_t>> edges; // direction -> target node
};

struct ExchangeGraph {
  std::vector<GraphNode> nodes;
  bool folded = false;
  bool closed = false;    // no unexplored frontier remained
  bool complete = true;   // false when a resource limit was hit
  std::vector<LaurentFailure> failures;
};

struct ExploreOptions {
  std::size_t max_depth = 6;
  bool fold = true;
  std::size_t jobs = 1;
  std::size_t max_nodes = 100000;
};

// Breadth-first exploration; deterministic for any jobs value.  Without
// folding the immediate backtrack direction is skipped (tree semantics).
ExchangeGraph explore(const Seed& seed, const ExploreOptions& options);

struct VariableReport {
  std::vector<QLaurent> mutable_vars;                    // deduplicated
  std::vector<std::pair<QLaurent, bool>> frozen_vars;    // flag: invertible
};

VariableReport collect_variables(const ExchangeGraph& graph);

struct VerifyReport {
  std::string kind;
  bool pass = false;
  std::vector<std::string> details;
};

// Laurent phenomenon up to `depth` (tree exploration, no folding).
VerifyReport verify_laurent(const Seed& seed, std::size_t depth,
                            std::size_t jobs = 1);
// Double mutation returns the original seed and frame in every direction.
VerifyReport verify_involution(const Seed& seed);
// Plus- and minus-map transports of beta and lambda agree in every direction.
VerifyReport verify_signs(const Seed& seed);
// validate() passes at the root and after every single mutation.
VerifyReport verify_compat(const Seed& seed);

std::string graph_dot(const ExchangeGraph& graph);
std::string graph_json(const ExchangeGraph& graph);
std::string variables_json(const ExchangeGraph& graph);

}  // namespace qcl
