#pragma once

// Valid-by-construction random seeds for property tests: a random skew
// principal block P, optionally extended by a principal identity block (and
// extra frozen rows), with the standard compatible lambda attached in the
// quantum case.

#include <cstdint>

#include "cluster/seed.hpp"

namespace qcl {

struct RandomSeedOptions {
  std::size_t mutable_rank = 3;
  std::size_t extra_frozen = 0;
  int max_entry = 3;        // principal entries drawn from [-max_entry, max_entry]
  bool with_frozen = false; // append an identity block of frozen rows
  bool quantum = false;     // attach lambda (implies with_frozen)
  std::uint64_t rng_seed = 0;
};

Seed random_seed(const RandomSeedOptions& options);

}  // namespace qcl
