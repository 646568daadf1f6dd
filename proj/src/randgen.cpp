#include "cluster/randgen.hpp"

#include <random>
#include <string>

#include "cluster/errors.hpp"
#include "cluster/smith.hpp"

namespace qcl {

Seed random_seed(const RandomSeedOptions& options) {
  const std::size_t m = options.mutable_rank;
  if (m == 0) throw BadInput("random_seed: mutable_rank must be positive");
  const bool frozen = options.with_frozen || options.quantum;
  const std::size_t extra = options.extra_frozen;
  const std::size_t n = m + (frozen ? m : 0) + extra;

  std::mt19937_64 rng(options.rng_seed);
  std::uniform_int_distribution<int> entry(-options.max_entry,
                                           options.max_entry);

  std::vector<Label> labels;
  std::vector<Label> ex;
  for (std::size_t i = 1; i <= m; ++i) {
    labels.push_back(primal("u" + std::to_string(i)));
    ex.push_back(labels.back());
  }
  if (frozen)
    for (std::size_t i = 1; i <= m; ++i)
      labels.push_back(primal("v" + std::to_string(i)));
  for (std::size_t i = 1; i <= extra; ++i)
    labels.push_back(primal("w" + std::to_string(i)));
  BasisPtr basis = make_basis(labels);

  // B-matrix rows B / columns ex: random skew P on top, then I_m, then
  // arbitrary extra rows.
  Mat b = mat_zero(n, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      b[i][j] = entry(rng);
      b[j][i] = -b[i][j];
    }
  if (frozen)
    for (std::size_t i = 0; i < m; ++i) b[m + i][i] = 1;
  for (std::size_t i = 0; i < extra; ++i)
    for (std::size_t j = 0; j < m; ++j)
      b[m + (frozen ? m : 0) + i][j] = entry(rng);

  std::vector<Label> ex_copy = ex;
  LinearMap beta = map_from_matrix(make_basis(std::move(ex_copy)),
                                   dual_basis(basis), b);

  std::optional<LinearMap> lambda;
  if (options.quantum) {
    // L = [[0, -I, 0], [I, -P, 0], [0, 0, 0]] satisfies B^T L = (I | 0).
    Mat l = mat_zero(n, n);
    for (std::size_t i = 0; i < m; ++i) {
      l[i][m + i] = -1;
      l[m + i][i] = 1;
      for (std::size_t j = 0; j < m; ++j) l[m + i][m + j] = -b[i][j];
    }
    lambda = map_from_matrix(dual_basis(basis), basis, l);
  }

  return make_seed(basis, ex, {}, std::move(beta), std::move(lambda));
}

}  // namespace qcl
