#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cluster/errors.hpp"
#include "cluster/lattice.hpp"
#include "cluster/smith.hpp"

using namespace qcl;

namespace {

BasisPtr b3() { return make_basis({primal("a"), primal("b"), primal("c")}); }

// Determinant by cofactor expansion; fine for the sizes below.
Int det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int acc = 0, sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    acc += sign * m[0][j] * det(minor);
    sign = -sign;
  }
  return acc;
}

void subsets(std::size_t n, std::size_t k, std::size_t from,
             std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors via determinantal divisors: d_k = D_k / D_{k-1} with
// D_k = gcd of all k x k minors.  Independent of the elimination in smith().
std::vector<Int> invariant_factor_oracle(const Mat& a) {
  const std::size_t rows = mat_rows(a), cols = mat_cols(a);
  std::vector<Int> divisors{1};  // D_0
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rsets, csets;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rsets);
    subsets(cols, k, 0, cur, csets);
    Int g = 0;
    for (const auto& rs : rsets)
      for (const auto& cs : csets) {
        Mat sub;
        for (std::size_t r : rs) {
          std::vector<Int> row;
          for (std::size_t c : cs) row.push_back(a[r][c]);
          sub.push_back(std::move(row));
        }
        g = boost::multiprecision::gcd(g, det(sub));
      }
    if (g == 0) break;  // rank reached
    divisors.push_back(g);
  }
  std::vector<Int> factors;
  for (std::size_t k = 1; k < divisors.size(); ++k)
    factors.push_back(divisors[k] / divisors[k - 1]);
  return factors;
}

bool is_unimodular(const Mat& m) {
  Int d = det(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("labels render and parse with the dual flag") {
  Label b = primal("x1");
  CHECK(label_str(b) == "x1");
  CHECK(label_str(dual_of(b)) == "x1*");
  CHECK(parse_label("x1*") == dual_of(b));
  CHECK(dual_of(dual_of(b)) == b);
}

TEST_CASE("dual basis reuses labels and double dual is the original") {
  BasisPtr basis = b3();
  BasisPtr dual = dual_basis(basis);
  CHECK(dual->labels()[0] == dual_of(primal("a")));
  CHECK(same_basis(dual_basis(dual), basis));
}

TEST_CASE("lattice arithmetic and the positive/negative split") {
  BasisPtr basis = b3();
  LatticeElement v = lat_make(basis, {{primal("a"), 2}, {primal("b"), -3}});
  LatticeElement w = lat_make(basis, {{primal("b"), 3}, {primal("c"), 1}});
  CHECK(lat_coeff(lat_add(v, w), primal("b")) == 0);
  CHECK(lat_equal(lat_sub(v, v), lat_zero(basis)));
  CHECK(lat_equal(lat_neg(v), lat_scale(-1, v)));

  auto [p, m] = pos_neg_parts(v);
  CHECK(lat_equal(lat_sub(p, m), v));
  for (const auto& [l, c] : p.coords) CHECK(c > 0);
  for (const auto& [l, c] : m.coords) CHECK(c > 0);
  for (const auto& [l, c] : p.coords) CHECK(m.coords.count(l) == 0);
}

TEST_CASE("pairing is the coordinatewise dot product against the dual") {
  BasisPtr basis = b3();
  BasisPtr dual = dual_basis(basis);
  for (const Label& l : basis->labels())
    for (const Label& m : basis->labels())
      CHECK(eval_pairing(lat_unit(dual, dual_of(l)), lat_unit(basis, m)) ==
            (l == m ? 1 : 0));
  LatticeElement f =
      lat_make(dual, {{dual_of(primal("a")), 2}, {dual_of(primal("c")), -1}});
  LatticeElement v = lat_make(basis, {{primal("a"), 3}, {primal("c"), 5}});
  CHECK(eval_pairing(f, v) == 1);
}

TEST_CASE("map composition, duals and the adjointness identity") {
  BasisPtr x = make_basis({primal("p"), primal("q")});
  BasisPtr y = b3();
  // f(p) = a - c, f(q) = 2b + c.
  LinearMap f = make_map(
      x, y,
      {{primal("p"), lat_make(y, {{primal("a"), 1}, {primal("c"), -1}})},
       {primal("q"), lat_make(y, {{primal("b"), 2}, {primal("c"), 1}})}});
  LinearMap g = identity_map(y);
  CHECK(map_equal(map_compose(g, f), f));

  LinearMap fd = map_dual(f);
  CHECK(same_basis(fd.domain, dual_basis(y)));
  CHECK(same_basis(fd.codomain, dual_basis(x)));
  for (const Label& yl : y->labels())
    for (const Label& xl : x->labels()) {
      LatticeElement functional = lat_unit(dual_basis(y), dual_of(yl));
      Int lhs = eval_pairing(map_apply(fd, functional), lat_unit(x, xl));
      Int rhs = eval_pairing(functional, map_apply(f, lat_unit(x, xl)));
      CHECK(lhs == rhs);
    }

  Mat m = map_matrix(f);
  CHECK(m == Mat{{1, 0}, {0, 2}, {-1, 1}});
  CHECK(map_equal(map_from_matrix(x, y, m), f));
  CHECK(map_matrix(map_dual(f)) == mat_transpose(m));
}

TEST_CASE("radicals of the form attached to a map into a dual lattice") {
  BasisPtr x = make_basis({primal("q1"), primal("q2")});
  BasisPtr y = make_basis({primal("a1"), primal("a2")});
  // f(q1) = a1* - a2*, f(q2) = -f(q1): left radical q1+q2, right a1+a2.
  LatticeElement col = lat_make(
      dual_basis(y), {{dual_of(primal("a1")), 1}, {dual_of(primal("a2")), -1}});
  LinearMap f =
      make_map(x, dual_basis(y), {{primal("q1"), col}, {primal("q2"), lat_neg(col)}});
  Radicals rad = form_radicals(f);
  REQUIRE(rad.left.size() == 1);
  REQUIRE(rad.right.size() == 1);
  CHECK(lat_equal(map_apply(f, rad.left[0]), lat_zero(dual_basis(y))));
  for (const Label& l : x->labels())
    CHECK(eval_pairing(map_apply(f, lat_unit(x, l)), rad.right[0]) == 0);
}

TEST_CASE("smith normal form on known matrices") {
  Mat a{{2, 4}, {6, 8}};
  SmithResult s = smith(a);
  CHECK(s.rank == 2);
  CHECK(mat_equal(mat_mul(mat_mul(s.u, a), s.v), s.d));
  CHECK(is_unimodular(s.u));
  CHECK(is_unimodular(s.v));
  CHECK(smith_invariants(a) == std::vector<Int>{2, 4});

  CHECK(smith_invariants(Mat{{0, -1}, {1, 0}}) == std::vector<Int>{1, 1});
  CHECK(smith_invariants(Mat{{0, 2}, {-2, 0}}) == std::vector<Int>{2, 2});
  CHECK(smith_invariants(Mat{{0, 0}, {0, 0}}).empty());
}

TEST_CASE("smith invariants match the determinantal-divisor oracle") {
  std::mt19937_64 rng(20260814);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    Mat a(r, std::vector<Int>(c));
    for (auto& row : a)
      for (auto& v : row) v = entry(rng);
    CAPTURE(trial);
    CHECK(smith_invariants(a) == invariant_factor_oracle(a));
    SmithResult s = smith(a);
    CHECK(mat_equal(mat_mul(mat_mul(s.u, a), s.v), s.d));
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
      CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
  }
}

TEST_CASE("kernels, solving and one-sided inverses") {
  Mat a{{1, 2, 3}, {2, 4, 6}};
  Mat k = right_kernel(a);
  REQUIRE(mat_cols(k) == 2);
  for (std::size_t j = 0; j < mat_cols(k); ++j)
    for (std::size_t i = 0; i < mat_rows(a); ++i) {
      Int acc = 0;
      for (std::size_t l = 0; l < mat_cols(a); ++l) acc += a[i][l] * k[l][j];
      CHECK(acc == 0);
    }
  Mat lk = left_kernel(a);
  REQUIRE(mat_rows(lk) == 1);
  CHECK(lk[0][0] * 1 + lk[0][1] * 2 == 0);

  auto sol = solve(a, {6, 12});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + 2 * (*sol)[1] + 3 * (*sol)[2] == 6);
  CHECK_FALSE(solve(a, {1, 1}).has_value());

  Mat split{{1, 0}, {0, 1}, {3, -2}};
  auto li = left_inverse(split);
  REQUIRE(li.has_value());
  CHECK(mat_equal(mat_mul(*li, split), mat_identity(2)));
  CHECK_FALSE(left_inverse(Mat{{2}, {0}}).has_value());

  Mat uni{{1, 1}, {0, 1}};
  auto inv = unimodular_inverse(uni);
  REQUIRE(inv.has_value());
  CHECK(mat_equal(mat_mul(uni, *inv), mat_identity(2)));
  CHECK_FALSE(unimodular_inverse(Mat{{2, 0}, {0, 1}}).has_value());
}

TEST_CASE("restriction and extension along a sub-basis") {
  BasisPtr basis = b3();
  BasisPtr sub = make_basis({primal("a"), primal("c")});
  LatticeElement v = lat_make(basis, {{primal("a"), 4}, {primal("c"), -2}});
  LatticeElement r = lat_restrict(v, sub);
  CHECK(lat_coeff(r, primal("a")) == 4);
  CHECK(lat_equal(lat_extend(r, basis), v));
  LatticeElement bad = lat_make(basis, {{primal("b"), 1}});
  CHECK_THROWS_AS(lat_restrict(bad, sub), BadInput);
}
