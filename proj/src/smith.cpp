#include "cluster/smith.hpp"

#include <algorithm>

#include "cluster/errors.hpp"

namespace qcl {

std::size_t mat_rows(const Mat& a) { return a.size(); }

std::size_t mat_cols(const Mat& a) { return a.empty() ? 0 : a[0].size(); }

Mat mat_identity(std::size_t n) {
  Mat m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_zero(std::size_t rows, std::size_t cols) {
  return Mat(rows, std::vector<Int>(cols, 0));
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const std::size_t n = mat_rows(a), k = mat_cols(a), m = mat_cols(b);
  if (k != mat_rows(b)) throw Internal("mat_mul: shape mismatch");
  Mat c = mat_zero(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Mat mat_transpose(const Mat& a) {
  Mat t = mat_zero(mat_cols(a), mat_rows(a));
  for (std::size_t i = 0; i < mat_rows(a); ++i)
    for (std::size_t j = 0; j < mat_cols(a); ++j) t[j][i] = a[i][j];
  return t;
}

bool mat_equal(const Mat& a, const Mat& b) { return a == b; }

namespace {

// Row/column operations applied simultaneously to D and the transform
// matrices so that U * A * V = D stays true throughout.
struct SmithWork {
  Mat d, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row[i] += c * row[j]
  void add_row(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < d[i].size(); ++k) d[i][k] += c * d[j][k];
    for (std::size_t k = 0; k < u[i].size(); ++k) u[i][k] += c * u[j][k];
  }
  // col[i] += c * col[j]
  void add_col(std::size_t i, std::size_t j, const Int& c) {
    for (auto& row : d) row[i] += c * row[j];
    for (auto& row : v) row[i] += c * row[j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : d[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

}  // namespace

SmithResult smith(const Mat& a) {
  const std::size_t rows = mat_rows(a), cols = mat_cols(a);
  SmithWork w{a, mat_identity(rows), mat_identity(cols)};

  std::size_t t = 0;  // current pivot index
  while (t < rows && t < cols) {
    // Find a non-zero entry in the remaining block with minimal |value|.
    std::size_t pi = t, pj = t;
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (w.d[i][j] == 0) continue;
        Int mag = abs(w.d[i][j]);
        if (!found || mag < best) {
          best = mag;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;

    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    // Reduce row and column t until the pivot divides everything in them.
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.d[i][t] == 0) continue;
        Int q = w.d[i][t] / w.d[t][t];
        w.add_row(i, t, -q);
        if (w.d[i][t] != 0) {  // remainder became the smaller pivot
          w.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.d[t][j] == 0) continue;
        Int q = w.d[t][j] / w.d[t][t];
        w.add_col(j, t, -q);
        if (w.d[t][j] != 0) {
          w.swap_cols(t, j);
          clean = false;
        }
      }
    }

    // Enforce the divisibility chain: fold any entry the pivot misses back
    // into row t and restart the cleaning loop from this pivot.
    bool divides_all = true;
    for (std::size_t i = t + 1; i < rows && divides_all; ++i)
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.d[i][j] % w.d[t][t] != 0) {
          w.add_row(t, i, 1);
          divides_all = false;
          break;
        }
      }
    if (!divides_all) continue;

    if (w.d[t][t] < 0) w.negate_row(t);
    ++t;
  }

  SmithResult r{std::move(w.u), std::move(w.d), std::move(w.v), t};
  return r;
}

std::vector<Int> smith_invariants(const Mat& a) {
  SmithResult s = smith(a);
  std::vector<Int> inv;
  inv.reserve(s.rank);
  for (std::size_t i = 0; i < s.rank; ++i) inv.push_back(s.d[i][i]);
  return inv;
}

Mat right_kernel(const Mat& a) {
  // A x = 0 <=> (U A V)(V^{-1} x) = 0; kernel basis = last cols-rank
  // columns of V.
  SmithResult s = smith(a);
  const std::size_t cols = mat_cols(a);
  Mat k = mat_zero(cols, cols - s.rank);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = s.rank; j < cols; ++j) k[i][j - s.rank] = s.v[i][j];
  return k;
}

Mat left_kernel(const Mat& a) {
  SmithResult s = smith(a);
  const std::size_t rows = mat_rows(a);
  Mat k = mat_zero(rows - s.rank, rows);
  for (std::size_t i = s.rank; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) k[i - s.rank][j] = s.u[i][j];
  return k;
}

std::optional<std::vector<Int>> solve(const Mat& a, const std::vector<Int>& b) {
  const std::size_t rows = mat_rows(a), cols = mat_cols(a);
  if (b.size() != rows) throw Internal("solve: rhs size mismatch");
  SmithResult s = smith(a);
  // A x = b <=> D y = U b with x = V y.
  std::vector<Int> ub(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) ub[i] += s.u[i][j] * b[j];
  std::vector<Int> y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < s.rank) {
      if (ub[i] % s.d[i][i] != 0) return std::nullopt;
      y[i] = ub[i] / s.d[i][i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) x[i] += s.v[i][j] * y[j];
  return x;
}

std::optional<Mat> left_inverse(const Mat& a) {
  const std::size_t rows = mat_rows(a), cols = mat_cols(a);
  SmithResult s = smith(a);
  if (s.rank != cols) return std::nullopt;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.d[i][i] != 1) return std::nullopt;
  // D = U A V = (I; 0)  =>  A = U^{-1} (I; 0) V^{-1}
  //                      =>  V (I | 0) U  is a left inverse.
  Mat r = mat_zero(cols, rows);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < rows; ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < cols; ++k) acc += s.v[i][k] * s.u[k][j];
      r[i][j] = acc;
    }
  return r;
}

std::optional<Mat> unimodular_inverse(const Mat& m) {
  const std::size_t n = mat_rows(m);
  if (n != mat_cols(m)) return std::nullopt;
  SmithResult s = smith(m);
  if (s.rank != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (s.d[i][i] != 1) return std::nullopt;
  // U M V = I  =>  M^{-1} = V U.
  return mat_mul(s.v, s.u);
}

}  // namespace qcl
