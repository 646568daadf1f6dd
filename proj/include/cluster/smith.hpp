#pragma once

// Smith normal form over Z and the standard linear-algebra consequences:
// kernels, integral solving, one-sided inverses and unimodular inversion.

#include <optional>
#include <vector>

#include "cluster/ints.hpp"

namespace qcl {

std::size_t mat_rows(const Mat& a);
std::size_t mat_cols(const Mat& a);
Mat mat_identity(std::size_t n);
Mat mat_zero(std::size_t rows, std::size_t cols);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
bool mat_equal(const Mat& a, const Mat& b);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SmithResult {
  Mat u;
  Mat d;
  Mat v;
  std::size_t rank = 0;
};

SmithResult smith(const Mat& a);

// The non-zero diagonal entries d_1 | d_2 | ... of the Smith form.
std::vector<Int> smith_invariants(const Mat& a);

// Columns generate { x : A x = 0 } (a saturated subgroup of Z^cols).
Mat right_kernel(const Mat& a);
// Rows generate { y : y A = 0 }.
Mat left_kernel(const Mat& a);

// Some integral solution of A x = b, if one exists.
std::optional<std::vector<Int>> solve(const Mat& a, const std::vector<Int>& b);

// R with R * A = I (exists iff A has full column rank and all invariant
// factors are 1, i.e. A is a split monomorphism of free Z-modules).
std::optional<Mat> left_inverse(const Mat& a);

// Inverse of a square unimodular matrix (via SNF: U M V = I => M^{-1} = V U).
std::optional<Mat> unimodular_inverse(const Mat& m);

}  // namespace qcl
