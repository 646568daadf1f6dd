#pragma once

// Arbitrary-precision integer scalars shared by every module.
//
// Mutation iterates square matrix entries and Laurent exponents in the wild
// cases, so 64-bit arithmetic overflows within a handful of steps; exactness
// is non-negotiable here and cpp_int keeps every path exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace qcl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Mat = std::vector<std::vector<Int>>;

// Decomposition v = [v]_+ - [v]_- into non-negative parts with disjoint
// support, used throughout the mutation formulas.
inline Int pos_part(const Int& v) { return v > 0 ? v : Int(0); }
inline Int neg_part(const Int& v) { return v < 0 ? Int(-v) : Int(0); }

inline std::string int_str(const Int& v) { return v.str(); }

}  // namespace qcl
