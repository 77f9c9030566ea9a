// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_ORACLE_HPP_
#define BCL_ORACLE_HPP_

#include <cstdint>

#include "bcl/space.hpp"
#include "bcl/sparse_vector.hpp"

namespace bcl {

// Exhaustive enumeration of functional trees over supp x with depth at most
// max_depth and declared sizes at most max_size; returns the largest |f(x)|.
// Independent of the norm engine: no memoization, no interval abstraction,
// every declared size in range is tried explicitly. Guards: |supp x| <= 8 and
// max_depth <= 4.
double brute_force_norm(const SparseVector& x, const SpaceParams& params,
                        int max_depth, std::int64_t max_size);

}  // namespace bcl

#endif  // BCL_ORACLE_HPP_
