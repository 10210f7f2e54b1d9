#pragma once

// Enumeration of the integer points of a triangular rational parallelepiped
// r + H*[0,1)^n (or its closed variant) by digit recursion over coordinates,
// last coordinate first. Entirely in exact rationals.

#include <cstdint>
#include <functional>
#include <vector>

#include "ilpk/matrix.hpp"

namespace ilpk {

enum class Closure { half_open, closed };

struct Parallelepiped {
    RatMatrix H;   // upper triangular, positive diagonal
    RatVec r;      // offset
    Closure closure = Closure::half_open;
};

/// Callback receives each integer point once, in lexicographic order from the
/// last coordinate to the first; return false to stop early.
using PointSink = std::function<bool(const IntVec&)>;

/// Streams the integer points of p. Throws InvalidShape when H is not upper
/// triangular with positive diagonal or dimensions disagree.
void enumerate_points(const Parallelepiped& p, const PointSink& sink);

/// Materialized variant for small instances and tests.
std::vector<IntVec> collect_points(const Parallelepiped& p);

/// Number of integer points, without materializing them.
Int count_points(const Parallelepiped& p);

/// Membership test by back-substitution: x = r + H t with t in [0,1)^n
/// (half-open) or [0,1]^n (closed).
bool contains(const Parallelepiped& p, const IntVec& x);

} // namespace ilpk
