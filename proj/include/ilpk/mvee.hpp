#pragma once

// Near-optimal 0-symmetric minimum-volume enclosing ellipsoid. A floating
// point dual coordinate ascent finds the shape; everything that is claimed
// about the result (primal feasibility, weak-duality gap, the triangular
// rounding) is re-certified in exact rational arithmetic.

#include <vector>

#include "ilpk/linalg.hpp"

namespace ilpk {

/// A point set in R^k, interpreted as the symmetric set {±a_i}.
struct PointSet {
    std::size_t dim = 0;
    std::vector<RatVec> points;
};

/// Primal/dual pair: W_hat is exactly feasible (a^T W_hat a <= 1 for every
/// point), dual_weights is exactly feasible (>= 0, sums to dim), and
/// gap_bound is a certified rational upper bound on
/// (-ln det W_hat) - ln det(sum_i c_i a_i a_i^T) >= 0.
struct RationalEllipsoid {
    RatMatrix W_hat;
    RatVec dual_weights;
    Rat gap_bound;
};

/// Upper-triangular factor with positive diagonal satisfying
/// a^T C^T C a <= 1 exactly for every input point and
/// (det C)^2 >= e^{-2 eps} det W_hat.
struct TriangularFactor {
    RatMatrix C;
    Rat eps;
};

struct MveeOptions {
    unsigned long max_iterations = 100000;
};

/// Solves the enclosing-ellipsoid pair to duality gap <= 2*eps (certified).
/// Throws DegeneratePoints when the points do not span R^dim.
RationalEllipsoid solve_mvee(const PointSet& pts, const Rat& eps,
                             const MveeOptions& opts = MveeOptions{});

/// Rounds W_hat to an upper-triangular rational factor via its LDL
/// decomposition; containment is re-verified exactly.
TriangularFactor round_to_triangular(const RationalEllipsoid& e, const PointSet& pts,
                                     const Rat& eps);

/// Exact quadratic form value a^T W a.
Rat quad_form(const RatMatrix& w, const RatVec& a);

} // namespace ilpk
