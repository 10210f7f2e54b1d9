#pragma once

// Exact rational primal simplex with Bland's rule for standard-form LPs
//   max c^T x  s.t.  A x = b, x >= 0,  A of full row rank.
// Two phases; Bland's pivoting rule guarantees termination. Everything is
// mpq arithmetic, so the reported vertex and rays are exact.

#include <vector>

#include "ilpk/matrix.hpp"

namespace ilpk {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    RatVec x;          // optimal vertex (basic solution), when optimal
    Rat objective;     // c^T x, when optimal
    RatVec ray;        // recession direction with A ray = 0, ray >= 0, c^T ray > 0, when unbounded
};

LpResult solve_lp(const RatMatrix& a, const RatVec& b, const RatVec& c);

} // namespace ilpk
