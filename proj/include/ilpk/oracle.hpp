#pragma once

// Independent brute-force references: exhaustive ILP search over bounded
// l1-norm, and exact discrepancy / hereditary discrepancy by enumeration.
// Deliberately has no dependence on the solver internals.

#include <optional>
#include <vector>

#include "ilpk/matrix.hpp"

namespace ilpk {

struct OracleBudget {
    std::int64_t max_l1 = 24;          // bound on |x|_1 for the exhaustive ILP search
    std::int64_t max_subsets = 200000000; // cap on enumerated candidates
};

struct OracleResult {
    bool feasible = false;
    std::optional<Int> objective;   // best c^T x within the budget
    std::vector<Int> x;             // a witness attaining it
};

/// Enumerates every x >= 0 with |x|_1 <= budget.max_l1 (compositions in
/// stars-and-bars order). Throws BudgetExceeded when the candidate count
/// exceeds budget.max_subsets.
OracleResult ilp_brute(const IntMatrix& a, const IntVec& b, const IntVec& c,
                       const OracleBudget& budget);

/// Exact discrepancy: min over sign vectors z of |M z|_inf. n <= 20.
Rat disc_brute(const RatMatrix& m, const OracleBudget& budget = OracleBudget{});

/// Exact hereditary discrepancy: max over column subsets of disc. n <= 12.
Rat herdisc_brute(const RatMatrix& m, const OracleBudget& budget = OracleBudget{});

} // namespace ilpk
