#include <doctest.h>

#include "helpers.hpp"
#include "ilpk/oracle.hpp"
#include "ilpk/simplex.hpp"

using namespace ilpk;
using namespace ilpk::test;

TEST_CASE("single equation optimum sits at a vertex") {
    // max x1 + 2 x2 s.t. x1 + x2 = 3
    RatMatrix a = to_rat(imat(1, 2, {1, 1}));
    LpResult r = solve_lp(a, {Rat(3)}, {Rat(1), Rat(2)});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == 6);
    CHECK(r.x == RatVec{Rat(0), Rat(3)});
}

TEST_CASE("fractional vertex is exact") {
    RatMatrix a = to_rat(imat(1, 1, {2}));
    LpResult r = solve_lp(a, {Rat(3)}, {Rat(1)});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.x[0] == make_rat(3, 2));
}

TEST_CASE("infeasible system") {
    // x1 + x2 = -1, x >= 0
    RatMatrix a = to_rat(imat(1, 2, {1, 1}));
    LpResult r = solve_lp(a, {Rat(-1)}, {Rat(1), Rat(0)});
    CHECK(r.status == LpStatus::infeasible);
}

TEST_CASE("unbounded ray is certified") {
    // max x1 - x2 s.t. x1 - x2 = 0: ray (1,1) has positive objective? no --
    // c = (1,-1) gives c^T ray = 0. Use c = (1,0): max x1 with x1 = x2 free
    RatMatrix a = to_rat(imat(1, 2, {1, -1}));
    LpResult r = solve_lp(a, {Rat(0)}, {Rat(1), Rat(0)});
    REQUIRE(r.status == LpStatus::unbounded);
    // exact ray certificate
    Rat prod = 0;
    for (std::size_t j = 0; j < 2; ++j) prod += a(0, j) * r.ray[j];
    CHECK(prod == 0);
    for (const auto& v : r.ray) CHECK(v >= 0);
    CHECK(r.ray[0] > 0); // c^T ray > 0
}

TEST_CASE("degenerate problems terminate (Bland)") {
    // classic cycling-prone structure; Bland must terminate
    RatMatrix a(3, 7);
    std::vector<long> rows = {1, 0, 0, 1, -1, 1, 0, 0, 1, 0, 2, -3, 1, 0, 0, 0, 1, 1, 1, 1, 1};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 7; ++j) a(i, j) = Rat(rows[i * 7 + j]);
    RatVec b{Rat(0), Rat(0), Rat(1)};
    RatVec c{Rat(0), Rat(0), Rat(0), Rat(3), Rat(-1), Rat(2), Rat(0)};
    LpResult r = solve_lp(a, b, c);
    CHECK(r.status == LpStatus::optimal);
}

TEST_CASE("random instances: optimality versus budgeted enumeration") {
    Rng rng(71);
    int done = 0;
    while (done < 40) {
        std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 1));
        std::size_t n = k + static_cast<std::size_t>(rng.uniform(1, 3));
        IntMatrix a = random_int_matrix(rng, k, n, 0, 4); // nonneg rows keep it bounded
        bool has_pos_row = true;
        for (std::size_t j = 0; j < n; ++j)
            if (a(0, j) <= 0) has_pos_row = false;
        if (!has_pos_row || rank(a) < k) continue;
        IntVec x0(n);
        for (auto& v : x0) v = Int(rng.uniform(0, 3));
        IntVec b = a * x0;
        IntVec c(n);
        for (auto& v : c) v = Int(rng.uniform(-4, 4));

        LpResult lp = solve_lp(to_rat(a), to_rat(b), to_rat(c));
        REQUIRE(lp.status == LpStatus::optimal);
        // LP dominates every integer point (checked within the oracle budget)
        OracleBudget budget;
        budget.max_l1 = to_i64(b[0]); // row 0 positive: |x|_1 <= b_0
        OracleResult br = ilp_brute(a, b, c, budget);
        REQUIRE(br.feasible);
        CHECK(lp.objective >= to_rat(*br.objective));
        // vertex is feasible
        RatVec ax(k, Rat(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) ax[i] += to_rat(a(i, j)) * lp.x[j];
        for (std::size_t i = 0; i < k; ++i) CHECK(ax[i] == to_rat(b[i]));
        for (const auto& v : lp.x) CHECK(v >= 0);
        // basic solution: at most k nonzeros
        std::size_t nz = 0;
        for (const auto& v : lp.x)
            if (v != 0) ++nz;
        CHECK(nz <= k);
        ++done;
    }
}
