#include <doctest.h>

#include "helpers.hpp"
#include "ilpk/oracle.hpp"

using namespace ilpk;
using namespace ilpk::test;

TEST_CASE("ilp_brute on tiny instances") {
    OracleBudget budget;
    budget.max_l1 = 10;
    OracleResult r = ilp_brute(imat(1, 2, {1, 1}), {Int(3)}, {Int(1), Int(2)}, budget);
    REQUIRE(r.feasible);
    CHECK(*r.objective == 6);
    CHECK(r.x == IntVec{Int(0), Int(3)});

    OracleResult inf = ilp_brute(imat(1, 1, {2}), {Int(3)}, {Int(1)}, budget);
    CHECK_FALSE(inf.feasible);
}

TEST_CASE("ilp_brute budget is monotone") {
    Rng rng(83);
    for (int t = 0; t < 20; ++t) {
        IntMatrix a = random_int_matrix(rng, 2, 4, -3, 3);
        IntVec b(2), c(4);
        for (auto& v : b) v = Int(rng.uniform(-4, 4));
        for (auto& v : c) v = Int(rng.uniform(-3, 3));
        OracleBudget small, big;
        small.max_l1 = 4;
        big.max_l1 = 7;
        OracleResult rs = ilp_brute(a, b, c, small);
        OracleResult rb = ilp_brute(a, b, c, big);
        if (rs.feasible) {
            REQUIRE(rb.feasible);
            CHECK(*rb.objective >= *rs.objective);
        }
    }
}

TEST_CASE("ilp_brute rejects oversized enumerations") {
    OracleBudget budget;
    budget.max_l1 = 1000000;
    budget.max_subsets = 1000;
    CHECK_THROWS_AS(ilp_brute(imat(1, 3, {1, 1, 1}), {Int(5)}, {Int(0), Int(0), Int(0)}, budget),
                    BudgetExceeded);
}

TEST_CASE("disc_brute on fixed cases") {
    CHECK(disc_brute(to_rat(imat(1, 1, {0}))) == 0);
    CHECK(disc_brute(RatMatrix::identity(2)) == 1);
    CHECK(disc_brute(to_rat(imat(1, 2, {1, 1}))) == 0);
}

TEST_CASE("herdisc_brute on fixed cases") {
    CHECK(herdisc_brute(to_rat(imat(1, 1, {1}))) == 1);
    CHECK(herdisc_brute(to_rat(imat(1, 2, {1, 1}))) == 1);
}

TEST_CASE("disc <= herdisc, and deletion monotonicity") {
    Rng rng(91);
    for (int t = 0; t < 15; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0, 4));
        RatMatrix m(2, n);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = make_rat(rng.uniform(-4, 4), 4);
        Rat h = herdisc_brute(m);
        CHECK(disc_brute(m) <= h);
        // removing a column never increases herdisc
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j + 1 < n; ++j) keep.push_back(j);
        if (!keep.empty()) CHECK(herdisc_brute(m.select_cols(keep)) <= h);
    }
}

TEST_CASE("herdisc of unit-norm columns stays below 2 sqrt(k)") {
    Rng rng(101);
    for (int t = 0; t < 15; ++t) {
        std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0, 4));
        RatMatrix m(k, n);
        for (std::size_t j = 0; j < n; ++j) {
            // columns with rational entries scaled to norm <= 1
            RatVec col(k);
            Rat norm2 = 0;
            for (auto& v : col) {
                v = make_rat(rng.uniform(-8, 8), 8);
                norm2 += v * v;
            }
            if (norm2 > 1) {
                Rat scale = rational_sqrt_lower(1 / norm2, make_rat(1, 2));
                for (auto& v : col) v *= scale;
            }
            for (std::size_t i = 0; i < k; ++i) m(i, j) = col[i];
        }
        Rat h = herdisc_brute(m);
        CHECK(h * h <= Rat(4 * static_cast<long>(k)));
    }
}
