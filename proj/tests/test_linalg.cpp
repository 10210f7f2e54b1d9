#include <doctest.h>

#include "helpers.hpp"

using namespace ilpk;
using namespace ilpk::test;

TEST_CASE("det: identity and triangular") {
    CHECK(det(IntMatrix::identity(3)) == 1);
    CHECK(det(imat(2, 2, {2, 1, 0, 3})) == 6);
}

TEST_CASE("det matches cofactor expansion on random 4x4") {
    Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        IntMatrix m = random_int_matrix(rng, 4, 4, -3, 3);
        CHECK(det(m) == det_cofactor(m));
    }
}

TEST_CASE("det is multiplicative") {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        IntMatrix a = random_int_matrix(rng, 3, 3, -4, 4);
        IntMatrix b = random_int_matrix(rng, 3, 3, -4, 4);
        CHECK(det(a * b) == det(a) * det(b));
    }
}

TEST_CASE("det on rational matrices clears denominators") {
    RatMatrix m = qmat(2, 2, {make_rat(1, 2), make_rat(1, 3), make_rat(1, 4), make_rat(1, 5)});
    CHECK(det(m) == make_rat(1, 10) - make_rat(1, 12));
}

TEST_CASE("inverse: trivial cases and multiply-back") {
    CHECK(is_identity(inverse(RatMatrix::identity(4))));

    RatMatrix d = qmat(2, 2, {Rat(2), Rat(0), Rat(0), Rat(4)});
    RatMatrix di = inverse(d);
    CHECK(di(0, 0) == make_rat(1, 2));
    CHECK(di(1, 1) == make_rat(1, 4));
    CHECK(di(0, 1) == 0);

    Rng rng(11);
    int done = 0;
    while (done < 100) {
        IntMatrix m = random_int_matrix(rng, 3, 3, -5, 5);
        if (det(m) == 0) continue;
        RatMatrix mr = to_rat(m);
        CHECK(is_identity(inverse(mr) * mr));
        ++done;
    }
}

TEST_CASE("inverse of singular matrix throws") {
    CHECK_THROWS_AS(inverse(to_rat(imat(2, 2, {1, 2, 2, 4}))), SingularMatrix);
}

TEST_CASE("rank") {
    CHECK(rank(imat(2, 3, {0, 0, 0, 0, 0, 0})) == 0);
    CHECK(rank(imat(2, 3, {1, 0, 2, 0, 1, 3})) == 2);
    CHECK(rank(imat(2, 2, {1, 2, 2, 4})) == 1);
}

namespace {

void check_hnf_invariants(const RatMatrix& m, bool integer_input) {
    HnfResult h = hnf(m);
    Int du = det(h.U);
    CHECK((du == 1 || du == -1));
    // exact factorization
    CHECK(to_rat(h.U) * h.H == m);
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(h.H(i, i) > 0);
        for (std::size_t j = 0; j < i; ++j) CHECK(h.H(i, j) == 0);
    }
    if (integer_input) {
        // above-diagonal entries reduced modulo their column's diagonal
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                CHECK(h.H(i, j) >= 0);
                CHECK(h.H(i, j) < h.H(j, j));
            }
    }
}

} // namespace

TEST_CASE("hnf: identity and permutation") {
    HnfResult h = hnf(RatMatrix::identity(3));
    CHECK(is_identity(h.H));
    CHECK(h.U == IntMatrix::identity(3));

    check_hnf_invariants(to_rat(imat(2, 2, {0, 1, 1, 0})), true);
}

TEST_CASE("hnf: diagonal product is forced by the determinant") {
    RatMatrix m = to_rat(imat(2, 2, {4, 1, 2, 3}));
    HnfResult h = hnf(m);
    CHECK(h.H(0, 0) * h.H(1, 1) == 10);
    check_hnf_invariants(m, true);
}

TEST_CASE("hnf invariants on random integer and rational matrices") {
    Rng rng(23);
    int done = 0;
    while (done < 60) {
        IntMatrix m = random_int_matrix(rng, 3, 3, -6, 6);
        if (det(m) == 0) continue;
        check_hnf_invariants(to_rat(m), true);
        ++done;
    }
    done = 0;
    while (done < 30) {
        IntMatrix m = random_int_matrix(rng, 3, 3, -6, 6);
        if (det(m) == 0) continue;
        RatMatrix q(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) q(i, j) = Rat(m(i, j)) / Rat(1 + (i + j) % 3);
        if (det(q) == 0) continue;
        check_hnf_invariants(q, false);
        ++done;
    }
}

TEST_CASE("hnf of singular matrix throws") {
    CHECK_THROWS_AS(hnf(to_rat(imat(2, 2, {1, 2, 2, 4}))), SingularMatrix);
}

TEST_CASE("ldl: identity, reconstruction, indefinite rejection") {
    LdlResult r = ldl(RatMatrix::identity(3));
    CHECK(is_identity(r.L));
    for (const auto& d : r.D) CHECK(d == 1);

    RatMatrix m = to_rat(imat(2, 2, {4, 2, 2, 2}));
    LdlResult f = ldl(m);
    // reconstruct L^T D L exactly
    RatMatrix dm(2, 2);
    dm(0, 0) = f.D[0];
    dm(1, 1) = f.D[1];
    CHECK(f.L.transposed() * dm * f.L == m);
    for (std::size_t i = 0; i < 2; ++i) CHECK(f.L(i, i) == 1);

    CHECK_THROWS_AS(ldl(to_rat(imat(2, 2, {1, 2, 2, 1}))), NotPositiveDefinite);
}

TEST_CASE("ldl reconstruction on random positive definite matrices") {
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        IntMatrix g = random_int_matrix(rng, 3, 3, -3, 3);
        // m = g^T g + I is symmetric positive definite
        IntMatrix m = g.transposed() * g;
        for (std::size_t i = 0; i < 3; ++i) m(i, i) += 1;
        RatMatrix mr = to_rat(m);
        LdlResult f = ldl(mr);
        RatMatrix dm(3, 3);
        for (std::size_t i = 0; i < 3; ++i) dm(i, i) = f.D[i];
        CHECK(f.L.transposed() * dm * f.L == mr);
    }
}

TEST_CASE("rational helper bounds") {
    // exp bounds bracket the true value
    Rat lo = exp_lower_rat(Rat(1)), hi = exp_upper_rat(Rat(1));
    CHECK(lo <= hi);
    CHECK(lo > make_rat(27182, 10000));
    CHECK(hi < make_rat(27183, 10000));
    CHECK(exp_lower_rat(Rat(-2)) <= exp_upper_rat(Rat(-2)));
    CHECK(exp_lower_rat(Rat(-2)) > make_rat(13, 100));
    CHECK(exp_upper_rat(Rat(-2)) < make_rat(14, 100));

    // rational_sqrt_lower certificates (squared-inequality checks)
    Rat r = rational_sqrt_lower(Rat(4), make_rat(9, 10));
    CHECK(r * r <= 4);
    CHECK(make_rat(81, 100) * 4 <= r * r);
    r = rational_sqrt_lower(Rat(2), make_rat(99, 100));
    CHECK(r * r <= 2);
    CHECK(make_rat(9801, 10000) * 2 <= r * r);
    r = rational_sqrt_lower(make_rat(1, 9), make_rat(1, 2));
    CHECK(r >= make_rat(1, 6));
    CHECK(r <= make_rat(1, 3));
    CHECK_THROWS_AS(rational_sqrt_lower(Rat(0), make_rat(1, 2)), NonPositiveInput);

    // simplest rational in an interval
    CHECK(simplest_rat_in(make_rat(5, 7), make_rat(3, 4)) == make_rat(3, 4));
    CHECK(simplest_rat_in(make_rat(15, 7), make_rat(16, 7)) == make_rat(9, 4));
    CHECK(simplest_rat_in(Rat(2), Rat(5)) == 2);
    CHECK(simplest_rat_in(make_rat(-1, 3), make_rat(1, 5)) == 0);
}
