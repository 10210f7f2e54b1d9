#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "ilpk/parallelepiped.hpp"
#include "ilpk/preconditioner.hpp"

using namespace ilpk;
using namespace ilpk::test;

namespace {

// max |det| over all k-column subsets, by direct recursion (independent of
// delta_exact's implementation path).
Int max_minor_brute(const IntMatrix& a) {
    const std::size_t k = a.rows(), n = a.cols();
    Int best = 0;
    std::vector<std::size_t> sel;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (sel.size() == k) {
            Int d = det(a.select_cols(sel));
            if (d < 0) d = -d;
            if (d > best) best = d;
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            sel.push_back(i);
            rec(i + 1);
            sel.pop_back();
        }
    };
    rec(0);
    return best;
}

void check_preconditioner(const IntMatrix& a, const LdPreconditioner& pre, const Rat& eps) {
    const std::size_t k = a.rows(), n = a.cols();
    // unit-norm columns of M, exactly
    for (std::size_t j = 0; j < n; ++j) {
        Rat norm2 = 0;
        for (std::size_t i = 0; i < k; ++i) norm2 += pre.M(i, j) * pre.M(i, j);
        CHECK(norm2 <= 1);
    }
    // M = B'^{-1} A exactly
    CHECK(pre.B_prime * pre.M == to_rat(a));
    // enumeration form: U B' = H_enum, U unimodular, diagonal >= 1
    Int du = det(pre.U);
    CHECK((du == 1 || du == -1));
    CHECK(to_rat(pre.U) * pre.B_prime == pre.H_enum);
    for (std::size_t i = 0; i < k; ++i) {
        CHECK(pre.H_enum(i, i) >= 1);
        for (std::size_t j = 0; j < i; ++j) CHECK(pre.H_enum(i, j) == 0);
    }
    // delta = |det B'|
    CHECK(pre.delta == abs_rat(det(pre.B_prime)));
    // determinant bound: delta <= e^{k/2 + 2 eps} k! Delta(A)
    Int delta_a = delta_exact(a);
    Rat expo = Rat(static_cast<long>(k)) / 2 + 2 * eps;
    Int kfact = 1;
    for (std::size_t i = 2; i <= k; ++i) kfact *= static_cast<long>(i);
    CHECK(pre.delta <= exp_upper_rat(expo) * to_rat(kfact) * to_rat(delta_a));
}

} // namespace

TEST_CASE("select_basis prefers the long column") {
    IntMatrix a = imat(2, 3, {1, 0, 5, 0, 1, 0});
    BasisSelection b = select_basis(a);
    CHECK(b.det_abs == 5);
    std::set<std::size_t> got(b.indices.begin(), b.indices.end());
    CHECK(got == std::set<std::size_t>{1, 2});
}

TEST_CASE("select_basis on the identity") {
    BasisSelection b = select_basis(IntMatrix::identity(3));
    CHECK(b.det_abs == 1);
}

TEST_CASE("select_basis is swap-optimal and k!-approximates the best minor") {
    Rng rng(41);
    int done = 0;
    while (done < 30) {
        IntMatrix a = random_int_matrix(rng, 3, 6, -4, 4);
        if (rank(a) < 3) continue;
        BasisSelection b = select_basis(a);
        Int best = max_minor_brute(a);
        CHECK(b.det_abs * 6 >= to_rat(best)); // k! = 6
        // local optimality: no single swap increases |det|
        std::set<std::size_t> in(b.indices.begin(), b.indices.end());
        for (std::size_t pos = 0; pos < 3; ++pos)
            for (std::size_t j = 0; j < 6; ++j) {
                if (in.count(j)) continue;
                auto swapped = b.indices;
                swapped[pos] = j;
                Rat d = abs_rat(to_rat(det(a.select_cols(swapped))));
                CHECK(d <= b.det_abs);
            }
        ++done;
    }
}

TEST_CASE("select_basis rejects rank-deficient input") {
    CHECK_THROWS_AS(select_basis(imat(2, 3, {1, 2, 3, 2, 4, 6})), RankDeficient);
}

TEST_CASE("delta_exact") {
    CHECK(delta_exact(IntMatrix::identity(3)) == 1);
    CHECK(delta_exact(imat(2, 3, {1, 0, 5, 0, 1, 7})) == 7);
    // duplicating a column leaves the maximum minor unchanged
    IntMatrix a = imat(2, 4, {2, -1, 3, 0, 1, 4, -2, 2});
    IntMatrix dup = imat(2, 5, {2, -1, 3, 0, 3, 1, 4, -2, 2, -2});
    CHECK(delta_exact(a) == delta_exact(dup));
    CHECK(delta_exact(a) == max_minor_brute(a));
    CHECK_THROWS_AS(delta_exact(imat(2, 2, {1, 2, 2, 4})), RankDeficient);
}

TEST_CASE("build on the identity") {
    Rat eps(1);
    LdPreconditioner pre = build_preconditioner(IntMatrix::identity(2), eps);
    check_preconditioner(IntMatrix::identity(2), pre, eps);
    CHECK(pre.delta <= exp_upper_rat(Rat(3))); // Delta = 1, k = 2, eps = 1
}

TEST_CASE("build keeps exact unit columns") {
    Rat eps(1);
    IntMatrix a = imat(2, 3, {1, 0, 3, 0, 1, 4});
    LdPreconditioner pre = build_preconditioner(a, eps);
    check_preconditioner(a, pre, eps);
}

TEST_CASE("build: determinant bound on random instances") {
    Rng rng(53);
    Rat eps(1);
    int done = 0;
    while (done < 15) {
        IntMatrix a = random_int_matrix(rng, 3, 7, -4, 4);
        if (rank(a) < 3) continue;
        LdPreconditioner pre = build_preconditioner(a, eps);
        check_preconditioner(a, pre, eps);
        ++done;
    }
}

TEST_CASE("enumeration through the triangular form matches a direct scan") {
    Rng rng(67);
    Rat eps(1);
    int done = 0;
    while (done < 6) {
        IntMatrix a = random_int_matrix(rng, 2, 4, -3, 3);
        if (rank(a) < 2) continue;
        LdPreconditioner pre = build_preconditioner(a, eps);

        const long gamma = 2;
        RatVec r{make_rat(rng.uniform(-3, 3), 2), make_rat(rng.uniform(-3, 3), 2)};

        // via the triangular form: x in r + gamma B' [0,1)^2  <=>  U x in
        // U r + gamma H_enum [0,1)^2
        RatMatrix hg(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) hg(i, j) = Rat(gamma) * pre.H_enum(i, j);
        Parallelepiped par{hg, to_rat(pre.U) * r, Closure::half_open};
        IntMatrix uinv = inverse_unimodular(pre.U);
        std::set<IntVec> via_form;
        for (const auto& y : collect_points(par)) via_form.insert(uinv * y);

        // direct scan over the exact bounding box: solve gamma B' t = x - r,
        // accept t in [0,1)^2
        RatMatrix binv_g = inverse(pre.B_prime);
        long lo[2], hi[2];
        for (std::size_t i = 0; i < 2; ++i) {
            Rat mn = r[i], mx = r[i];
            for (std::size_t j = 0; j < 2; ++j) {
                Rat e = Rat(gamma) * pre.B_prime(i, j);
                if (e > 0)
                    mx += e;
                else
                    mn += e;
            }
            lo[i] = to_i64(floor_rat(mn)) - 1;
            hi[i] = to_i64(ceil_rat(mx)) + 1;
        }
        std::set<IntVec> direct;
        for (long x0 = lo[0]; x0 <= hi[0]; ++x0)
            for (long x1 = lo[1]; x1 <= hi[1]; ++x1) {
                RatVec d{Rat(x0) - r[0], Rat(x1) - r[1]};
                RatVec t = binv_g * d;
                bool in = true;
                for (const auto& ti : t)
                    if (ti < 0 || ti >= gamma) in = false;
                if (in) direct.insert(IntVec{Int(x0), Int(x1)});
            }
        CHECK(via_form == direct);
        ++done;
    }
}
