#include <doctest.h>

#include "helpers.hpp"
#include "ilpk/mvee.hpp"

using namespace ilpk;
using namespace ilpk::test;

namespace {

PointSet make_pts(std::size_t dim, std::vector<std::vector<long>> pts) {
    PointSet p;
    p.dim = dim;
    for (const auto& v : pts) {
        RatVec r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = Rat(v[i]);
        p.points.push_back(std::move(r));
    }
    return p;
}

void check_certificates(const PointSet& pts, const RationalEllipsoid& e, const Rat& eps) {
    // exact primal feasibility
    for (const auto& a : pts.points) CHECK(quad_form(e.W_hat, a) <= 1);
    // dual feasibility: weights >= 0 summing to dim
    Rat sum = 0;
    for (const auto& c : e.dual_weights) {
        CHECK(c >= 0);
        sum += c;
    }
    CHECK(sum == Rat(static_cast<long>(pts.dim)));
    // weak duality and the 2-eps certificate
    RatMatrix dual(pts.dim, pts.dim);
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        if (e.dual_weights[i] == 0) continue;
        for (std::size_t r = 0; r < pts.dim; ++r)
            for (std::size_t c = 0; c < pts.dim; ++c)
                dual(r, c) += e.dual_weights[i] * pts.points[i][r] * pts.points[i][c];
    }
    Rat dw = det(e.W_hat), dd = det(dual);
    CHECK(dw > 0);
    CHECK(dd > 0);
    CHECK(dw * dd <= 1);                            // weak duality
    CHECK(dw * dd * exp_lower_rat(2 * eps) >= 1);   // duality gap <= 2 eps
    CHECK(e.gap_bound <= 2 * eps);
}

} // namespace

TEST_CASE("unit basis points give the unit ball") {
    PointSet pts = make_pts(2, {{1, 0}, {0, 1}});
    Rat eps = make_rat(1, 10);
    RationalEllipsoid e = solve_mvee(pts, eps);
    check_certificates(pts, e, eps);
    // optimum is the identity: det W in [e^{-2 eps}, 1]
    Rat dw = det(e.W_hat);
    CHECK(dw <= 1);
    CHECK(dw * exp_upper_rat(make_rat(1, 5)) >= 1);
}

TEST_CASE("axis-aligned points give the axis-aligned ellipsoid") {
    PointSet pts = make_pts(2, {{2, 0}, {0, 1}});
    Rat eps = make_rat(1, 10);
    RationalEllipsoid e = solve_mvee(pts, eps);
    check_certificates(pts, e, eps);
    // feasibility pins the diagonal, optimality pins the determinant
    CHECK(4 * e.W_hat(0, 0) <= 1);
    CHECK(e.W_hat(1, 1) <= 1);
    Rat dw = det(e.W_hat);
    CHECK(dw <= make_rat(1, 4));
    CHECK(dw * 4 * exp_upper_rat(make_rat(1, 5)) >= 1);
}

TEST_CASE("random point sets: duality certificate") {
    Rng rng(17);
    Rat eps = make_rat(1, 4);
    for (int t = 0; t < 12; ++t) {
        PointSet pts;
        pts.dim = 3;
        for (int i = 0; i < 6; ++i) {
            RatVec v(3);
            for (auto& x : v) x = make_rat(rng.uniform(-5, 5), rng.uniform(1, 3));
            pts.points.push_back(v);
        }
        RatMatrix m(3, 6);
        for (std::size_t j = 0; j < 6; ++j)
            for (std::size_t i = 0; i < 3; ++i) m(i, j) = pts.points[j][i];
        if (rank(m) < 3) continue;
        RationalEllipsoid e = solve_mvee(pts, eps);
        check_certificates(pts, e, eps);
    }
}

TEST_CASE("degenerate point sets are rejected") {
    CHECK_THROWS_AS(solve_mvee(make_pts(2, {{1, 0}, {2, 0}, {3, 0}}), Rat(1)), DegeneratePoints);
    CHECK_THROWS_AS(solve_mvee(make_pts(2, {{1, 1}}), Rat(1)), DegeneratePoints);
}

TEST_CASE("rounding the identity keeps the diagonal near one") {
    PointSet pts = make_pts(2, {{1, 0}, {0, 1}});
    RationalEllipsoid e;
    e.W_hat = RatMatrix::identity(2);
    e.dual_weights = {Rat(1), Rat(1)};
    e.gap_bound = 0;
    Rat eps = make_rat(1, 2);
    TriangularFactor f = round_to_triangular(e, pts, eps);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(f.C(i, i) <= 1);
        CHECK(f.C(i, i) * exp_upper_rat(eps / 2) >= 1); // >= e^{-eps/k}
    }
    for (const auto& a : pts.points) {
        RatVec ca = f.C * a;
        Rat q = 0;
        for (const auto& v : ca) q += v * v;
        CHECK(q <= 1);
    }
}

TEST_CASE("rounding a diagonal form scales the diagonal") {
    PointSet pts;
    pts.dim = 2;
    pts.points.push_back({make_rat(1, 2), Rat(0)});
    pts.points.push_back({Rat(0), Rat(1)});
    RationalEllipsoid e;
    e.W_hat = RatMatrix(2, 2);
    e.W_hat(0, 0) = 4;
    e.W_hat(1, 1) = 1;
    e.dual_weights = {Rat(1), Rat(1)};
    e.gap_bound = 0;
    Rat eps = make_rat(1, 2);
    TriangularFactor f = round_to_triangular(e, pts, eps);
    CHECK(f.C(0, 0) <= 2);
    CHECK(f.C(0, 0) * exp_upper_rat(eps / 2) >= 2); // >= 2 e^{-eps/2}
    CHECK(f.C(1, 1) <= 1);
    CHECK(f.C(1, 1) * exp_upper_rat(eps / 2) >= 1);
    CHECK(f.C(0, 1) == 0);
}

TEST_CASE("rounded factor from solved ellipsoids: determinant window") {
    Rng rng(29);
    Rat eps = make_rat(1, 2);
    int done = 0;
    while (done < 10) {
        PointSet pts;
        pts.dim = 2;
        for (int i = 0; i < 5; ++i) {
            RatVec v(2);
            for (auto& x : v) x = Rat(rng.uniform(-4, 4));
            pts.points.push_back(v);
        }
        RatMatrix m(2, 5);
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t i = 0; i < 2; ++i) m(i, j) = pts.points[j][i];
        if (rank(m) < 2) continue;
        RationalEllipsoid e = solve_mvee(pts, eps);
        TriangularFactor f = round_to_triangular(e, pts, eps);
        // containment is exact
        for (const auto& a : pts.points) {
            RatVec ca = f.C * a;
            Rat q = 0;
            for (const auto& v : ca) q += v * v;
            CHECK(q <= 1);
        }
        // (det C)^2 / det W_hat in [e^{-2 eps}, 1]
        Rat det_c = f.C(0, 0) * f.C(1, 1);
        Rat dw = det(e.W_hat);
        CHECK(det_c * det_c <= dw);
        CHECK(det_c * det_c * exp_upper_rat(2 * eps) >= dw);
        ++done;
    }
}

TEST_CASE("rounding propagates indefiniteness") {
    PointSet pts = make_pts(2, {{1, 0}, {0, 1}});
    RationalEllipsoid e;
    e.W_hat = to_rat(imat(2, 2, {1, 2, 2, 1}));
    e.dual_weights = {Rat(1), Rat(1)};
    CHECK_THROWS_AS(round_to_triangular(e, pts, Rat(1)), NotPositiveDefinite);
}
