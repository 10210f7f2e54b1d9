#include "ilpk/simplex.hpp"

#include <cstdlib>

namespace ilpk {

namespace {

struct Tableau {
    std::size_t k, n;            // rows, original variables
    std::size_t width;           // n + k artificial + 1 rhs
    std::vector<RatVec> t;       // k rows
    RatVec obj;                  // reduced-cost row over n + k columns
    std::vector<std::size_t> basis;

    std::size_t rhs() const { return width - 1; }

    void pivot(std::size_t r, std::size_t e) {
        Rat piv = t[r][e];
        for (auto& v : t[r]) v /= piv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == r || t[i][e] == 0) continue;
            Rat f = t[i][e];
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[r][j];
        }
        if (obj[e] != 0) {
            Rat f = obj[e];
            for (std::size_t j = 0; j < width - 1; ++j) obj[j] -= f * t[r][j];
        }
        basis[r] = e;
    }

    // Bland: enter the smallest improving index, leave by minimum ratio with
    // ties broken by smallest basic index. Returns false when optimal,
    // throws LpUnbounded (via out flag) when a ray is found.
    enum class Step { optimal, pivoted, unbounded };

    Step step(std::size_t enter_limit, std::size_t* ray_col) {
        std::size_t e = enter_limit;
        for (std::size_t j = 0; j < enter_limit; ++j)
            if (obj[j] > 0) {
                e = j;
                break;
            }
        if (e == enter_limit) return Step::optimal;
        std::size_t r = k;
        Rat best;
        for (std::size_t i = 0; i < k; ++i) {
            if (t[i][e] <= 0) continue;
            Rat ratio = t[i][rhs()] / t[i][e];
            if (r == k || ratio < best || (ratio == best && basis[i] < basis[r])) {
                best = ratio;
                r = i;
            }
        }
        if (r == k) {
            if (ray_col) *ray_col = e;
            return Step::unbounded;
        }
        pivot(r, e);
        return Step::pivoted;
    }
};

} // namespace

LpResult solve_lp(const RatMatrix& a, const RatVec& b, const RatVec& c) {
    const std::size_t k = a.rows(), n = a.cols();
    if (b.size() != k || c.size() != n) throw DimMismatch("LP dimension mismatch");

    Tableau tab;
    tab.k = k;
    tab.n = n;
    tab.width = n + k + 1;
    tab.t.assign(k, RatVec(tab.width, Rat(0)));
    tab.basis.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sign * a(i, j);
        tab.t[i][n + i] = 1;
        tab.t[i][tab.rhs()] = sign * b[i];
        tab.basis[i] = n + i;
    }

    // Phase 1: drive the artificial variables to zero.
    tab.obj.assign(n + k, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < k; ++i) tab.obj[j] += tab.t[i][j];

    while (tab.step(n, nullptr) == Tableau::Step::pivoted) {
    }
    Rat art_sum = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (tab.basis[i] >= n) art_sum += tab.t[i][tab.rhs()];
    if (art_sum != 0) return LpResult{LpStatus::infeasible, {}, Rat(0), {}};

    // Remove artificials still basic at zero; full row rank guarantees a
    // pivot among the original columns.
    for (std::size_t i = 0; i < k; ++i) {
        if (tab.basis[i] < n) continue;
        std::size_t e = n;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.t[i][j] != 0) {
                e = j;
                break;
            }
        if (e == n) throw RankDeficient("LP constraint matrix is not of full row rank");
        tab.pivot(i, e);
    }

    // Phase 2.
    tab.obj.assign(n + k, Rat(0));
    for (std::size_t j = 0; j < n; ++j) tab.obj[j] = c[j];
    for (std::size_t i = 0; i < k; ++i) {
        Rat f = tab.obj[tab.basis[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < n + k; ++j) tab.obj[j] -= f * tab.t[i][j];
    }

    std::size_t ray_col = 0;
    while (true) {
        Tableau::Step s = tab.step(n, &ray_col);
        if (s == Tableau::Step::pivoted) continue;
        if (s == Tableau::Step::optimal) break;
        LpResult res;
        res.status = LpStatus::unbounded;
        res.ray.assign(n, Rat(0));
        res.ray[ray_col] = 1;
        for (std::size_t i = 0; i < k; ++i)
            if (tab.basis[i] < n) res.ray[tab.basis[i]] = -tab.t[i][ray_col];
        return res;
    }

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < k; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.rhs()];
    res.objective = 0;
    for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

} // namespace ilpk
