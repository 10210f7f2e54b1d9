#include "ilpk/preconditioner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ilpk {

namespace {

// Squared volume of the parallelepiped spanned by the selected columns:
// det of the Gram matrix. Exact, so greedy comparisons cannot misorder.
Int gram_det(const IntMatrix& a, const std::vector<std::size_t>& sel) {
    const std::size_t m = sel.size();
    IntMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Int s = 0;
            for (std::size_t r = 0; r < a.rows(); ++r) s += a(r, sel[i]) * a(r, sel[j]);
            g(i, j) = s;
        }
    return det(g);
}

Int abs_det_cols(const IntMatrix& a, const std::vector<std::size_t>& sel) {
    Int d = det(a.select_cols(sel));
    return d < 0 ? Int(-d) : d;
}

void subsets_rec(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                 const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (cur.size() == k) {
        fn(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, fn);
        cur.pop_back();
    }
}

} // namespace

BasisSelection select_basis(const IntMatrix& a) {
    const std::size_t k = a.rows(), n = a.cols();
    if (rank(a) < k) throw RankDeficient("select_basis requires full row rank");

    std::vector<std::size_t> sel;
    std::vector<bool> used(n, false);
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t best = n;
        Int best_vol = -1;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            sel.push_back(j);
            Int vol = gram_det(a, sel);
            sel.pop_back();
            if (vol > best_vol) {
                best_vol = vol;
                best = j;
            }
        }
        if (best == n || best_vol == 0)
            throw RankDeficient("select_basis: no volume-increasing column found");
        sel.push_back(best);
        used[best] = true;
    }

    // Single-swap local search; |det| strictly increases, so this terminates.
    Int cur = abs_det_cols(a, sel);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t pos = 0; pos < k && !improved; ++pos) {
            for (std::size_t j = 0; j < n && !improved; ++j) {
                if (used[j]) continue;
                std::size_t old = sel[pos];
                sel[pos] = j;
                Int cand = abs_det_cols(a, sel);
                if (cand > cur) {
                    used[old] = false;
                    used[j] = true;
                    cur = cand;
                    improved = true;
                } else {
                    sel[pos] = old;
                }
            }
        }
    }

    BasisSelection b;
    b.indices = sel;
    b.det_abs = Rat(cur);
    return b;
}

LdPreconditioner build_preconditioner(const IntMatrix& a, const Rat& eps) {
    const std::size_t k = a.rows(), n = a.cols();
    BasisSelection basis = select_basis(a); // throws RankDeficient

    RatMatrix a_delta = to_rat(a.select_cols(basis.indices));
    RatMatrix a_delta_inv = inverse(a_delta);
    RatMatrix m0 = a_delta_inv * to_rat(a); // contains an identity submatrix

    PointSet pts;
    pts.dim = k;
    pts.points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) pts.points.push_back(m0.col(j));

    RationalEllipsoid ell = solve_mvee(pts, eps);
    TriangularFactor fac = round_to_triangular(ell, pts, eps);

    LdPreconditioner pre;
    pre.eps = eps;
    pre.basis = std::move(basis);
    pre.ellipsoid = std::move(ell);

    RatMatrix b = inverse(fac.C);     // upper triangular, positive diagonal
    pre.B_prime = a_delta * b;
    pre.delta = abs_rat(det(pre.B_prime));
    pre.M = fac.C * m0;               // = B'^{-1} A, columns have norm <= 1 exactly

    HnfResult h = hnf(pre.B_prime);   // B' = U0 * H
    pre.U = inverse_unimodular(h.U);  // U * B' = H_enum
    pre.H_enum = std::move(h.H);

    // Construction guarantees: unit columns and diagonal >= 1. Verify exactly
    // rather than trusting the derivation.
    for (std::size_t j = 0; j < n; ++j) {
        Rat norm2 = 0;
        for (std::size_t i = 0; i < k; ++i) norm2 += pre.M(i, j) * pre.M(i, j);
        if (norm2 > 1) throw std::logic_error("preconditioner column norm exceeds 1");
    }
    for (std::size_t i = 0; i < k; ++i)
        if (pre.H_enum(i, i) < 1) throw std::logic_error("enumeration form diagonal below 1");
    return pre;
}

Int delta_exact(const IntMatrix& a) {
    const std::size_t k = a.rows(), n = a.cols();
    if (n < k) throw RankDeficient("delta_exact requires n >= k");
    Int best = 0;
    std::vector<std::size_t> cur;
    subsets_rec(n, k, 0, cur, [&](const std::vector<std::size_t>& sel) {
        Int d = abs_det_cols(a, sel);
        if (d > best) best = d;
    });
    if (best == 0) throw RankDeficient("delta_exact: all maximal minors vanish");
    return best;
}

} // namespace ilpk
