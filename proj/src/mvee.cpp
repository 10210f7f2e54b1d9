#include "ilpk/mvee.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace ilpk {

Rat quad_form(const RatMatrix& w, const RatVec& a) {
    if (w.rows() != a.size() || w.cols() != a.size())
        throw DimMismatch("quad_form dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < w.cols(); ++j) {
            if (a[j] == 0) continue;
            s += a[i] * w(i, j) * a[j];
        }
    }
    return s;
}

namespace {

void validate_points(const PointSet& pts) {
    if (pts.dim < 1) throw InvalidShape("point set dimension must be >= 1");
    if (pts.points.size() < pts.dim)
        throw DegeneratePoints("need at least dim points to span the space");
    for (const auto& a : pts.points)
        if (a.size() != pts.dim) throw DimMismatch("point dimension mismatch");
    RatMatrix m(pts.dim, pts.points.size());
    for (std::size_t j = 0; j < pts.points.size(); ++j)
        for (std::size_t i = 0; i < pts.dim; ++i) m(i, j) = pts.points[j][i];
    if (rank(m) < pts.dim) throw DegeneratePoints("points do not span the space");
}

using DVec = std::vector<double>;
using DMat = std::vector<DVec>;

DMat dmat(std::size_t n) { return DMat(n, DVec(n, 0.0)); }

// Plain Gauss-Jordan; k <= 8 so nothing clever is needed.
DMat inv_double(DMat a) {
    const std::size_t n = a.size();
    DMat inv = dmat(n);
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
        if (std::fabs(a[p][c]) < 1e-300)
            throw std::runtime_error("enclosing ellipsoid: numerically singular moment matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        double piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0.0) continue;
            double f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

Rat rationalize(double x, const Rat& tol) {
    if (x == 0.0 || !std::isfinite(x)) return Rat(0);
    Rat exact(x); // exact binary value of the double
    return simplify_rat(exact, tol);
}

struct AscentState {
    std::vector<double> u;
    DMat minv;
    double relgap = 0;
};

// Dual coordinate ascent: shift weight toward the point of largest
// Mahalanobis norm until max_i a_i^T M(u)^{-1} a_i <= k (1 + target).
void ascend(const std::vector<DVec>& a, std::size_t k, double target_relgap,
            unsigned long max_iter, unsigned long& used_iter, AscentState& st) {
    const std::size_t n = a.size();
    if (st.u.empty()) st.u.assign(n, 1.0 / static_cast<double>(n));
    for (; used_iter < max_iter; ++used_iter) {
        DMat m = dmat(k);
        for (std::size_t i = 0; i < n; ++i) {
            if (st.u[i] <= 0.0) continue;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) m[r][c] += st.u[i] * a[i][r] * a[i][c];
        }
        st.minv = inv_double(m);
        double gmax = 0.0;
        std::size_t imax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double g = 0.0;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) g += a[i][r] * st.minv[r][c] * a[i][c];
            if (g > gmax) {
                gmax = g;
                imax = i;
            }
        }
        st.relgap = gmax / static_cast<double>(k) - 1.0;
        if (st.relgap <= target_relgap) return;
        double beta = (gmax - k) / (k * (gmax - 1.0));
        if (!(beta > 0.0) || !(beta < 1.0)) return; // numerically stuck
        for (std::size_t i = 0; i < n; ++i) st.u[i] *= (1.0 - beta);
        st.u[imax] += beta;
    }
}

} // namespace

RationalEllipsoid solve_mvee(const PointSet& pts, const Rat& eps, const MveeOptions& opts) {
    if (eps <= 0) throw std::invalid_argument("solve_mvee requires eps > 0");
    validate_points(pts);
    const std::size_t k = pts.dim;
    const std::size_t n = pts.points.size();

    std::vector<DVec> af(n, DVec(k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) af[i][j] = pts.points[i][j].get_d();

    const Rat two_eps = 2 * eps;
    const Rat exp2eps_lo = exp_lower_rat(two_eps);

    double target = eps.get_d() / static_cast<double>(k);
    unsigned long used_iter = 0;
    AscentState st;

    RationalEllipsoid best;
    bool have_best = false;

    for (int attempt = 0; attempt < 8; ++attempt) {
        ascend(af, k, target, opts.max_iterations, used_iter, st);

        // W0 = M(u)^{-1} / gmax is feasible up to float error; the exact
        // shrink below removes that error entirely.
        double gmax = (st.relgap + 1.0) * static_cast<double>(k);
        long bits = 24 + 8 * attempt;
        Rat tol = pow_rat(make_rat(1, 2), static_cast<unsigned long>(bits));

        RatMatrix w(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = r; c < k; ++c) {
                Rat e = rationalize(st.minv[r][c] / gmax, tol);
                w(r, c) = e;
                w(c, r) = e;
            }

        Rat smax = 0;
        for (const auto& a : pts.points) {
            Rat q = quad_form(w, a);
            if (q > smax) smax = q;
        }
        if (smax <= 0) continue;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) w(r, c) /= smax;

        try {
            ldl(w); // exact positive-definiteness check
        } catch (const NotPositiveDefinite&) {
            target /= 4;
            continue;
        }

        // Exact dual candidate: nonnegative, sums to k.
        RatVec c(n);
        Rat usum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Rat ui = st.u[i] > 0 ? rationalize(st.u[i], tol) : Rat(0);
            if (ui < 0) ui = 0;
            c[i] = ui;
            usum += ui;
        }
        if (usum <= 0) continue;
        for (auto& ci : c) ci = ci * Rat(static_cast<long>(k)) / usum;

        RatMatrix dual(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t cc = 0; cc < k; ++cc)
                    dual(r, cc) += c[i] * pts.points[i][r] * pts.points[i][cc];
        }
        Rat det_w = det(w);
        Rat det_dual = det(dual);
        if (det_w <= 0 || det_dual <= 0) {
            target /= 4;
            continue;
        }

        RationalEllipsoid out;
        out.W_hat = std::move(w);
        out.dual_weights = std::move(c);

        // gap = ln(1 / (det_w * det_dual)); certify the smallest grid bound.
        Rat lambda = 1 / (det_w * det_dual);
        Rat g = 0;
        const Rat step = make_rat(1, 64);
        while (exp_lower_rat(g) < lambda && g < two_eps + 8) g += step;
        out.gap_bound = g;

        if (det_w * det_dual * exp2eps_lo >= 1) return out; // certified <= 2*eps

        best = std::move(out);
        have_best = true;
        target /= 4;
        if (used_iter >= opts.max_iterations) break;
    }

    if (have_best) return best; // iteration cap reached; gap_bound records what was achieved
    throw std::runtime_error("solve_mvee failed to produce a feasible rational ellipsoid");
}

TriangularFactor round_to_triangular(const RationalEllipsoid& e, const PointSet& pts,
                                     const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("round_to_triangular requires eps > 0");
    const std::size_t k = e.W_hat.rows();
    LdlResult f = ldl(e.W_hat); // throws NotPositiveDefinite

    // d_i in [e^{-eps/(2k)} sqrt(D_ii), sqrt(D_ii)]: half the allowed loss,
    // leaving headroom for the final scale.
    Rat shrink = 1 / exp_lower_rat(eps / Rat(2 * static_cast<long>(k)));
    RatVec dprime(k);
    for (std::size_t i = 0; i < k; ++i) dprime[i] = rational_sqrt_lower(f.D[i], shrink);

    RatMatrix c0(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) c0(i, j) = dprime[i] * f.L(i, j);

    const Rat det_w = det(e.W_hat);
    // rational r >= e^{-2 eps}: (det C)^2 >= r * det_w certifies the bound
    const Rat bound = 1 / exp_lower_rat(2 * eps);
    const Rat scale_shrink = 1 / exp_lower_rat(eps / Rat(8 * static_cast<long>(k)));

    // Simplify off-diagonal entries to keep denominators small, then rescale
    // so containment is exact. Every candidate is verified exactly; the raw
    // factor (last round) always passes.
    std::vector<long> tolbits = {8, 16, 24, 32, 48, -1};
    for (long tb : tolbits) {
        RatMatrix c = c0;
        if (tb > 0) {
            Rat tol = pow_rat(make_rat(1, 2), static_cast<unsigned long>(tb));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) c(i, j) = simplify_rat(c0(i, j), tol);
        }
        Rat smax = 0;
        for (const auto& a : pts.points) {
            RatVec ca(k, Rat(0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i; j < k; ++j) ca[i] += c(i, j) * a[j];
            Rat q = 0;
            for (const auto& v : ca) q += v * v;
            if (q > smax) smax = q;
        }
        // Only ever scale down: keeps det C <= sqrt(det W_hat) structurally.
        Rat t = 1;
        if (smax > 1) t = rational_sqrt_lower(1 / smax, scale_shrink);
        if (t > 1) t = 1;
        if (t != 1)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i; j < k; ++j) c(i, j) *= t;

        // exact containment check
        bool ok = true;
        for (const auto& a : pts.points) {
            RatVec ca(k, Rat(0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i; j < k; ++j) ca[i] += c(i, j) * a[j];
            Rat q = 0;
            for (const auto& v : ca) q += v * v;
            if (q > 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Rat det_c = 1;
        for (std::size_t i = 0; i < k; ++i) det_c *= c(i, i);
        if (det_c <= 0) continue;
        if (det_c * det_c >= bound * det_w) return {std::move(c), eps};
    }
    throw std::logic_error("round_to_triangular could not certify the determinant bound");
}

} // namespace ilpk
