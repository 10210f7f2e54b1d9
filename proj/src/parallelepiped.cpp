#include "ilpk/parallelepiped.hpp"

namespace ilpk {

namespace {

void validate(const Parallelepiped& p) {
    const std::size_t n = p.H.rows();
    if (p.H.cols() != n) throw InvalidShape("parallelepiped matrix must be square");
    if (p.r.size() != n) throw InvalidShape("offset dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (p.H(i, i) <= 0) throw InvalidShape("diagonal entry must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (p.H(i, j) != 0) throw InvalidShape("matrix must be upper triangular");
    }
}

// Integer range of coordinate m given tau = r_m + sum_{j>m} H_mj t_j:
// half-open admits integers in [tau, tau + H_mm), closed in [tau, tau + H_mm].
void coord_range(const Parallelepiped& p, std::size_t m, const Rat& tau, Int& lo, Int& hi) {
    lo = ceil_rat(tau);
    Rat end = tau + p.H(m, m);
    if (p.closure == Closure::half_open) {
        hi = ceil_rat(end) - 1; // last integer strictly below end
    } else {
        hi = floor_rat(end);
    }
}

// Depth-first walk, fixing coordinates n-1, n-2, ..., 0. `ts` holds the
// recovered t_j for already-fixed coordinates.
bool walk(const Parallelepiped& p, std::size_t m, IntVec& y, RatVec& ts, const PointSink& sink) {
    Rat tau = p.r[m];
    for (std::size_t j = m + 1; j < p.H.cols(); ++j)
        if (p.H(m, j) != 0) tau += p.H(m, j) * ts[j];
    Int lo, hi;
    coord_range(p, m, tau, lo, hi);
    for (Int ym = lo; ym <= hi; ++ym) {
        y[m] = ym;
        if (m == 0) {
            if (!sink(y)) return false;
        } else {
            ts[m] = (to_rat(ym) - tau) / p.H(m, m);
            if (!walk(p, m - 1, y, ts, sink)) return false;
        }
    }
    return true;
}

Int count_walk(const Parallelepiped& p, std::size_t m, RatVec& ts) {
    Rat tau = p.r[m];
    for (std::size_t j = m + 1; j < p.H.cols(); ++j)
        if (p.H(m, j) != 0) tau += p.H(m, j) * ts[j];
    Int lo, hi;
    coord_range(p, m, tau, lo, hi);
    if (hi < lo) return Int(0);
    if (m == 0) return Int(hi - lo + 1);
    Int total = 0;
    for (Int ym = lo; ym <= hi; ++ym) {
        ts[m] = (to_rat(ym) - tau) / p.H(m, m);
        total += count_walk(p, m - 1, ts);
    }
    return total;
}

} // namespace

void enumerate_points(const Parallelepiped& p, const PointSink& sink) {
    validate(p);
    const std::size_t n = p.H.rows();
    if (n == 0) return;
    IntVec y(n);
    RatVec ts(n);
    walk(p, n - 1, y, ts, sink);
}

std::vector<IntVec> collect_points(const Parallelepiped& p) {
    std::vector<IntVec> pts;
    enumerate_points(p, [&](const IntVec& y) {
        pts.push_back(y);
        return true;
    });
    return pts;
}

Int count_points(const Parallelepiped& p) {
    validate(p);
    const std::size_t n = p.H.rows();
    if (n == 0) return Int(0);
    RatVec ts(n);
    return count_walk(p, n - 1, ts);
}

bool contains(const Parallelepiped& p, const IntVec& x) {
    validate(p);
    const std::size_t n = p.H.rows();
    if (x.size() != n) throw InvalidShape("point dimension mismatch");
    RatVec t(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rat tau = p.r[ii];
        for (std::size_t j = ii + 1; j < n; ++j) tau += p.H(ii, j) * t[j];
        Rat ti = (to_rat(x[ii]) - tau) / p.H(ii, ii);
        if (ti < 0) return false;
        if (p.closure == Closure::half_open ? ti >= 1 : ti > 1) return false;
        t[ii] = ti;
    }
    return true;
}

} // namespace ilpk
