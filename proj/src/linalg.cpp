#include "ilpk/linalg.hpp"

#include <algorithm>

namespace ilpk {

namespace {

// One fraction-free (Bareiss) elimination pass. Returns the pivot column for
// each pivot row; entries stay integral throughout.
struct BareissState {
    IntMatrix m;
    int sign = 1;
    std::size_t pivots = 0;
    Int last_pivot = 1;
};

BareissState bareiss_eliminate(IntMatrix m) {
    BareissState st{std::move(m)};
    const std::size_t rows = st.m.rows(), cols = st.m.cols();
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && st.m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(st.m(p, j), st.m(r, j));
            st.sign = -st.sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Int num = st.m(r, c) * st.m(i, j) - st.m(i, c) * st.m(r, j);
                mpz_divexact(st.m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            st.m(i, c) = 0;
        }
        prev = st.m(r, c);
        ++r;
    }
    st.pivots = r;
    st.last_pivot = prev;
    return st;
}

} // namespace

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidShape("det requires a square matrix");
    if (m.rows() == 0) return Int(1);
    BareissState st = bareiss_eliminate(m);
    if (st.pivots < m.rows()) return Int(0);
    return st.sign < 0 ? Int(-st.last_pivot) : st.last_pivot;
}

Rat det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidShape("det requires a square matrix");
    if (m.rows() == 0) return Rat(1);
    // Clear denominators row by row, then run the integer path.
    IntMatrix mi(m.rows(), m.cols());
    Int scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) d = lcm_int(d, m(i, j).get_den());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat e = m(i, j) * to_rat(d);
            mi(i, j) = e.get_num();
        }
        scale *= d;
    }
    Rat r(det(mi), scale);
    r.canonicalize();
    return r;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidShape("inverse requires a square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw SingularMatrix("inverse of a singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rat piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    Int d = det(u);
    if (d != 1 && d != -1) throw InvalidShape("matrix is not unimodular");
    return to_int(inverse(to_rat(u)));
}

std::size_t rank(const IntMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss_eliminate(m).pivots;
}

std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    IntMatrix mi(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) d = lcm_int(d, m(i, j).get_den());
        for (std::size_t j = 0; j < m.cols(); ++j) mi(i, j) = Rat(m(i, j) * to_rat(d)).get_num();
    }
    return rank(mi);
}

HnfResult hnf(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidShape("hnf requires a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return {IntMatrix(0, 0), RatMatrix(0, 0)};

    // Scale to an integer matrix; U is unaffected by the scaling.
    Int d = common_denominator(m);
    IntMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = Rat(m(i, j) * to_rat(d)).get_num();

    // Maintain v with v * (d*m) = h; at the end U = v^{-1}.
    IntMatrix v = IntMatrix::identity(n);
    auto row_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(h(a, j), h(b, j));
            std::swap(v(a, j), v(b, j));
        }
    };
    auto row_neg = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = -h(i, j);
            v(i, j) = -v(i, j);
        }
    };

    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && h(p, c) == 0) ++p;
        if (p == n) throw SingularMatrix("hnf of a singular matrix");
        if (p != c) row_swap(c, p);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (h(i, c) == 0) continue;
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(c, c).get_mpz_t(),
                       h(i, c).get_mpz_t());
            Int a = h(c, c) / g, b = h(i, c) / g;
            // unimodular 2x2 row operation [[s, t], [-b, a]]
            for (std::size_t j = 0; j < n; ++j) {
                Int hc = s * h(c, j) + t * h(i, j);
                Int hi = -b * h(c, j) + a * h(i, j);
                h(c, j) = hc;
                h(i, j) = hi;
                Int vc = s * v(c, j) + t * v(i, j);
                Int vi = -b * v(c, j) + a * v(i, j);
                v(c, j) = vc;
                v(i, j) = vi;
            }
        }
        if (h(c, c) < 0) row_neg(c);
    }

    // Reduce above-diagonal entries: 0 <= h(i,j) < h(j,j) for i < j.
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(j, j).get_mpz_t());
            if (q == 0) continue;
            for (std::size_t l = j; l < n; ++l) h(i, l) -= q * h(j, l);
            for (std::size_t l = 0; l < n; ++l) v(i, l) -= q * v(j, l);
        }

    HnfResult res;
    res.U = inverse_unimodular(v);
    res.H = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat e(h(i, j), d);
            e.canonicalize();
            res.H(i, j) = e;
        }
    return res;
}

LdlResult ldl(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidShape("ldl requires a square matrix");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, j) != m(j, i)) throw std::invalid_argument("ldl requires a symmetric matrix");

    // Classic lower-triangular elimination; stored transposed at the end so
    // that input = L^T D L with L upper unit-triangular.
    RatMatrix lc = RatMatrix::identity(n);
    RatVec diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat di = m(i, i);
        for (std::size_t p = 0; p < i; ++p) di -= lc(i, p) * lc(i, p) * diag[p];
        if (di <= 0) throw NotPositiveDefinite("ldl pivot is not positive");
        diag[i] = di;
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat s = m(j, i);
            for (std::size_t p = 0; p < i; ++p) s -= lc(j, p) * lc(i, p) * diag[p];
            lc(j, i) = s / di;
        }
    }
    return {lc.transposed(), std::move(diag)};
}

} // namespace ilpk
