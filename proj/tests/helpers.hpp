#pragma once

// Shared helpers for the unit suites: matrix literals, independent
// brute-force oracles, and random generation off the project RNG.

#include <vector>

#include "ilpk/instance_io.hpp"
#include "ilpk/linalg.hpp"

namespace ilpk::test {

inline IntMatrix imat(std::size_t r, std::size_t c, std::vector<long> v) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(v[i * c + j]);
    return m;
}

inline RatMatrix qmat(std::size_t r, std::size_t c, std::vector<Rat> v) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = v[i * c + j];
    return m;
}

inline IntMatrix random_int_matrix(Rng& rng, std::size_t r, std::size_t c, long lo, long hi) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(rng.uniform(lo, hi));
    return m;
}

/// Cofactor (Laplace) expansion; the independent determinant oracle.
inline Int det_cofactor(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Int sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t col = 0; col < n; ++col) {
                if (col == j) continue;
                minor(r - 1, cc++) = m(r, col);
            }
        }
        Int term = m(0, j) * det_cofactor(minor);
        if (j % 2 == 1) term = -term;
        sum += term;
    }
    return sum;
}

inline bool is_identity(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

} // namespace ilpk::test
