#pragma once

// Sparse Boolean convolution on Z^k supports: the result support is the
// sumset {y + z : y in supp(a), z in supp(b)}. The accelerated backend packs
// vectors through the carry-free base-q encoding (q = 4L + 1) and convolves
// one-dimensional 0/1 sequences; a naive double loop serves as the oracle.

#include <cstdint>
#include <vector>

#include "ilpk/rational.hpp"

namespace ilpk {

using I64Vec = std::vector<std::int64_t>;

struct SparseBoolFn {
    std::size_t dim = 0;
    std::vector<I64Vec> support; // duplicate-free; kept sorted lexicographically
    std::int64_t bound = 0;      // max l-infinity norm over the support

    static SparseBoolFn from_support(std::size_t dim, std::vector<I64Vec> support);
};

/// Reference backend: double loop over supp(a) x supp(b) with dedup.
SparseBoolFn convolve_naive(const SparseBoolFn& a, const SparseBoolFn& b);

/// phi(x) = sum_i (x_i + L) q^{i-1} with q = 4L + 1; injective on [-L, L]^k
/// and additive without carries. Throws OutOfRange when |x|_inf > L.
Int encode_base_q(const I64Vec& x, std::int64_t l_bound);

/// Inverse of encode_base_q on sums: digits of v in base q, minus `offset`
/// per coordinate.
I64Vec decode_base_q(const Int& v, std::size_t dim, std::int64_t l_bound, std::int64_t offset);

/// Accelerated backend via base-q encoding; picks a dense bitset convolution
/// when the encoded universe is small, otherwise a hashed sumset (64-bit
/// fast path, arbitrary precision beyond). Result equals convolve_naive.
SparseBoolFn convolve_encoded(const SparseBoolFn& a, const SparseBoolFn& b);

/// Module constants: dense path ceiling on q^k (bits of universe) and the
/// native-width cutoff for encodings.
constexpr std::int64_t kDenseUniverseLimit = std::int64_t(1) << 24;
constexpr int kNativeEncodingBits = 62;

} // namespace ilpk
