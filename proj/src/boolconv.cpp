#include "ilpk/boolconv.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

namespace ilpk {

namespace {

std::int64_t linf(const I64Vec& x) {
    std::int64_t m = 0;
    for (auto v : x) m = std::max(m, v < 0 ? -v : v);
    return m;
}

struct VecHash {
    std::size_t operator()(const I64Vec& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v) {
            std::uint64_t u = static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            u = (u ^ (u >> 30)) * 0xbf58476d1ce4e5b9ull;
            u = (u ^ (u >> 27)) * 0x94d049bb133111ebull;
            h ^= u ^ (u >> 31) ^ (h << 6) ^ (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

void check_dims(const SparseBoolFn& a, const SparseBoolFn& b) {
    if (a.dim != b.dim) throw DimMismatch("convolution operands have different dimensions");
}

// Number of bits needed for q^k, without overflow.
bool universe_fits(std::int64_t q, std::size_t k, int bits, Int* out = nullptr) {
    Int u = pow_int(Int(q), static_cast<unsigned long>(k));
    if (out) *out = u;
    return mpz_sizeinbase(u.get_mpz_t(), 2) <= static_cast<std::size_t>(bits);
}

} // namespace

SparseBoolFn SparseBoolFn::from_support(std::size_t dim, std::vector<I64Vec> support) {
    SparseBoolFn f;
    f.dim = dim;
    for (const auto& v : support)
        if (v.size() != dim) throw DimMismatch("support element has wrong dimension");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    f.support = std::move(support);
    f.bound = 0;
    for (const auto& v : f.support) f.bound = std::max(f.bound, linf(v));
    return f;
}

SparseBoolFn convolve_naive(const SparseBoolFn& a, const SparseBoolFn& b) {
    check_dims(a, b);
    std::unordered_set<I64Vec, VecHash> out;
    out.reserve(a.support.size() * 2 + 1);
    I64Vec sum(a.dim);
    for (const auto& y : a.support)
        for (const auto& z : b.support) {
            for (std::size_t i = 0; i < a.dim; ++i) sum[i] = y[i] + z[i];
            out.insert(sum);
        }
    std::vector<I64Vec> support(out.begin(), out.end());
    return SparseBoolFn::from_support(a.dim, std::move(support));
}

Int encode_base_q(const I64Vec& x, std::int64_t l_bound) {
    if (linf(x) > l_bound) throw OutOfRange("vector exceeds the encoding bound");
    const Int q(4 * l_bound + 1);
    Int v = 0;
    for (std::size_t i = x.size(); i-- > 0;) v = v * q + Int(x[i] + l_bound);
    return v;
}

I64Vec decode_base_q(const Int& v, std::size_t dim, std::int64_t l_bound, std::int64_t offset) {
    const Int q(4 * l_bound + 1);
    I64Vec x(dim);
    Int rest = v;
    for (std::size_t i = 0; i < dim; ++i) {
        Int digit = rest % q;
        rest /= q;
        x[i] = to_i64(digit) - offset;
    }
    if (rest != 0) throw OutOfRange("encoded value exceeds the universe");
    return x;
}

namespace {

SparseBoolFn decode_sums(const std::vector<std::uint64_t>& sums, std::size_t dim,
                         std::int64_t l, std::int64_t q) {
    std::vector<I64Vec> support;
    support.reserve(sums.size());
    I64Vec x(dim);
    for (auto s : sums) {
        std::uint64_t rest = s;
        for (std::size_t i = 0; i < dim; ++i) {
            x[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(q)) - 2 * l;
            rest /= static_cast<std::uint64_t>(q);
        }
        support.push_back(x);
    }
    return SparseBoolFn::from_support(dim, std::move(support));
}

SparseBoolFn convolve_dense(const SparseBoolFn& a, const SparseBoolFn& b, std::int64_t l,
                            std::int64_t q, std::uint64_t universe) {
    // 0/1 sequence convolution by shifted word-parallel OR.
    const std::uint64_t out_size = 2 * universe - 1;
    const std::size_t words = static_cast<std::size_t>((out_size + 63) / 64);
    std::vector<std::uint64_t> bbits(static_cast<std::size_t>((universe + 63) / 64), 0);
    for (const auto& z : b.support) {
        std::uint64_t e = static_cast<std::uint64_t>(encode_base_q(z, l).get_ui());
        bbits[e >> 6] |= std::uint64_t(1) << (e & 63);
    }
    std::vector<std::uint64_t> out(words, 0);
    for (const auto& y : a.support) {
        std::uint64_t e = static_cast<std::uint64_t>(encode_base_q(y, l).get_ui());
        const std::size_t word_shift = e >> 6;
        const unsigned bit_shift = static_cast<unsigned>(e & 63);
        if (bit_shift == 0) {
            for (std::size_t w = 0; w < bbits.size(); ++w) out[w + word_shift] |= bbits[w];
        } else {
            std::uint64_t carry = 0;
            for (std::size_t w = 0; w < bbits.size(); ++w) {
                out[w + word_shift] |= (bbits[w] << bit_shift) | carry;
                carry = bbits[w] >> (64 - bit_shift);
            }
            if (carry) out[bbits.size() + word_shift] |= carry;
        }
    }
    std::vector<std::uint64_t> sums;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = out[w];
        while (bits) {
            unsigned tz = static_cast<unsigned>(__builtin_ctzll(bits));
            sums.push_back((static_cast<std::uint64_t>(w) << 6) + tz);
            bits &= bits - 1;
        }
    }
    return decode_sums(sums, a.dim, l, q);
}

SparseBoolFn convolve_sparse_u64(const SparseBoolFn& a, const SparseBoolFn& b, std::int64_t l,
                                 std::int64_t q) {
    std::vector<std::uint64_t> ea, eb;
    ea.reserve(a.support.size());
    eb.reserve(b.support.size());
    for (const auto& y : a.support) ea.push_back(encode_base_q(y, l).get_ui());
    for (const auto& z : b.support) eb.push_back(encode_base_q(z, l).get_ui());
    std::unordered_set<std::uint64_t> out;
    out.reserve(ea.size() + eb.size());
    for (auto x : ea)
        for (auto y : eb) out.insert(x + y);
    std::vector<std::uint64_t> sums(out.begin(), out.end());
    return decode_sums(sums, a.dim, l, q);
}

SparseBoolFn convolve_sparse_big(const SparseBoolFn& a, const SparseBoolFn& b, std::int64_t l) {
    std::vector<Int> ea, eb;
    for (const auto& y : a.support) ea.push_back(encode_base_q(y, l));
    for (const auto& z : b.support) eb.push_back(encode_base_q(z, l));
    std::vector<Int> sums;
    sums.reserve(ea.size() * eb.size());
    for (const auto& x : ea)
        for (const auto& y : eb) sums.push_back(x + y);
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    std::vector<I64Vec> support;
    support.reserve(sums.size());
    for (const auto& s : sums) support.push_back(decode_base_q(s, a.dim, l, 2 * l));
    return SparseBoolFn::from_support(a.dim, std::move(support));
}

} // namespace

SparseBoolFn convolve_encoded(const SparseBoolFn& a, const SparseBoolFn& b) {
    check_dims(a, b);
    if (a.support.empty() || b.support.empty()) return SparseBoolFn{a.dim, {}, 0};
    const std::int64_t l = std::max(a.bound, b.bound);
    const std::int64_t q = 4 * l + 1;

    Int universe;
    const bool native = universe_fits(q, a.dim, kNativeEncodingBits, &universe);
    if (native && universe <= kDenseUniverseLimit) {
        // Dense only pays off when the universe is not much larger than the
        // supports; otherwise the hashed sumset is cheaper.
        const std::uint64_t u = universe.get_ui();
        const std::uint64_t work_dense =
            a.support.size() * (u / 64 + 1) + u / 32;
        const std::uint64_t work_sparse = a.support.size() * b.support.size();
        if (work_dense < work_sparse) return convolve_dense(a, b, l, q, u);
    }
    if (native) return convolve_sparse_u64(a, b, l, q);
    return convolve_sparse_big(a, b, l);
}

} // namespace ilpk
