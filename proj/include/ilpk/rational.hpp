#pragma once

// Exact scalar arithmetic: arbitrary-precision integers and rationals (GMP)
// plus the handful of certified rational bounds (exp, sqrt, k-th root) that
// let every inequality in the solver be decided without floating point.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ilpk/errors.hpp"

namespace ilpk {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat to_rat(const Int& z) { return Rat(z); }

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r = 1;
    Rat b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// floor(sqrt(z)) for z >= 0.
inline Int isqrt_floor(const Int& z) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

/// Smallest integer t with t^k >= z (z >= 0, k >= 1).
inline Int kth_root_ceil(const Int& z, unsigned long k) {
    Int r;
    mpz_root(r.get_mpz_t(), z.get_mpz_t(), k); // floor root
    if (pow_int(r, k) < z) ++r;
    return r;
}

/// Rational lower/upper bounds on sqrt(x) for x > 0, tight to ~2^-bits relative.
Rat sqrt_lower_rat(const Rat& x, unsigned bits);
Rat sqrt_upper_rat(const Rat& x, unsigned bits);

/// Certified rational bounds on exp(t). `t` may be any rational.
/// Guarantees exp_lower_rat(t) <= e^t <= exp_upper_rat(t) exactly.
Rat exp_lower_rat(const Rat& t);
Rat exp_upper_rat(const Rat& t);

/// The rational with smallest denominator (then smallest numerator) in [lo, hi].
/// Requires lo <= hi.
Rat simplest_rat_in(const Rat& lo, const Rat& hi);

/// Simplify x to a nearby rational with small denominator:
/// result lies in [x*(1-tol), x*(1+tol)] for x >= 0 (mirrored for x < 0).
Rat simplify_rat(const Rat& x, const Rat& tol);

/// r with rho*sqrt(x) <= r <= sqrt(x); throws NonPositiveInput for x <= 0,
/// requires 0 < rho < 1.
Rat rational_sqrt_lower(const Rat& x, const Rat& rho);

/// Checked narrowing to int64; throws std::overflow_error when out of range.
std::int64_t to_i64(const Int& z);

} // namespace ilpk
