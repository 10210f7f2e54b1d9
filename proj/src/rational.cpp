#include "ilpk/rational.hpp"

#include <limits>

namespace ilpk {

Rat sqrt_lower_rat(const Rat& x, unsigned bits) {
    if (x <= 0) throw NonPositiveInput("sqrt bound requires x > 0");
    // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits so the integer sqrt carries
    // `bits` extra binary digits.
    Int p = x.get_num(), q = x.get_den();
    Int scale = pow_int(Int(2), bits);
    Int s = isqrt_floor(p * q * scale * scale);
    Rat r(s, q * scale);
    r.canonicalize();
    return r;
}

Rat sqrt_upper_rat(const Rat& x, unsigned bits) {
    if (x <= 0) throw NonPositiveInput("sqrt bound requires x > 0");
    Int p = x.get_num(), q = x.get_den();
    Int scale = pow_int(Int(2), bits);
    Int s = isqrt_floor(p * q * scale * scale) + 1;
    Rat r(s, q * scale);
    r.canonicalize();
    return r;
}

namespace {

// exp on [0,1] by Taylor series. Terms beyond N are bounded by twice the
// first dropped term (ratio <= 1/2 once m >= 1).
constexpr int kExpTerms = 24;

void exp01_bounds(const Rat& t, Rat& lo, Rat& up) {
    Rat sum = 1;
    Rat term = 1;
    for (int m = 1; m <= kExpTerms; ++m) {
        term *= t;
        term /= m;
        sum += term;
    }
    Rat next = term * t / (kExpTerms + 1);
    lo = sum;
    up = sum + 2 * next;
}

} // namespace

Rat exp_lower_rat(const Rat& t) {
    if (t < 0) return 1 / exp_upper_rat(-t);
    if (t == 0) return 1;
    // Halve until <= 1, then square the bound back up (monotone for values >= 0).
    unsigned halvings = 0;
    Rat s = t;
    while (s > 1) {
        s /= 2;
        ++halvings;
    }
    Rat lo, up;
    exp01_bounds(s, lo, up);
    for (unsigned i = 0; i < halvings; ++i) lo *= lo;
    return lo;
}

Rat exp_upper_rat(const Rat& t) {
    if (t < 0) return 1 / exp_lower_rat(-t);
    if (t == 0) return 1;
    unsigned halvings = 0;
    Rat s = t;
    while (s > 1) {
        s /= 2;
        ++halvings;
    }
    Rat lo, up;
    exp01_bounds(s, lo, up);
    for (unsigned i = 0; i < halvings; ++i) up *= up;
    return up;
}

Rat simplest_rat_in(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rat_in: empty interval");
    if (lo <= 0 && 0 <= hi) return Rat(0);
    if (hi < 0) return -simplest_rat_in(-hi, -lo);
    // 0 < lo <= hi: continued-fraction walk.
    Rat a = lo, b = hi;
    // Interval endpoints as continued fractions; whenever an integer lies in
    // [a,b] the smallest one wins.
    std::vector<Int> digits;
    while (true) {
        Int fa = ceil_rat(a);
        if (to_rat(fa) <= b) {
            digits.push_back(fa);
            break;
        }
        Int fl = floor_rat(a);
        digits.push_back(fl);
        // recurse on 1/(b - fl), 1/(a - fl)
        Rat na = 1 / (b - to_rat(fl));
        Rat nb = 1 / (a - to_rat(fl));
        a = na;
        b = nb;
    }
    // Fold the continued fraction back up.
    Rat r = to_rat(digits.back());
    for (auto it = digits.rbegin() + 1; it != digits.rend(); ++it)
        r = to_rat(*it) + 1 / r;
    return r;
}

Rat simplify_rat(const Rat& x, const Rat& tol) {
    if (x == 0) return x;
    Rat lo = x * (1 - tol), hi = x * (1 + tol);
    if (x < 0) std::swap(lo, hi);
    return simplest_rat_in(lo, hi);
}

Rat rational_sqrt_lower(const Rat& x, const Rat& rho) {
    if (x <= 0) throw NonPositiveInput("rational_sqrt_lower requires x > 0");
    if (rho <= 0 || rho >= 1)
        throw std::invalid_argument("rational_sqrt_lower requires 0 < rho < 1");
    for (unsigned bits = 8;; bits *= 2) {
        Rat up = sqrt_upper_rat(x, bits);
        Rat lo = sqrt_lower_rat(x, bits);
        Rat a = rho * up; // >= rho*sqrt(x)
        if (a > lo) continue; // interval not yet resolved; refine
        Rat r = simplest_rat_in(a, lo);
        // exact certificates: r <= sqrt(x) and rho*sqrt(x) <= r
        if (r * r <= x && rho * rho * x <= r * r) return r;
        // fall through and refine (can only happen while bits are too coarse)
        if (bits > 4096) throw std::logic_error("rational_sqrt_lower failed to converge");
    }
}

std::int64_t to_i64(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds 64-bit range");
    long v = z.get_si();
    return static_cast<std::int64_t>(v);
}

} // namespace ilpk
