#include "ilpk/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace ilpk {

namespace {

Int binom(std::int64_t n, std::int64_t k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace

OracleResult ilp_brute(const IntMatrix& a, const IntVec& b, const IntVec& c,
                       const OracleBudget& budget) {
    const std::size_t k = a.rows(), n = a.cols();
    if (b.size() != k || c.size() != n) throw DimMismatch("oracle dimension mismatch");
    if (budget.max_l1 < 0) throw std::invalid_argument("budget must be nonnegative");

    // Total candidates: compositions of every mass up to max_l1.
    Int total = binom(budget.max_l1 + static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
    if (total > budget.max_subsets) throw BudgetExceeded("ilp_brute candidate count over budget");

    OracleResult best;
    IntVec x(n, Int(0));
    IntVec ax(k, Int(0));

    auto consider = [&]() {
        for (std::size_t i = 0; i < k; ++i)
            if (ax[i] != b[i]) return;
        Int obj = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0) obj += c[j] * x[j];
        if (!best.feasible || obj > *best.objective) {
            best.feasible = true;
            best.objective = obj;
            best.x = x;
        }
    };

    // Odometer over compositions: sweep x[0] fastest; each increment/decrement
    // updates A x incrementally.
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t j, std::int64_t left) {
        if (j + 1 == n) {
            // last coordinate takes any value 0..left
            consider();
            for (std::int64_t v = 1; v <= left; ++v) {
                x[j] += 1;
                for (std::size_t i = 0; i < k; ++i) ax[i] += a(i, j);
                consider();
            }
            Int back(left);
            x[j] -= back;
            for (std::size_t i = 0; i < k; ++i) ax[i] -= back * a(i, j);
            return;
        }
        rec(j + 1, left);
        for (std::int64_t v = 1; v <= left; ++v) {
            x[j] += 1;
            for (std::size_t i = 0; i < k; ++i) ax[i] += a(i, j);
            rec(j + 1, left - v);
        }
        Int back(left);
        x[j] -= back;
        for (std::size_t i = 0; i < k; ++i) ax[i] -= back * a(i, j);
    };

    if (n == 0) {
        bool zero = std::all_of(b.begin(), b.end(), [](const Int& v) { return v == 0; });
        if (zero) {
            best.feasible = true;
            best.objective = Int(0);
        }
        return best;
    }
    rec(0, budget.max_l1);
    return best;
}

Rat disc_brute(const RatMatrix& m, const OracleBudget& budget) {
    const std::size_t k = m.rows(), n = m.cols();
    if (n > 20) throw BudgetExceeded("disc_brute supports at most 20 columns");
    (void)budget;
    if (n == 0) return Rat(0);

    // Gray-code walk over sign vectors, updating the row sums by one column
    // flip at a time.
    RatVec sums(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) sums[i] += m(i, j); // all signs +1

    auto norm_inf = [&]() {
        Rat v = 0;
        for (const auto& s : sums) {
            Rat a = abs_rat(s);
            if (a > v) v = a;
        }
        return v;
    };

    Rat best = norm_inf();
    const std::uint64_t count = std::uint64_t(1) << n;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < count; ++i) {
        std::uint64_t next = i ^ (i >> 1);
        std::uint64_t diff = gray ^ next;
        std::size_t j = static_cast<std::size_t>(__builtin_ctzll(diff));
        // flipping sign of column j changes sums by -2 s_j m_{*j}
        bool now_minus = (next >> j) & 1;
        Rat f = now_minus ? Rat(-2) : Rat(2);
        for (std::size_t r = 0; r < k; ++r) sums[r] += f * m(r, j);
        gray = next;
        Rat v = norm_inf();
        if (v < best) best = v;
    }
    return best;
}

Rat herdisc_brute(const RatMatrix& m, const OracleBudget& budget) {
    const std::size_t n = m.cols();
    if (n > 12) throw BudgetExceeded("herdisc_brute supports at most 12 columns");
    Rat best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n; ++j)
            if ((mask >> j) & 1) idx.push_back(j);
        Rat d = disc_brute(m.select_cols(idx), budget);
        if (d > best) best = d;
    }
    return best;
}

} // namespace ilpk
