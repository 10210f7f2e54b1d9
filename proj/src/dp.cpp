#include "ilpk/dp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <cstring>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "ilpk/parallelepiped.hpp"

namespace ilpk {

std::int64_t choose_eta(const LdPreconditioner& pre, DpConfig::Eta policy,
                        std::int64_t explicit_value) {
    const long k = static_cast<long>(pre.M.rows());
    switch (policy) {
        case DpConfig::Eta::safe: {
            // smallest integer eta with eta^2 >= 4k, i.e. eta >= 2 sqrt(k)
            Int t = isqrt_floor(Int(4 * k));
            if (t * t < 4 * k) ++t;
            return to_i64(t);
        }
        case DpConfig::Eta::aggressive: {
            double v = 2.0 * std::sqrt(std::log(static_cast<double>(k) + 2.0));
            auto r = static_cast<std::int64_t>(std::ceil(v));
            return std::max<std::int64_t>(1, r);
        }
        case DpConfig::Eta::explicit_value:
            if (explicit_value < 1) throw std::invalid_argument("explicit eta must be >= 1");
            return explicit_value;
    }
    throw std::logic_error("unreachable");
}

namespace {

RhoChoice choose_rho_impl(const IlpInstance& inst, const Rat& delta_bound, DpConfig::Rho policy,
                          int explicit_rho, std::int64_t c_chi, std::int64_t c_rho,
                          const LpResult* cached_lp) {
    const std::size_t k = inst.A.rows();
    RhoChoice out;
    if (policy == DpConfig::Rho::explicit_value) {
        if (explicit_rho < 1) throw std::invalid_argument("explicit rho must be >= 1");
        out.rho = explicit_rho;
        out.shift_y.assign(inst.A.cols(), Int(0));
        out.shifted = inst;
        return out;
    }

    LpResult lp;
    if (cached_lp) {
        lp = *cached_lp;
    } else {
        lp = solve_lp(to_rat(inst.A), to_rat(inst.b), to_rat(inst.c));
    }
    if (lp.status == LpStatus::infeasible)
        throw LpInfeasible("LP relaxation is infeasible");
    if (lp.status == LpStatus::unbounded)
        throw LpUnbounded("LP relaxation is unbounded");

    // chi = ceil(c_chi k^2 D D^{1/k}) with D the provided determinant bound.
    if (delta_bound < 1) throw std::invalid_argument("delta bound must be >= 1");
    Int root = kth_root_ceil(ceil_rat(delta_bound), static_cast<unsigned long>(k));
    Rat chi_r = Rat(c_chi) * Rat(static_cast<long>(k * k)) * delta_bound * to_rat(root);
    Int chi = ceil_rat(chi_r);

    out.lp_vertex = lp.x;
    out.shift_y.resize(inst.A.cols());
    for (std::size_t j = 0; j < inst.A.cols(); ++j) {
        Int yi = ceil_rat(lp.x[j]) - chi;
        out.shift_y[j] = yi > 0 ? yi : Int(0);
    }
    out.shifted = inst;
    IntVec ay = inst.A * out.shift_y;
    for (std::size_t i = 0; i < k; ++i) out.shifted.b[i] = inst.b[i] - ay[i];

    Rat target = Rat(c_rho) * Rat(static_cast<long>(k)) * to_rat(chi);
    Rat pw = make_rat(6, 5);
    Rat acc = pw;
    int rho = 1;
    while (acc < target) {
        acc *= pw;
        ++rho;
    }
    out.rho = rho;
    return out;
}

} // namespace

RhoChoice choose_rho(const IlpInstance& inst, const Rat& delta_bound, DpConfig::Rho policy,
                     int explicit_rho, std::int64_t c_chi, std::int64_t c_rho) {
    return choose_rho_impl(inst, delta_bound, policy, explicit_rho, c_chi, c_rho, nullptr);
}

namespace {

// Window B_j as a closed parallelepiped in the triangular coordinates:
// x in B_j  <=>  U x in U r + (8 eta H_enum) [0,1]^k,  r = b/2^j - 4 eta B' 1.
Parallelepiped window_par(int j, const LdPreconditioner& pre, const IntVec& b,
                          std::int64_t eta) {
    const std::size_t k = pre.B_prime.rows();
    Rat pow2 = pow_rat(Rat(2), static_cast<unsigned long>(j));
    RatVec r(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rat row_sum = 0;
        for (std::size_t l = 0; l < k; ++l) row_sum += pre.B_prime(i, l);
        r[i] = to_rat(b[i]) / pow2 - Rat(4 * eta) * row_sum;
    }
    RatVec ru = to_rat(pre.U) * r;
    Parallelepiped par;
    par.H = RatMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) par.H(i, l) = Rat(8 * eta) * pre.H_enum(i, l);
    par.r = ru;
    par.closure = Closure::closed;
    return par;
}

} // namespace

std::vector<IntVec> build_window(int j, const LdPreconditioner& pre, const IntVec& b,
                                 std::int64_t eta) {
    Parallelepiped par = window_par(j, pre, b, eta);
    IntMatrix uinv = inverse_unimodular(pre.U);
    std::vector<IntVec> out;
    enumerate_points(par, [&](const IntVec& y) {
        out.push_back(uinv * y);
        return true;
    });
    return out;
}

Int count_window(int j, const LdPreconditioner& pre, const IntVec& b, std::int64_t eta) {
    return count_points(window_par(j, pre, b, eta));
}

// ---------------------------------------------------------------------------
// 64-bit DP engine
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kKeyBound = std::int64_t(1) << 30;
constexpr std::size_t kMaxStoredStates = std::size_t(4) << 20; // per-level memory guard

std::uint64_t mix64(std::uint64_t u) {
    u += 0x9e3779b97f4a7c15ull;
    u = (u ^ (u >> 30)) * 0xbf58476d1ce4e5b9ull;
    u = (u ^ (u >> 27)) * 0x94d049bb133111ebull;
    return u ^ (u >> 31);
}

std::uint64_t hash_key(const std::int64_t* key, std::size_t k) {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (std::size_t i = 0; i < k; ++i) h = mix64(h ^ static_cast<std::uint64_t>(key[i]));
    return h;
}

// Open-addressing map from state key to (value, witness split). The winner
// per key is max by value, ties by smaller first then second witness index,
// which makes results independent of insertion order.
struct StateTable {
    std::size_t k = 0;
    std::vector<std::int32_t> slots; // -1 empty
    std::size_t mask = 0;
    std::vector<std::int64_t> keys;
    std::vector<std::int64_t> vals;
    std::vector<std::int32_t> wa, wb;

    void init(std::size_t dim, std::size_t expected) {
        k = dim;
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        slots.assign(cap, -1);
        mask = cap - 1;
        keys.clear();
        vals.clear();
        wa.clear();
        wb.clear();
    }

    std::size_t size() const { return vals.size(); }

    void grow() {
        std::size_t cap = slots.size() * 2;
        slots.assign(cap, -1);
        mask = cap - 1;
        for (std::size_t idx = 0; idx < vals.size(); ++idx) {
            std::size_t s = hash_key(&keys[idx * k], k) & mask;
            while (slots[s] != -1) s = (s + 1) & mask;
            slots[s] = static_cast<std::int32_t>(idx);
        }
    }

    void upsert_max(const std::int64_t* key, std::int64_t val, std::int32_t a, std::int32_t b) {
        std::size_t s = hash_key(key, k) & mask;
        while (true) {
            std::int32_t idx = slots[s];
            if (idx == -1) {
                if (size() >= kMaxStoredStates)
                    throw std::overflow_error("DP level exceeds the state budget");
                slots[s] = static_cast<std::int32_t>(size());
                keys.insert(keys.end(), key, key + k);
                vals.push_back(val);
                wa.push_back(a);
                wb.push_back(b);
                if (size() * 2 > slots.size()) grow();
                return;
            }
            if (std::memcmp(&keys[static_cast<std::size_t>(idx) * k], key,
                            k * sizeof(std::int64_t)) == 0) {
                if (val > vals[idx] ||
                    (val == vals[idx] && (a < wa[idx] || (a == wa[idx] && b < wb[idx])))) {
                    vals[idx] = val;
                    wa[idx] = a;
                    wb[idx] = b;
                }
                return;
            }
            s = (s + 1) & mask;
        }
    }

    std::int32_t find(const std::int64_t* key) const {
        std::size_t s = hash_key(key, k) & mask;
        while (true) {
            std::int32_t idx = slots[s];
            if (idx == -1) return -1;
            if (std::memcmp(&keys[static_cast<std::size_t>(idx) * k], key,
                            k * sizeof(std::int64_t)) == 0)
                return idx;
            s = (s + 1) & mask;
        }
    }
};

// One finished (lex-sorted) DP level.
struct LevelData {
    std::size_t k = 0;
    std::size_t count = 0;
    std::vector<std::int64_t> keys;
    std::vector<std::int64_t> vals;
    std::vector<std::int32_t> wa, wb;

    const std::int64_t* key(std::size_t i) const { return &keys[i * k]; }

    std::int32_t index_of(const std::int64_t* key_, const StateTable& tbl) const {
        return tbl.find(key_);
    }
};

LevelData sort_table(StateTable& tbl) {
    LevelData lv;
    lv.k = tbl.k;
    lv.count = tbl.size();
    std::vector<std::uint32_t> order(lv.count);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const std::int64_t* ka = &tbl.keys[std::size_t(a) * tbl.k];
        const std::int64_t* kb = &tbl.keys[std::size_t(b) * tbl.k];
        for (std::size_t i = 0; i < tbl.k; ++i)
            if (ka[i] != kb[i]) return ka[i] < kb[i];
        return false;
    });
    lv.keys.resize(lv.count * lv.k);
    lv.vals.resize(lv.count);
    lv.wa.resize(lv.count);
    lv.wb.resize(lv.count);
    for (std::size_t i = 0; i < lv.count; ++i) {
        std::uint32_t src = order[i];
        std::memcpy(&lv.keys[i * lv.k], &tbl.keys[std::size_t(src) * tbl.k],
                    lv.k * sizeof(std::int64_t));
        lv.vals[i] = tbl.vals[src];
        lv.wa[i] = tbl.wa[src];
        lv.wb[i] = tbl.wb[src];
    }
    return lv;
}

struct WindowTest {
    std::vector<std::int64_t> lo, hi; // bounds on (G b')_i
};

struct Engine {
    std::size_t k = 0, n = 0;
    std::vector<std::int64_t> g;  // q * B'^{-1}, row-major k x k
    std::vector<WindowTest> win;  // index j = 0..rho
    std::vector<std::int64_t> cols; // A columns, column-major k ints each
    std::vector<std::int64_t> costs;
    std::vector<std::int64_t> root; // shifted b
    int rho = 0;
    int threads = 1;

    bool in_window(const std::int64_t* gvals, int j) const {
        const WindowTest& w = win[j];
        for (std::size_t i = 0; i < k; ++i)
            if (gvals[i] < w.lo[i] || gvals[i] > w.hi[i]) return false;
        return true;
    }

    void gmul(const std::int64_t* key, std::int64_t* out) const {
        for (std::size_t i = 0; i < k; ++i) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < k; ++j) s += g[i * k + j] * key[j];
            out[i] = s;
        }
    }
};

Engine make_engine(const LdPreconditioner& pre, const IlpInstance& shifted, int rho,
                   std::int64_t eta) {
    Engine eng;
    eng.k = shifted.A.rows();
    eng.n = shifted.A.cols();
    eng.rho = rho;

    RatMatrix binv = inverse(pre.B_prime);
    Int q = common_denominator(binv);
    eng.g.resize(eng.k * eng.k);
    Int gmax = 0;
    for (std::size_t i = 0; i < eng.k; ++i)
        for (std::size_t j = 0; j < eng.k; ++j) {
            Rat e = binv(i, j) * to_rat(q);
            Int num = e.get_num();
            eng.g[i * eng.k + j] = to_i64(num);
            Int a = num < 0 ? Int(-num) : num;
            if (a > gmax) gmax = a;
        }

    // Conservative magnitude checks so the 64-bit inner loop cannot overflow.
    Int key_bound = 0;
    RatVec v = binv * to_rat(shifted.b);
    for (std::size_t i = 0; i < eng.k; ++i) {
        Rat row_abs = 0;
        for (std::size_t l = 0; l < eng.k; ++l) row_abs += abs_rat(pre.B_prime(i, l));
        Int kb = ceil_rat(abs_rat(to_rat(shifted.b[i])) + Rat(4 * eta) * row_abs) + 1;
        if (kb > key_bound) key_bound = kb;
    }
    for (std::size_t j = 0; j < eng.n; ++j)
        for (std::size_t i = 0; i < eng.k; ++i) {
            Int a = shifted.A(i, j) < 0 ? Int(-shifted.A(i, j)) : shifted.A(i, j);
            if (a > key_bound) key_bound = a;
        }
    if (key_bound > kKeyBound)
        throw std::overflow_error("instance exceeds the 64-bit state range");
    Int prod = gmax * Int(static_cast<long>(eng.k)) * key_bound * 4;
    if (!prod.fits_slong_p())
        throw std::overflow_error("window test exceeds the 64-bit range");

    eng.win.resize(rho + 1);
    Rat pow2 = 1;
    for (int j = 0; j <= rho; ++j) {
        WindowTest wt;
        wt.lo.resize(eng.k);
        wt.hi.resize(eng.k);
        for (std::size_t i = 0; i < eng.k; ++i) {
            Rat center = v[i] / pow2;
            wt.lo[i] = to_i64(ceil_rat(to_rat(q) * (center - Rat(4 * eta))));
            wt.hi[i] = to_i64(floor_rat(to_rat(q) * (center + Rat(4 * eta))));
        }
        eng.win[j] = std::move(wt);
        pow2 *= 2;
    }

    eng.cols.resize(eng.n * eng.k);
    eng.costs.resize(eng.n);
    for (std::size_t j = 0; j < eng.n; ++j) {
        for (std::size_t i = 0; i < eng.k; ++i) eng.cols[j * eng.k + i] = to_i64(shifted.A(i, j));
        eng.costs[j] = to_i64(shifted.c[j]);
    }
    eng.root.resize(eng.k);
    for (std::size_t i = 0; i < eng.k; ++i) eng.root[i] = to_i64(shifted.b[i]);
    return eng;
}

LevelData level0(const Engine& eng, SolveMode mode) {
    StateTable tbl;
    tbl.init(eng.k, eng.n + 1);
    std::vector<std::int64_t> gv(eng.k), zero(eng.k, 0);
    eng.gmul(zero.data(), gv.data());
    if (eng.in_window(gv.data(), eng.rho)) tbl.upsert_max(zero.data(), 0, -1, -2);
    for (std::size_t j = 0; j < eng.n; ++j) {
        const std::int64_t* col = &eng.cols[j * eng.k];
        eng.gmul(col, gv.data());
        if (!eng.in_window(gv.data(), eng.rho)) continue;
        std::int64_t val = mode == SolveMode::optimize ? eng.costs[j] : 0;
        tbl.upsert_max(col, val, static_cast<std::int32_t>(j), -2);
    }
    return sort_table(tbl);
}

LevelData next_level_optimize(const Engine& eng, const LevelData& prev, int j) {
    const std::size_t m = prev.count;
    const std::size_t k = eng.k;

    // Transformed coordinates, one array per row of G, in an order sorted by
    // the first coordinate. The first window test then restricts the partner
    // index to a contiguous range found by binary search; the pair loop only
    // ever visits candidates that pass it. The upsert rule is a total order,
    // so the visiting order does not affect the result.
    std::vector<std::uint32_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<std::int64_t> gk(m * k);
    for (std::size_t s = 0; s < m; ++s) eng.gmul(prev.key(s), &gk[s * k]);
    std::sort(perm.begin(), perm.end(),
              [&](std::uint32_t a, std::uint32_t b) { return gk[a * k] < gk[b * k]; });

    std::vector<std::int64_t> g0(m), vals(m);
    std::vector<std::vector<std::int64_t>> grest(k ? k - 1 : 0, std::vector<std::int64_t>(m));
    for (std::size_t p = 0; p < m; ++p) {
        std::uint32_t s = perm[p];
        g0[p] = gk[s * k];
        vals[p] = prev.vals[s];
        for (std::size_t c = 1; c < k; ++c) grest[c - 1][p] = gk[s * k + c];
    }

    const WindowTest& w = eng.win[j];
    auto scan_range = [&](std::size_t lo_pi, std::size_t hi_pi, StateTable& tbl) {
        std::int64_t keybuf[16];
        for (std::size_t pi = lo_pi; pi < hi_pi; ++pi) {
            const std::int64_t need_lo = w.lo[0] - g0[pi];
            const std::int64_t need_hi = w.hi[0] - g0[pi];
            std::size_t qlo = std::lower_bound(g0.begin() + pi, g0.end(), need_lo) - g0.begin();
            std::size_t qhi = std::upper_bound(g0.begin() + qlo, g0.end(), need_hi) - g0.begin();
            const std::int64_t vs = vals[pi];
            const std::uint32_t si = perm[pi];
            const std::int64_t* ks = prev.key(si);
            for (std::size_t qi = qlo; qi < qhi; ++qi) {
                bool ok = true;
                for (std::size_t c = 1; c < k; ++c) {
                    std::int64_t sum = grest[c - 1][pi] + grest[c - 1][qi];
                    if (sum < w.lo[c] || sum > w.hi[c]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                std::int64_t val;
                if (__builtin_add_overflow(vs, vals[qi], &val))
                    throw std::overflow_error("DP value overflow");
                const std::uint32_t ti = perm[qi];
                const std::int64_t* kt = prev.key(ti);
                for (std::size_t i = 0; i < k; ++i) keybuf[i] = ks[i] + kt[i];
                // witness preference: lexicographically smaller half first
                std::int32_t a = static_cast<std::int32_t>(si < ti ? si : ti);
                std::int32_t b = static_cast<std::int32_t>(si < ti ? ti : si);
                tbl.upsert_max(keybuf, val, a, b);
            }
        }
    };

    // Partitioning by pi covers each unordered pair exactly once per chunk
    // owner; the upsert rule is a total order, so merging per-thread tables
    // yields the same map for every thread count.
    int threads = eng.threads;
    if (threads > 1 && m < 2048) threads = 1;
    if (threads <= 1) {
        StateTable tbl;
        tbl.init(k, m + 16);
        scan_range(0, m, tbl);
        return sort_table(tbl);
    }
    std::vector<StateTable> parts(threads);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t) {
        parts[t].init(k, m / threads + 16);
        pool.emplace_back([&, t]() {
            try {
                // balance the triangular workload: each chunk takes a slice
                // from the front and its mirror from the back; the last chunk
                // takes the contiguous middle
                std::size_t lo1 = m * t / (2 * threads), hi1 = m * (t + 1) / (2 * threads);
                if (t + 1 == threads) {
                    scan_range(lo1, m - lo1, parts[t]);
                } else {
                    scan_range(lo1, hi1, parts[t]);
                    scan_range(m - hi1, m - lo1, parts[t]);
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    StateTable& out = parts[0];
    for (int t = 1; t < threads; ++t) {
        const StateTable& p = parts[t];
        for (std::size_t idx = 0; idx < p.size(); ++idx)
            out.upsert_max(&p.keys[idx * k], p.vals[idx], p.wa[idx], p.wb[idx]);
    }
    return sort_table(out);
}

LevelData next_level_feasibility(const Engine& eng, const LevelData& prev, int j) {
    const std::size_t k = eng.k;
    // Re-center the support before encoding: translation does not change the
    // sumset structure but keeps the base-q universe small.
    I64Vec base(prev.key(0), prev.key(0) + k);
    for (std::size_t s = 1; s < prev.count; ++s)
        for (std::size_t i = 0; i < k; ++i) base[i] = std::min(base[i], prev.key(s)[i]);
    std::vector<I64Vec> support(prev.count);
    for (std::size_t s = 0; s < prev.count; ++s) {
        support[s].assign(prev.key(s), prev.key(s) + k);
        for (std::size_t i = 0; i < k; ++i) support[s][i] -= base[i];
    }
    SparseBoolFn f = SparseBoolFn::from_support(k, std::move(support));
    SparseBoolFn conv = convolve_encoded(f, f);
    for (auto& key : conv.support)
        for (std::size_t i = 0; i < k; ++i) key[i] += 2 * base[i];

    // Window filter, then one witnessing split per kept state: the smallest
    // index si (lexicographically smallest key) whose complement is present.
    StateTable prev_idx;
    prev_idx.init(k, prev.count);
    for (std::size_t s = 0; s < prev.count; ++s) prev_idx.upsert_max(prev.key(s), 0, 0, 0);

    StateTable tbl;
    tbl.init(k, conv.support.size());
    std::vector<std::int64_t> gv(k);
    std::int64_t tbuf[16];
    for (const auto& key : conv.support) {
        eng.gmul(key.data(), gv.data());
        if (!eng.in_window(gv.data(), j)) continue;
        std::int32_t a = -1, b = -1;
        for (std::size_t si = 0; si < prev.count; ++si) {
            const std::int64_t* ks = prev.key(si);
            for (std::size_t i = 0; i < k; ++i) tbuf[i] = key[i] - ks[i];
            std::int32_t ti = prev_idx.find(tbuf);
            if (ti >= 0) {
                // prev_idx indices follow insertion order = lex order of prev
                a = static_cast<std::int32_t>(si);
                b = ti;
                break;
            }
        }
        if (a < 0) throw std::logic_error("convolution produced an unsplittable state");
        tbl.upsert_max(key.data(), 0, a, b);
    }
    return sort_table(tbl);
}

struct EngineRun {
    bool root_found = false;
    std::int64_t root_val = 0;
    IntVec witness; // on the shifted instance
    std::vector<std::int64_t> stored_states;
    std::vector<LevelData> levels;
};

// Witness of one state: recursive descent over the stored splits, memoized so
// shared subtrees are expanded once. Exact integer counts.
class WitnessBuilder {
  public:
    WitnessBuilder(const std::vector<LevelData>& levels, std::size_t n)
        : levels_(levels), n_(n), memo_(levels.size()) {
        for (std::size_t i = 0; i < levels.size(); ++i)
            memo_[i].assign(levels_[i].count, IntVec());
    }

    const IntVec& build(std::size_t level, std::size_t idx) {
        IntVec& slot = memo_[level][idx];
        if (!slot.empty()) return slot;
        const LevelData& lv = levels_[level];
        IntVec x(n_, Int(0));
        bool zero_key = true;
        for (std::size_t i = 0; i < lv.k; ++i)
            if (lv.key(idx)[i] != 0) {
                zero_key = false;
                break;
            }
        if (zero_key && lv.vals[idx] == 0) {
            // x = 0 is a valid witness; do not descend (avoids value-neutral cycles)
            slot = std::move(x);
            return slot;
        }
        if (level == 0) {
            if (lv.wa[idx] >= 0) x[static_cast<std::size_t>(lv.wa[idx])] = 1;
            slot = std::move(x);
            return slot;
        }
        const IntVec& left = build(level - 1, static_cast<std::size_t>(lv.wa[idx]));
        for (std::size_t j = 0; j < n_; ++j) x[j] = left[j];
        const IntVec& right = build(level - 1, static_cast<std::size_t>(lv.wb[idx]));
        for (std::size_t j = 0; j < n_; ++j) x[j] += right[j];
        slot = std::move(x);
        return slot;
    }

  private:
    const std::vector<LevelData>& levels_;
    std::size_t n_;
    std::vector<std::vector<IntVec>> memo_;
};

EngineRun run_engine(const LdPreconditioner& pre, const IlpInstance& shifted, int rho,
                     std::int64_t eta, SolveMode mode, int threads) {
    Engine eng = make_engine(pre, shifted, rho, eta);
    eng.threads = threads < 1 ? 1 : threads;
    EngineRun run;
    run.levels.reserve(rho + 1);
    run.levels.push_back(level0(eng, mode));
    run.stored_states.push_back(static_cast<std::int64_t>(run.levels.back().count));

    auto same_level = [](const LevelData& a, const LevelData& b) {
        return a.count == b.count && a.keys == b.keys && a.vals == b.vals;
    };
    for (int i = 1; i <= rho; ++i) {
        const int j = rho - i;
        // The transition depends only on the previous level and the window's
        // integer bounds. Once the level map is a fixed point and the window
        // bounds stop moving (centers b/2^j settle), every further level is
        // identical; copy instead of rescanning.
        if (i >= 2 && eng.win[j].lo == eng.win[j + 1].lo && eng.win[j].hi == eng.win[j + 1].hi &&
            same_level(run.levels[i - 1], run.levels[i - 2])) {
            run.levels.push_back(run.levels[i - 1]);
        } else if (run.levels.back().count == 0) {
            run.levels.push_back(LevelData{eng.k, 0, {}, {}, {}, {}});
        } else if (mode == SolveMode::optimize) {
            run.levels.push_back(next_level_optimize(eng, run.levels[i - 1], j));
        } else {
            run.levels.push_back(next_level_feasibility(eng, run.levels[i - 1], j));
        }
        run.stored_states.push_back(static_cast<std::int64_t>(run.levels.back().count));
        if (std::getenv("ILPK_TRACE"))
            std::fprintf(stderr, "[ilpk] level %d/%d window %d: %zu states\n", i, rho, j,
                         run.levels.back().count);
    }

    // root state = shifted b at level rho
    const LevelData& top = run.levels.back();
    std::int32_t root_idx = -1;
    for (std::size_t s = 0; s < top.count; ++s)
        if (std::memcmp(top.key(s), eng.root.data(), eng.k * sizeof(std::int64_t)) == 0) {
            root_idx = static_cast<std::int32_t>(s);
            break;
        }
    if (root_idx < 0) return run;

    run.root_found = true;
    run.root_val = top.vals[root_idx];
    WitnessBuilder wb(run.levels, eng.n);
    run.witness = wb.build(static_cast<std::size_t>(rho), static_cast<std::size_t>(root_idx));
    return run;
}

int factorial_i(std::size_t k) {
    int f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<int>(i);
    return f;
}

Int binom_sz(std::size_t n, std::size_t k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<DpLevelView> make_views(const std::vector<LevelData>& levels, int rho) {
    std::vector<DpLevelView> views;
    views.reserve(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const LevelData& lv = levels[i];
        DpLevelView v;
        v.level_index = static_cast<int>(i);
        v.window_index = rho - static_cast<int>(i);
        v.keys.resize(lv.count);
        for (std::size_t s = 0; s < lv.count; ++s)
            v.keys[s].assign(lv.key(s), lv.key(s) + lv.k);
        v.values.assign(lv.vals.begin(), lv.vals.end());
        v.wit_a = lv.wa;
        v.wit_b = lv.wb;
        views.push_back(std::move(v));
    }
    return views;
}

} // namespace

SolveResult solve(const IlpInstance& inst, const DpConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t k = inst.A.rows(), n = inst.A.cols();
    if (k < 1 || n < k) throw InvalidShape("instance requires 1 <= k <= n");
    if (inst.b.size() != k || inst.c.size() != n) throw DimMismatch("instance vector lengths");
    if (rank(inst.A) < k) throw RankDeficient("constraint matrix is not of full row rank");

    auto finish = [&](SolveResult r) {
        r.stats.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        return r;
    };

    // Effective objective: feasibility runs against the zero objective.
    IlpInstance work = inst;
    if (cfg.mode == SolveMode::feasibility)
        for (auto& cj : work.c) cj = 0;

    LpResult lp = solve_lp(to_rat(work.A), to_rat(work.b), to_rat(work.c));
    if (lp.status == LpStatus::infeasible) {
        SolveResult r;
        r.status = SolveStatus::infeasible;
        return finish(r);
    }
    if (lp.status == LpStatus::unbounded) {
        // Integer recession ray exists iff the rational one does; feasibility
        // of the lattice decides between unbounded and infeasible.
        DpConfig fcfg = cfg;
        fcfg.mode = SolveMode::feasibility;
        SolveResult fr = solve(inst, fcfg);
        if (fr.status == SolveStatus::feasible) {
            fr.status = SolveStatus::unbounded;
            fr.objective.reset();
            fr.x.reset();
        }
        return finish(fr);
    }

    LdPreconditioner pre = build_preconditioner(work.A, cfg.eps);

    Rat delta_bound;
    if (binom_sz(n, k) <= 200000) {
        delta_bound = to_rat(delta_exact(work.A));
    } else {
        // k! |det A_delta| always dominates the largest minor; the swap-local
        // basis makes the factor k! an upper bound.
        delta_bound = Rat(factorial_i(k)) * pre.delta;
    }

    RhoChoice rc = choose_rho_impl(work, delta_bound, cfg.rho_policy, cfg.rho_value, cfg.c_chi,
                                   cfg.c_rho, &lp);
    std::int64_t eta = choose_eta(pre, cfg.eta_policy, cfg.eta_value);

    EngineRun run = run_engine(pre, rc.shifted, rc.rho, eta, cfg.mode, cfg.threads);

    if (cfg.escalate) {
        EngineRun run2 = run_engine(pre, rc.shifted, rc.rho, 2 * eta, cfg.mode, cfg.threads);
        bool same = run.root_found == run2.root_found &&
                    (cfg.mode != SolveMode::optimize || !run.root_found ||
                     run.root_val == run2.root_val);
        if (!same)
            throw EscalationMismatch("doubling eta changed the result; eta bound violated");
    }

    SolveResult res;
    res.stats.eta_used = eta;
    res.stats.rho_used = rc.rho;
    res.stats.delta = pre.delta;
    res.stats.shift_y = rc.shift_y;
    res.stats.stored_states = run.stored_states;
    if (cfg.stats) {
        res.stats.level_sizes.resize(rc.rho + 1);
        for (int j = 0; j <= rc.rho; ++j)
            res.stats.level_sizes[j] = count_window(j, pre, rc.shifted.b, eta);
    }
    if (cfg.keep_tables) res.tables = make_views(run.levels, rc.rho);

    if (!run.root_found) {
        res.status = SolveStatus::infeasible;
        return finish(res);
    }

    // Verify the witness exactly before reporting anything.
    IntVec x = run.witness;
    for (std::size_t j = 0; j < n; ++j) x[j] += rc.shift_y[j];
    IntVec ax = inst.A * x;
    for (std::size_t i = 0; i < k; ++i)
        if (ax[i] != inst.b[i]) throw std::logic_error("witness fails A x = b");
    for (const auto& xi : x)
        if (xi < 0) throw std::logic_error("witness has a negative entry");

    if (cfg.mode == SolveMode::optimize) {
        Int obj = 0;
        for (std::size_t j = 0; j < n; ++j) obj += inst.c[j] * x[j];
        Int shift_obj = 0;
        for (std::size_t j = 0; j < n; ++j) shift_obj += inst.c[j] * rc.shift_y[j];
        if (obj != Int(run.root_val) + shift_obj)
            throw std::logic_error("witness objective disagrees with the DP value");
        res.status = SolveStatus::optimal;
        res.objective = obj;
    } else {
        res.status = SolveStatus::feasible;
    }
    res.x = std::move(x);
    return finish(res);
}

void audit_tables(const SolveResult& result, const IlpInstance& inst, SolveMode mode) {
    if (result.tables.empty()) throw std::logic_error("audit requires keep_tables");
    const std::size_t n = inst.A.cols();
    const std::size_t k = inst.A.rows();

    // Rebuild every state's witness through the stored splits.
    std::vector<std::vector<IntVec>> memo(result.tables.size());
    for (std::size_t i = 0; i < result.tables.size(); ++i)
        memo[i].assign(result.tables[i].keys.size(), IntVec());

    std::function<const IntVec&(std::size_t, std::size_t)> build =
        [&](std::size_t level, std::size_t idx) -> const IntVec& {
        IntVec& slot = memo[level][idx];
        if (!slot.empty()) return slot;
        const DpLevelView& lv = result.tables[level];
        IntVec x(n, Int(0));
        bool zero_key = true;
        for (std::size_t i = 0; i < k; ++i)
            if (lv.keys[idx][i] != 0) zero_key = false;
        if (zero_key && lv.values[idx] == 0) {
            slot = std::move(x);
            return slot;
        }
        if (level == 0) {
            if (lv.wit_a[idx] >= 0) x[static_cast<std::size_t>(lv.wit_a[idx])] = 1;
            slot = std::move(x);
            return slot;
        }
        const IntVec& l = build(level - 1, static_cast<std::size_t>(lv.wit_a[idx]));
        for (std::size_t j = 0; j < n; ++j) x[j] = l[j];
        const IntVec& r = build(level - 1, static_cast<std::size_t>(lv.wit_b[idx]));
        for (std::size_t j = 0; j < n; ++j) x[j] += r[j];
        slot = std::move(x);
        return slot;
    };

    for (std::size_t level = 0; level < result.tables.size(); ++level) {
        const DpLevelView& lv = result.tables[level];
        for (std::size_t idx = 0; idx < lv.keys.size(); ++idx) {
            const IntVec& x = build(level, idx);
            for (const auto& xi : x)
                if (xi < 0) throw std::logic_error("audit: negative witness entry");
            IntVec ax = inst.A * x;
            for (std::size_t i = 0; i < k; ++i)
                if (ax[i] != lv.keys[idx][i])
                    throw std::logic_error("audit: witness does not reproduce the state key");
            if (mode == SolveMode::optimize) {
                Int obj = 0;
                for (std::size_t j = 0; j < n; ++j) obj += inst.c[j] * x[j];
                if (obj != lv.values[idx])
                    throw std::logic_error("audit: witness objective mismatch");
            }
        }
    }
}

} // namespace ilpk
