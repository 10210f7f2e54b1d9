#pragma once

// Divide-and-conquer dynamic program for standard-form integer programs of
// small codimension. States are integer right-hand sides confined to
// geometrically shrinking windows around b/2^j; levels split a solution into
// two half-norm solutions. Optimization levels use the quadratic pair scan,
// feasibility levels the sparse Boolean convolution backend.

#include <optional>
#include <vector>

#include "ilpk/boolconv.hpp"
#include "ilpk/preconditioner.hpp"
#include "ilpk/simplex.hpp"

namespace ilpk {

struct IlpInstance {
    IntMatrix A; // k x n, full row rank
    IntVec b;    // length k
    IntVec c;    // length n
};

enum class SolveMode { optimize, feasibility };
enum class SolveStatus { optimal, feasible, infeasible, unbounded };

struct DpConfig {
    SolveMode mode = SolveMode::optimize;

    enum class Eta { safe, aggressive, explicit_value };
    Eta eta_policy = Eta::safe;
    std::int64_t eta_value = 0; // used with Eta::explicit_value

    enum class Rho { proximity, explicit_value };
    Rho rho_policy = Rho::proximity;
    int rho_value = 0; // used with Rho::explicit_value

    bool escalate = false;    // re-run with 2*eta and require identical results
    bool stats = false;       // enumerate window sizes into stats (costly)
    bool keep_tables = false; // retain DP tables for audits
    int threads = 1;

    // chi = ceil(c_chi k^2 D D^{1/k});  smallest rho with (6/5)^rho >= c_rho k chi
    std::int64_t c_chi = 3;
    std::int64_t c_rho = 6;

    Rat eps = Rat(1); // ellipsoid rounding parameter for the preconditioner
};

struct SolveStats {
    std::int64_t eta_used = 0;
    int rho_used = 0;
    Rat delta;                                // |det B'|
    IntVec shift_y;                           // variable shift applied
    std::vector<Int> level_sizes;             // |B_j|, j = 0..rho (stats flag)
    std::vector<std::int64_t> stored_states;  // finite states per DP level
    double wall_ms = 0;
};

/// One retained DP level (keep_tables): state keys with their values and
/// witness split pairs. Level 0 stores leaf column indices instead
/// (-1 designates the zero solution).
struct DpLevelView {
    int level_index = 0;  // i
    int window_index = 0; // j = rho - i
    std::vector<I64Vec> keys;
    std::vector<std::int64_t> values; // 1 for feasibility-mode states
    std::vector<std::int32_t> wit_a;  // level 0: leaf column; else index into level i-1
    std::vector<std::int32_t> wit_b;  // level >= 1: second split index
};

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<Int> objective; // optimize mode, when optimal
    std::optional<IntVec> x;      // witness, when optimal/feasible
    SolveStats stats;
    std::vector<DpLevelView> tables; // keep_tables only
};

struct RhoChoice {
    int rho = 0;
    IntVec shift_y;
    IlpInstance shifted;
    RatVec lp_vertex; // optimal vertex of the relaxation (empty for explicit rho)
};

/// Safe policy: smallest integer >= 2 sqrt(k) (provably above the hereditary
/// discrepancy of a unit-column matrix). Aggressive tracks the k-dependence
/// of the discrepancy bound; explicit passes the value through.
std::int64_t choose_eta(const LdPreconditioner& pre, DpConfig::Eta policy,
                        std::int64_t explicit_value = 0);

/// Proximity-based level count and variable shift. Solves the LP relaxation
/// exactly; throws LpInfeasible / LpUnbounded accordingly.
RhoChoice choose_rho(const IlpInstance& inst, const Rat& delta_bound, DpConfig::Rho policy,
                     int explicit_rho = 0, std::int64_t c_chi = 3, std::int64_t c_rho = 6);

/// Window B_j: integer points of b/2^j + 4 eta B' [-1,1]^k (closed box),
/// enumerated through the triangular form. Duplicate-free.
std::vector<IntVec> build_window(int j, const LdPreconditioner& pre, const IntVec& b,
                                 std::int64_t eta);

/// Number of points build_window would produce.
Int count_window(int j, const LdPreconditioner& pre, const IntVec& b, std::int64_t eta);

/// Full solve. Throws RankDeficient and EscalationMismatch; LP unboundedness
/// surfaces as SolveStatus::unbounded.
SolveResult solve(const IlpInstance& inst, const DpConfig& cfg = DpConfig{});

/// Re-derives every retained DP entry: the witness must be nonnegative,
/// reproduce the state key under A, and (optimize mode) match the stored
/// value under c. Throws std::logic_error with details on any violation.
void audit_tables(const SolveResult& result, const IlpInstance& inst, SolveMode mode);

} // namespace ilpk
