#pragma once

// JSON instance/result files and the seeded instance generator. The RNG is
// hand-rolled (splitmix64) so generated instances are byte-identical across
// platforms and standard library versions.

#include <cstdint>
#include <string>

#include "ilpk/dp.hpp"

namespace ilpk {

/// Parses {"k","n","A","b","c"[,"comment"]}. Throws std::runtime_error on
/// malformed input and RankDeficient when A is not of full row rank.
IlpInstance read_instance(const std::string& json_text);
IlpInstance read_instance_file(const std::string& path);

std::string write_instance(const IlpInstance& inst, const std::string& comment = "");

/// Serializes a solve result; re-verifies A x = b before emission.
std::string write_result(const IlpInstance& inst, const SolveResult& res, bool include_stats);

struct GenOptions {
    std::size_t k = 2;
    std::size_t n = 5;
    std::int64_t max_entry = 3;   // entries drawn from [-max_entry, max_entry]
    bool nonneg = false;          // restrict entries to [0, max_entry]
    bool feasible = false;        // b = A x0 for a sampled x0 >= 0
    std::int64_t max_x0 = 3;      // coordinate bound for the planted solution
    std::int64_t max_c = 5;       // objective entries from [-max_c, max_c]
    std::int64_t max_b = 12;      // |b| bound when not feasible-by-construction
    std::uint64_t seed = 1;
};

/// Deterministic pseudo-random instance with full row rank (resampled until
/// rank k).
IlpInstance generate_instance(const GenOptions& opts);

/// The benchmark family: one long column drives the largest minor toward
/// `delta_target` while the remaining columns keep the instance generic.
/// Deterministic in (k, delta_target, rep).
IlpInstance bench_instance(std::size_t k, std::int64_t delta_target, std::uint64_t rep);

/// splitmix64 stream; the single source of randomness in the project.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// uniform in [lo, hi] by rejection; lo <= hi
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }
};

} // namespace ilpk
