#include "ilpk/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ilpk {

using nlohmann::json;

namespace {

IntVec parse_int_array(const json& j, std::size_t expected, const char* name) {
    if (!j.is_array() || j.size() != expected)
        throw std::runtime_error(std::string("field '") + name + "' must be an array of length " +
                                 std::to_string(expected));
    IntVec v(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        if (!j[i].is_number_integer())
            throw std::runtime_error(std::string("field '") + name + "' must hold integers");
        v[i] = Int(static_cast<long>(j[i].get<std::int64_t>()));
    }
    return v;
}

} // namespace

IlpInstance read_instance(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("k") || !j.contains("n") || !j.contains("A") ||
        !j.contains("b") || !j.contains("c"))
        throw std::runtime_error("instance requires fields k, n, A, b, c");
    const auto k = j["k"].get<std::int64_t>();
    const auto n = j["n"].get<std::int64_t>();
    if (k < 1 || n < k) throw std::runtime_error("instance requires 1 <= k <= n");

    IlpInstance inst;
    IntVec flat = parse_int_array(j["A"], static_cast<std::size_t>(k * n), "A");
    inst.A = IntMatrix(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
        for (std::size_t jj = 0; jj < static_cast<std::size_t>(n); ++jj)
            inst.A(i, jj) = flat[i * static_cast<std::size_t>(n) + jj];
    inst.b = parse_int_array(j["b"], static_cast<std::size_t>(k), "b");
    inst.c = parse_int_array(j["c"], static_cast<std::size_t>(n), "c");

    if (rank(inst.A) < static_cast<std::size_t>(k))
        throw RankDeficient("instance matrix is not of full row rank " + std::to_string(k));
    return inst;
}

IlpInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_instance(ss.str());
}

namespace {

std::int64_t int_to_i64_checked(const Int& v) { return to_i64(v); }

} // namespace

std::string write_instance(const IlpInstance& inst, const std::string& comment) {
    json j;
    j["k"] = inst.A.rows();
    j["n"] = inst.A.cols();
    json a = json::array();
    for (std::size_t i = 0; i < inst.A.rows(); ++i)
        for (std::size_t jj = 0; jj < inst.A.cols(); ++jj)
            a.push_back(int_to_i64_checked(inst.A(i, jj)));
    j["A"] = std::move(a);
    json b = json::array();
    for (const auto& v : inst.b) b.push_back(int_to_i64_checked(v));
    j["b"] = std::move(b);
    json c = json::array();
    for (const auto& v : inst.c) c.push_back(int_to_i64_checked(v));
    j["c"] = std::move(c);
    if (!comment.empty()) j["comment"] = comment;
    return j.dump(2) + "\n";
}

std::string write_result(const IlpInstance& inst, const SolveResult& res, bool include_stats) {
    json j;
    switch (res.status) {
        case SolveStatus::optimal: j["status"] = "optimal"; break;
        case SolveStatus::feasible: j["status"] = "feasible"; break;
        case SolveStatus::infeasible: j["status"] = "infeasible"; break;
        case SolveStatus::unbounded: j["status"] = "unbounded"; break;
    }
    j["objective"] = nullptr;
    if (res.objective) j["objective"] = int_to_i64_checked(*res.objective);
    j["x"] = nullptr;
    if (res.x) {
        // re-verify before emission
        IntVec ax = inst.A * *res.x;
        for (std::size_t i = 0; i < inst.b.size(); ++i)
            if (ax[i] != inst.b[i]) throw std::logic_error("result verification failed: A x != b");
        json xs = json::array();
        for (const auto& v : *res.x) xs.push_back(int_to_i64_checked(v));
        j["x"] = std::move(xs);
    }
    json stats;
    stats["eta"] = res.stats.eta_used;
    stats["rho"] = res.stats.rho_used;
    stats["delta"] = res.stats.delta.get_str();
    json ls = json::array();
    if (include_stats)
        for (const auto& v : res.stats.level_sizes) ls.push_back(int_to_i64_checked(v));
    stats["level_sizes"] = std::move(ls);
    stats["wall_ms"] = res.stats.wall_ms;
    json ys = json::array();
    for (const auto& v : res.stats.shift_y) ys.push_back(int_to_i64_checked(v));
    stats["shift_y"] = std::move(ys);
    j["stats"] = std::move(stats);
    return j.dump(2) + "\n";
}

IlpInstance bench_instance(std::size_t k, std::int64_t delta_target, std::uint64_t rep) {
    if (k < 1 || delta_target < 1) throw std::invalid_argument("bench family requires k, delta >= 1");
    Rng rng(0x9d5f00d1 + 1315423911u * rep + 2654435761u * k +
            77777777u * static_cast<std::uint64_t>(delta_target));
    const std::size_t n = k + 2;
    IlpInstance inst;
    inst.A = IntMatrix(k, n);
    // basis columns with a strictly positive first row (pointed cone, so the
    // reachable state counts track the window volume rather than exploding)
    inst.A(0, 0) = 1;
    for (std::size_t j = 1; j < k; ++j) {
        inst.A(0, j) = 1;
        inst.A(j, j) = 1;
    }
    // the long column drives the largest minor toward delta_target
    inst.A(0, k) = Int(delta_target);
    for (std::size_t i = 1; i < k; ++i) inst.A(i, k) = Int(rng.uniform(-2, 2));
    // one generic mixed column
    inst.A(0, k + 1) = 1;
    for (std::size_t i = 1; i < k; ++i) inst.A(i, k + 1) = Int(rng.uniform(0, 1) ? 1 : -1);

    IntVec x0(n);
    for (auto& v : x0) v = Int(rng.uniform(0, 3));
    inst.b = inst.A * x0;
    inst.c.resize(n);
    for (auto& v : inst.c) v = Int(rng.uniform(-5, 5));
    return inst;
}

IlpInstance generate_instance(const GenOptions& opts) {
    if (opts.k < 1 || opts.n < opts.k) throw std::invalid_argument("generator requires 1 <= k <= n");
    Rng rng(opts.seed);
    IlpInstance inst;
    const std::int64_t lo = opts.nonneg ? 0 : -opts.max_entry;
    while (true) {
        inst.A = IntMatrix(opts.k, opts.n);
        for (std::size_t i = 0; i < opts.k; ++i)
            for (std::size_t j = 0; j < opts.n; ++j)
                inst.A(i, j) = Int(rng.uniform(lo, opts.max_entry));
        if (rank(inst.A) == opts.k) break;
    }
    inst.c.resize(opts.n);
    for (std::size_t j = 0; j < opts.n; ++j) inst.c[j] = Int(rng.uniform(-opts.max_c, opts.max_c));
    inst.b.resize(opts.k);
    if (opts.feasible) {
        IntVec x0(opts.n);
        for (std::size_t j = 0; j < opts.n; ++j) x0[j] = Int(rng.uniform(0, opts.max_x0));
        inst.b = inst.A * x0;
    } else {
        for (std::size_t i = 0; i < opts.k; ++i)
            inst.b[i] = Int(rng.uniform(opts.nonneg ? 0 : -opts.max_b, opts.max_b));
    }
    return inst;
}

} // namespace ilpk
