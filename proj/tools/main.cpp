// Command-line front end: instance I/O, solver invocation, random instance
// generation, and the benchmark harness.
//
// Exit codes: 0 success, 1 malformed input, 2 rank-deficient matrix,
// 3 oracle mismatch, 4 escalation mismatch.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "ilpk/dp.hpp"
#include "ilpk/instance_io.hpp"
#include "ilpk/oracle_check.hpp"
#include "ilpk/preconditioner.hpp"

namespace {

using namespace ilpk;

struct SolveArgs {
    std::string path;
    std::string mode = "optimize";
    std::string eta = "safe";
    int rho = 0;
    bool escalate = false;
    bool no_escalate = false;
    bool oracle_check = false;
    bool stats = false;
    int threads = 1;
    std::uint64_t seed = 1; // reserved for generation-style subcommands
};

int run_solve(const SolveArgs& args) {
    IlpInstance inst;
    try {
        inst = read_instance_file(args.path);
    } catch (const RankDeficient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    DpConfig cfg;
    cfg.mode = args.mode == "feasibility" ? SolveMode::feasibility : SolveMode::optimize;
    if (args.mode != "optimize" && args.mode != "feasibility") {
        std::cerr << "error: --mode must be optimize or feasibility\n";
        return 1;
    }
    if (args.eta == "safe") {
        cfg.eta_policy = DpConfig::Eta::safe;
    } else if (args.eta == "aggressive") {
        cfg.eta_policy = DpConfig::Eta::aggressive;
    } else {
        cfg.eta_policy = DpConfig::Eta::explicit_value;
        try {
            cfg.eta_value = std::stoll(args.eta);
        } catch (...) {
            std::cerr << "error: --eta must be safe, aggressive, or a positive integer\n";
            return 1;
        }
    }
    if (args.rho > 0) {
        cfg.rho_policy = DpConfig::Rho::explicit_value;
        cfg.rho_value = args.rho;
    }
    // escalation defaults on for the aggressive policy
    cfg.escalate = cfg.eta_policy == DpConfig::Eta::aggressive;
    if (args.escalate) cfg.escalate = true;
    if (args.no_escalate) cfg.escalate = false;
    cfg.stats = args.stats;
    cfg.threads = args.threads;

    SolveResult res;
    try {
        res = solve(inst, cfg);
    } catch (const EscalationMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const RankDeficient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (args.oracle_check) {
        OracleCheckOutcome oc = check_result_against_oracle(inst, res);
        if (!oc.agreed) {
            std::cerr << "oracle mismatch: " << oc.detail << "\n";
            return 3;
        }
    }
    std::cout << write_result(inst, res, args.stats);
    return 0;
}

int run_bench(std::size_t k_lo, std::size_t k_hi, std::int64_t d_lo, std::int64_t d_hi,
              int repetitions, int threads) {
    std::cout << "k,delta,eta,rho,max_level,opt_ms,feas_ms\n";
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            for (int rep = 0; rep < repetitions; ++rep) {
                IlpInstance inst = bench_instance(k, d, static_cast<std::uint64_t>(rep));
                Int delta_hat = delta_exact(inst.A);

                DpConfig cfg;
                cfg.threads = threads;
                SolveResult ropt = solve(inst, cfg);
                cfg.mode = SolveMode::feasibility;
                SolveResult rfeas = solve(inst, cfg);

                // window sizes, measured outside the timed runs
                LdPreconditioner pre = build_preconditioner(inst.A);
                IlpInstance work = inst;
                RhoChoice rc = choose_rho(work, to_rat(delta_hat), DpConfig::Rho::proximity);
                Int max_level = 0;
                for (int j = 0; j <= rc.rho; ++j) {
                    Int c = count_window(j, pre, rc.shifted.b, ropt.stats.eta_used);
                    if (c > max_level) max_level = c;
                }
                std::cout << k << "," << delta_hat.get_str() << "," << ropt.stats.eta_used << ","
                          << ropt.stats.rho_used << "," << max_level.get_str() << ","
                          << ropt.stats.wall_ms << "," << rfeas.stats.wall_ms << "\n";
            }
        }
    }
    return 0;
}

bool parse_range(const std::string& s, long& lo, long& hi) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            lo = hi = std::stol(s);
        } else {
            lo = std::stol(s.substr(0, pos));
            hi = std::stol(s.substr(pos + 2));
        }
    } catch (...) {
        return false;
    }
    return lo >= 1 && hi >= lo;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for standard-form integer programs of small codimension"};
    app.require_subcommand(1);

    SolveArgs sargs;
    CLI::App* s = app.add_subcommand("solve", "solve an instance file");
    s->add_option("path", sargs.path, "instance JSON file")->required();
    s->add_option("--mode", sargs.mode, "optimize | feasibility");
    s->add_option("--eta", sargs.eta, "safe | aggressive | <positive integer>");
    s->add_option("--rho", sargs.rho, "explicit level count override");
    s->add_flag("--escalate", sargs.escalate, "re-run with doubled eta and compare");
    s->add_flag("--no-escalate", sargs.no_escalate, "disable the escalation re-run");
    s->add_flag("--oracle-check", sargs.oracle_check, "verify against exhaustive enumeration");
    s->add_flag("--stats", sargs.stats, "include window sizes and timings");
    s->add_option("--threads", sargs.threads, "worker threads for the level scans");
    s->add_option("--seed", sargs.seed, "unused for solve; accepted for symmetry");

    GenOptions gopts;
    bool gen_feasible = false, gen_nonneg = false;
    CLI::App* g = app.add_subcommand("generate", "emit a pseudo-random instance");
    g->add_option("--k", gopts.k, "row count (codimension)")->required();
    g->add_option("--n", gopts.n, "variable count")->required();
    g->add_option("--max-entry", gopts.max_entry, "entry bound for A");
    g->add_option("--seed", gopts.seed, "RNG seed");
    g->add_flag("--feasible", gen_feasible, "plant a solution: b = A x0");
    g->add_flag("--nonneg", gen_nonneg, "restrict A to nonnegative entries");
    g->add_option("--max-c", gopts.max_c, "objective entry bound");
    g->add_option("--max-x0", gopts.max_x0, "planted solution bound");
    g->add_option("--max-b", gopts.max_b, "right-hand side bound when not --feasible");

    std::string k_range = "2..2", delta_range = "2..16";
    int repetitions = 1, bench_threads = 1;
    CLI::App* b = app.add_subcommand("bench", "benchmark harness (CSV on stdout)");
    b->add_option("--k-range", k_range, "codimension range, e.g. 2..3");
    b->add_option("--delta-range", delta_range, "target minor range, e.g. 4..40");
    b->add_option("--repetitions", repetitions, "instances per configuration");
    b->add_option("--threads", bench_threads, "worker threads for the level scans");

    CLI11_PARSE(app, argc, argv);

    try {
        if (s->parsed()) return run_solve(sargs);
        if (g->parsed()) {
            gopts.feasible = gen_feasible;
            gopts.nonneg = gen_nonneg;
            if (gopts.k < 1 || gopts.n < gopts.k) {
                std::cerr << "error: generator requires 1 <= k <= n\n";
                return 1;
            }
            std::cout << write_instance(generate_instance(gopts));
            return 0;
        }
        if (b->parsed()) {
            long klo, khi, dlo, dhi;
            if (!parse_range(k_range, klo, khi) || !parse_range(delta_range, dlo, dhi)) {
                std::cerr << "error: ranges must be of the form a..b with 1 <= a <= b\n";
                return 1;
            }
            return run_bench(static_cast<std::size_t>(klo), static_cast<std::size_t>(khi), dlo,
                             dhi, repetitions, bench_threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
