// blockopt command-line harness
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0
//
// Exit codes: 0 all checks pass, 1 certificate failure, 2 input error,
// 3 solver failure.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "blockopt/certify.hpp"
#include "blockopt/errors.hpp"
#include "blockopt/io.hpp"
#include "blockopt/kl.hpp"
#include "blockopt/prox.hpp"
#include "blockopt/problems.hpp"
#include "blockopt/subdiff.hpp"

namespace {

using namespace blockopt;

constexpr int kExitOk = 0;
constexpr int kExitCertFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BLOCKOPT_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 42;
}

struct RunArgs {
    std::vector<std::string> problems;
    std::string trace_path, report_path;
    bool certify = false;
    bool full_trace = false;
    unsigned jobs = 1;
    // overrides; negative/zero sentinels mean "not set"
    double gamma = -1.0, rho = -1.0, tau = -1.0, tol = -1.0;
    long long max_iters = -1;
    long long seed = -1;
};

std::string sibling_name(const std::string& base, const std::string& problem, bool multiple,
                         const std::string& ext) {
    if (!multiple) return base;
    std::string stem = base;
    if (stem.size() > ext.size() && stem.substr(stem.size() - ext.size()) == ext) {
        stem = stem.substr(0, stem.size() - ext.size());
    }
    return stem + "-" + problem + ext;
}

int run_one(const std::string& spec, const std::string& algorithm, const RunArgs& args,
            bool multiple, std::mutex& io_mutex) {
    std::uint64_t seed = args.seed >= 0 ? static_cast<std::uint64_t>(args.seed) : default_seed();
    io::LoadedProblem lp = io::load_problem(spec, seed);
    if (lp.algorithm != algorithm) {
        throw InputError("problem '" + lp.name + "' is a " + lp.algorithm + " problem; use run-" +
                         lp.algorithm);
    }

    std::vector<CheckReport> reports;
    std::string trace_path =
        args.trace_path.empty() ? "" : sibling_name(args.trace_path, lp.name, multiple, ".csv");
    std::string report_path =
        args.report_path.empty() ? ""
                                 : sibling_name(args.report_path, lp.name, multiple, ".json");

    if (algorithm == "bcd") {
        BcdConfig cfg = *lp.bcd_cfg;
        if (args.gamma > 0.0) cfg.gamma = args.gamma;
        if (args.max_iters > 0) cfg.max_iters = static_cast<std::size_t>(args.max_iters);
        if (args.tol >= 0.0) cfg.stop_tol = args.tol;
        if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
        cfg.validate();

        BcdTrace trace = run_bcd(*lp.bcd, cfg);
        if (!trace_path.empty()) io::save_trace_csv(trace_path, trace, args.full_trace);
        if (args.certify) reports = certify_bcd(*lp.bcd, trace);
    } else {
        AdmmConfig cfg = *lp.admm_cfg;
        if (args.rho > 0.0) cfg.rho = args.rho;
        if (args.tau > 0.0) cfg.tau = args.tau;
        if (args.max_iters > 0) cfg.max_iters = static_cast<std::size_t>(args.max_iters);
        if (args.tol >= 0.0) {
            cfg.primal_tol = args.tol;
            cfg.dual_tol = args.tol;
        }
        if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
        cfg.validate();

        AdmmTrace trace = run_admm(*lp.admm, cfg);
        if (!trace_path.empty()) io::save_trace_csv(trace_path, trace, args.full_trace);
        if (args.certify) reports = certify_admm(*lp.admm, trace);
    }

    {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << lp.name << ": run complete";
        if (!trace_path.empty()) std::cout << ", trace -> " << trace_path;
        if (args.certify) {
            std::cout << ", checks:";
            for (const auto& r : reports) std::cout << " " << r.name << "=" << to_string(r.status);
        }
        std::cout << "\n";
    }
    if (!report_path.empty() && args.certify) {
        io::save_report_json(report_path, reports, algorithm, lp.name);
    }
    return (!args.certify || all_ok(reports)) ? kExitOk : kExitCertFailure;
}

int cmd_run(const std::string& algorithm, const RunArgs& args) {
    if (args.problems.empty()) throw InputError("--problem: at least one problem is required");
    bool multiple = args.problems.size() > 1;
    std::mutex io_mutex;

    if (!multiple || args.jobs <= 1) {
        int worst = kExitOk;
        for (const auto& spec : args.problems) {
            worst = std::max(worst, run_one(spec, algorithm, args, multiple, io_mutex));
        }
        return worst;
    }

    std::vector<int> results(args.problems.size(), kExitOk);
    std::vector<std::string> errors(args.problems.size());
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex next_mutex;
    for (unsigned t = 0; t < args.jobs; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= args.problems.size()) return;
                    i = next++;
                }
                try {
                    results[i] = run_one(args.problems[i], algorithm, args, true, io_mutex);
                } catch (const InputError& e) {
                    results[i] = kExitInput;
                    errors[i] = e.what();
                } catch (const std::exception& e) {
                    results[i] = kExitSolver;
                    errors[i] = e.what();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    int worst = kExitOk;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!errors[i].empty()) std::cerr << args.problems[i] << ": " << errors[i] << "\n";
        worst = std::max(worst, results[i]);
    }
    return worst;
}

Vec parse_vec_arg(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        vals.push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (vals.empty()) throw InputError("expected a comma-separated list of numbers");
    return Vec(std::move(vals));
}

Atom parse_atom_arg(const std::string& name, double lambda, double lo, double hi,
                    std::size_t dim) {
    if (name == "zero") return Atom::zero();
    if (name == "l1") return Atom::l1(lambda);
    if (name == "sq_l2") return Atom::sq_l2(lambda);
    if (name == "nonneg") return Atom::ind_nonneg();
    if (name == "box") {
        Vec lov(dim), hiv(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            lov[i] = lo;
            hiv[i] = hi;
        }
        return Atom::ind_box(std::move(lov), std::move(hiv));
    }
    throw InputError("--atom: unknown atom '" + name +
                     "' (supported: zero, l1, sq_l2, nonneg, box)");
}

int cmd_oracle_prox(const std::string& atom_name, double lambda, double t, double x, double step,
                    double lo, double hi) {
    Atom atom = parse_atom_arg(atom_name, lambda, lo, hi, 1);
    Vec xv{x};
    ProxResult analytic = prox(atom, t, xv);
    auto f1d = [&](double u) {
        ExtReal a = atom.value_1d(u);
        if (!a.finite) return ExtReal::infinite();
        return ExtReal::of(t * a.v);
    };
    double grid = prox_oracle_1d(f1d, x, step);
    std::cout << "analytic: " << analytic.point[0] << "\n";
    std::cout << "grid:     " << grid << " (step " << step << ")\n";
    std::cout << "abs diff: " << std::fabs(analytic.point[0] - grid) << "\n";
    return kExitOk;
}

int cmd_oracle_grad(const std::string& builtin, const std::string& x_csv, double h) {
    io::LoadedProblem lp = io::load_builtin(builtin, default_seed());
    if (lp.algorithm != "bcd") {
        throw InputError("oracle grad: built-in '" + builtin + "' is not a bcd problem");
    }
    const BcdProblem& p = *lp.bcd;
    Vec z0;
    if (x_csv.empty()) {
        Rng rng(7);
        z0 = rng.uniform_vec(p.n + p.m, -1.0, 1.0);
    } else {
        z0 = parse_vec_arg(x_csv);
        if (z0.size() != p.n + p.m) {
            throw InputError("--x: expected " + std::to_string(p.n + p.m) + " coordinates");
        }
    }
    auto splitz = [&](const Vec& z) {
        Vec x(p.n), y(p.m);
        for (std::size_t i = 0; i < p.n; ++i) x[i] = z[i];
        for (std::size_t i = 0; i < p.m; ++i) y[i] = z[p.n + i];
        return BlockPair{std::move(x), std::move(y)};
    };
    SmoothPart sp;
    sp.value = [&, splitz](const Vec& z) {
        BlockPair b = splitz(z);
        return p.h.value(b.x, b.y);
    };
    sp.grad = [&, splitz](const Vec& z) {
        BlockPair b = splitz(z);
        Vec gx = p.h.grad_x(b.x, b.y);
        Vec gy = p.h.grad_y(b.x, b.y);
        Vec g(p.n + p.m);
        for (std::size_t i = 0; i < p.n; ++i) g[i] = gx[i];
        for (std::size_t i = 0; i < p.m; ++i) g[p.n + i] = gy[i];
        return g;
    };
    StructuredFn f{Atom::zero(), std::move(sp)};
    double err = grad_fd_check(f, z0, h);
    std::cout << "fd-vs-analytic max coordinate error: " << err << " (h " << h << ")\n";
    return kExitOk;
}

int cmd_oracle_subdiff(const std::string& atom_name, double lambda, double lo, double hi,
                       const std::string& x_csv, const std::string& grad_csv) {
    Vec x = parse_vec_arg(x_csv);
    Atom atom = parse_atom_arg(atom_name, lambda, lo, hi, x.size());
    StructuredFn f{atom, std::nullopt};
    Vec g(x.size());
    if (!grad_csv.empty()) {
        g = parse_vec_arg(grad_csv);
        if (g.size() != x.size()) throw InputError("--grad: dimension mismatch with --x");
        SmoothPart sp;
        Vec gc = g;
        sp.value = [gc](const Vec& v) { return gc.dot(v); };  // linear smooth part
        sp.grad = [gc](const Vec&) { return gc; };
        f.smooth = std::move(sp);
    }

    ExtReal analytic = subdiff_distance(f, x);

    // brute force: scan a fine discretization of each coordinate interval
    SubdiffInterval iv = atom_subdiff_interval(atom, x);
    double brute_sq = 0.0;
    bool feasible = iv.feasible;
    if (feasible) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            double target = -g[i];
            double cap = 10.0 * (std::fabs(target) + 1.0);
            double lo_i = std::max(iv.lo[i], target - cap);
            double hi_i = std::min(iv.hi[i], target + cap);
            double best = std::numeric_limits<double>::infinity();
            const int steps = 200000;
            for (int s = 0; s <= steps; ++s) {
                double v = lo_i + (hi_i - lo_i) * s / steps;
                best = std::min(best, std::fabs(v - target));
            }
            brute_sq += best * best;
        }
    }
    std::cout << "analytic: " << (analytic.finite ? std::to_string(analytic.v) : "inf") << "\n";
    std::cout << "brute:    " << (feasible ? std::to_string(std::sqrt(brute_sq)) : "inf") << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string trace_path, problem, checks, report_path;
    double theta = -1.0;
    std::string c_arg = "auto";
    double f_limit = std::numeric_limits<double>::quiet_NaN();
    long long burn_in = -1;
};

int cmd_verify(const VerifyArgs& va) {
    io::LoadedProblem lp = io::load_problem(va.problem, default_seed());
    io::LoadedTrace lt = io::load_trace_csv(va.trace_path);
    if (lt.algorithm != lp.algorithm) {
        throw InputError("trace algorithm '" + lt.algorithm + "' does not match problem '" +
                         lp.algorithm + "'");
    }

    std::vector<std::string> selected;
    {
        std::stringstream ss(va.checks);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) selected.push_back(item);
        }
    }
    auto wants = [&](const std::string& name) {
        if (selected.empty()) return true;
        for (const auto& s : selected) {
            if (s == name) return true;
        }
        return false;
    };
    const std::vector<std::string> known = {"descent", "steps", "subdiff", "length",
                                            "critical", "phi",   "uv",      "kkt",
                                            "kl"};
    for (const auto& s : selected) {
        if (std::find(known.begin(), known.end(), s) == known.end()) {
            throw InputError("--checks: unknown check '" + s + "'");
        }
    }

    std::vector<CheckReport> reports;
    if (lp.algorithm == "bcd") {
        if (!lt.has_vectors) {
            throw InputError("trace has no iterate vectors (written with n+m > 64 and no "
                             "--full-trace); cannot recompute certificates");
        }
        const BcdProblem& p = *lp.bcd;
        const BcdTrace& t = *lt.bcd;
        if (!t.xs.empty() && (t.xs[0].size() != p.n || t.ys[0].size() != p.m)) {
            throw InputError("trace dimensions do not match the problem");
        }
        if (wants("descent")) reports.push_back(check_sufficient_descent(t, t.gamma, t.l));
        if (wants("steps")) reports.push_back(check_step_vanishing(t));
        if (wants("subdiff")) reports.push_back(check_subdiff_bound(p, t, t.gamma, t.l));
        if (wants("length")) reports.push_back(check_finite_length(t));
        if (wants("critical")) reports.push_back(check_limit_criticality(p, t, 1e-6));
        if (wants("kl")) {
            BcdCertifyOptions opt;
            opt.with_kl = true;
            if (!std::isnan(va.f_limit)) opt.f_limit = va.f_limit;
            if (va.theta >= 0.0) opt.kl_theta = va.theta;
            if (va.c_arg != "auto") opt.kl_c = std::strtod(va.c_arg.c_str(), nullptr);
            if (va.burn_in > 0) opt.kl_burn_in = static_cast<std::size_t>(va.burn_in);
            auto all = certify_bcd(p, t, opt);
            reports.push_back(all.back());  // the kl check is last
        }
    } else {
        if (!lt.has_vectors) {
            throw InputError("trace has no iterate vectors; cannot recompute certificates");
        }
        const AdmmProblem& p = *lp.admm;
        AdmmTrace& t = *lt.admm;
        if (!t.x1.empty() &&
            (t.x1[0].size() != p.n() || t.x2[0].size() != p.m() || t.y[0].size() != p.p())) {
            throw InputError("trace dimensions do not match the problem");
        }
        io::rebuild_residuals(t, p);
        std::vector<KktPair> refs;
        std::string no_ref_reason;
        if (wants("phi") || wants("uv")) {
            try {
                refs = admm_references(p);
            } catch (const InputError& e) {
                no_ref_reason = e.what();
            }
        }
        if (!refs.empty()) {
            AuxSequences aux = compute_aux(p, t, refs[0].x1, refs[0].x2, refs[0].y);
            if (wants("phi")) reports.push_back(check_phi_descent(aux, t.rho, t.tau));
            if (wants("uv")) {
                reports.push_back(check_uv_membership(
                    p, aux, t, uv_membership_tol(t.route1, t.inner_tol),
                    uv_membership_tol(t.route2, t.inner_tol)));
            }
        } else if (!no_ref_reason.empty()) {
            CheckReport rep;
            rep.name = "phi_descent";
            rep.certifies = "phi-descent";
            rep.status = CheckStatus::inconclusive;
            rep.details = "no KKT reference: " + no_ref_reason;
            reports.push_back(std::move(rep));
        }
        if (wants("kkt")) {
            reports.push_back(check_dual_update_exactness(t));
            reports.push_back(check_convergence_to_kkt(p, t, 1e-5));
        }
    }

    for (const auto& r : reports) {
        std::cout << r.name << ": " << to_string(r.status);
        if (!r.violations.empty()) {
            std::cout << " (first violating index " << r.violations.front() << ")";
        }
        if (!r.details.empty()) std::cout << " - " << r.details;
        std::cout << "\n";
    }
    if (!va.report_path.empty()) {
        io::save_report_json(va.report_path, reports, lp.algorithm, lp.name);
    }
    return all_ok(reports) ? kExitOk : kExitCertFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockopt: block-structured solvers with convergence certificates"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--problem", run_args.problems,
                        "problem JSON file or built-in name (repeatable)")
            ->required();
        cmd->add_option("--trace", run_args.trace_path, "write the iterate trace CSV here");
        cmd->add_option("--report", run_args.report_path, "write the certificate report here");
        cmd->add_flag("--certify", run_args.certify, "run the certificate suite");
        cmd->add_flag("--full-trace", run_args.full_trace,
                      "always include iterate vectors in the CSV");
        cmd->add_option("--max-iters", run_args.max_iters, "override iteration budget");
        cmd->add_option("--tol", run_args.tol, "override stopping tolerance(s)");
        cmd->add_option("--seed", run_args.seed, "override the seed (also env BLOCKOPT_SEED)");
        cmd->add_option("--jobs", run_args.jobs, "run multiple problems concurrently");
    };

    CLI::App* run_bcd_cmd = app.add_subcommand("run-bcd", "run the block coordinate solver");
    add_common(run_bcd_cmd);
    run_bcd_cmd->add_option("--gamma", run_args.gamma, "step-size parameter (> 1)");

    CLI::App* run_admm_cmd = app.add_subcommand("run-admm", "run the two-block ADMM solver");
    add_common(run_admm_cmd);
    run_admm_cmd->add_option("--rho", run_args.rho, "penalty parameter (> 0)");
    run_admm_cmd->add_option("--tau", run_args.tau, "dual step size in (0, (1+sqrt(5))/2)");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "re-run certificates on a stored trace");
    verify_cmd->add_option("--trace", verify_args.trace_path, "trace CSV")->required();
    verify_cmd->add_option("--problem", verify_args.problem, "problem file or built-in")
        ->required();
    verify_cmd->add_option("--checks", verify_args.checks,
                           "comma list from descent,steps,subdiff,length,critical,phi,uv,kkt,kl");
    verify_cmd->add_option("--report", verify_args.report_path, "write the report here");
    verify_cmd->add_option("--theta", verify_args.theta, "KL exponent (with --checks kl)");
    verify_cmd->add_option("--c", verify_args.c_arg, "KL constant or 'auto'");
    verify_cmd->add_option("--f-limit", verify_args.f_limit,
                           "objective limit for KL (default: final trace value)");
    verify_cmd->add_option("--burn-in", verify_args.burn_in, "skip this many leading iterates");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force oracle comparisons");
    oracle_cmd->require_subcommand(1);
    std::string o_atom = "l1", o_builtin = "quadratic", o_x_csv, o_grad_csv;
    double o_lambda = 1.0, o_t = 1.0, o_x = 0.0, o_step = 1e-5, o_h = 1e-5;
    double o_lo = -1.0, o_hi = 1.0;
    CLI::App* oracle_prox = oracle_cmd->add_subcommand("prox", "grid-vs-analytic prox");
    oracle_prox->add_option("--atom", o_atom, "zero|l1|sq_l2|nonneg|box");
    oracle_prox->add_option("--lambda", o_lambda, "atom weight");
    oracle_prox->add_option("--t", o_t, "prox scale t > 0");
    oracle_prox->add_option("--x", o_x, "query point (scalar)")->required();
    oracle_prox->add_option("--step", o_step, "grid step");
    oracle_prox->add_option("--lo", o_lo, "box lower bound");
    oracle_prox->add_option("--hi", o_hi, "box upper bound");
    CLI::App* oracle_grad = oracle_cmd->add_subcommand("grad", "finite-difference gradient check");
    oracle_grad->add_option("--builtin", o_builtin, "built-in bcd problem name");
    oracle_grad->add_option("--x", o_x_csv, "point as comma list (default random)");
    oracle_grad->add_option("--fd-step", o_h, "finite-difference step");
    CLI::App* oracle_sd = oracle_cmd->add_subcommand("subdiff-dist", "interval-vs-brute distance");
    oracle_sd->add_option("--atom", o_atom, "zero|l1|sq_l2|nonneg|box");
    oracle_sd->add_option("--lambda", o_lambda, "atom weight");
    oracle_sd->add_option("--x", o_x_csv, "point as comma list")->required();
    oracle_sd->add_option("--grad", o_grad_csv, "smooth gradient at x (comma list)");
    oracle_sd->add_option("--lo", o_lo, "box lower bound");
    oracle_sd->add_option("--hi", o_hi, "box upper bound");

    CLI::App* list_cmd = app.add_subcommand("list-problems", "list built-in problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (run_bcd_cmd->parsed()) return cmd_run("bcd", run_args);
        if (run_admm_cmd->parsed()) return cmd_run("admm", run_args);
        if (verify_cmd->parsed()) return cmd_verify(verify_args);
        if (oracle_cmd->parsed()) {
            if (oracle_prox->parsed()) {
                return cmd_oracle_prox(o_atom, o_lambda, o_t, o_x, o_step, o_lo, o_hi);
            }
            if (oracle_grad->parsed()) return cmd_oracle_grad(o_builtin, o_x_csv, o_h);
            if (oracle_sd->parsed()) {
                return cmd_oracle_subdiff(o_atom, o_lambda, o_lo, o_hi, o_x_csv, o_grad_csv);
            }
        }
        if (list_cmd->parsed()) {
            for (const auto& name : builtin_names()) std::cout << name << "\n";
            return kExitOk;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitInput;
}
