// Acceptance suite: one pass/fail line per criterion
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blockopt/certify.hpp"
#include "blockopt/errors.hpp"
#include "blockopt/io.hpp"
#include "blockopt/kl.hpp"
#include "blockopt/problems.hpp"
#include "blockopt/prox.hpp"
#include "blockopt/subdiff.hpp"

using namespace blockopt;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion(int id, const std::string& label, const std::function<std::string()>& body) {
    Clock::time_point t0 = Clock::now();
    std::string problem;
    try {
        problem = body();
    } catch (const std::exception& e) {
        problem = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    if (problem.empty()) {
        std::printf("[PASS] criterion %2d: %s (%.2fs)\n", id, label.c_str(), dt);
    } else {
        std::printf("[FAIL] criterion %2d: %s (%.2fs) -- %s\n", id, label.c_str(), dt,
                    problem.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct StoredRun {
    std::string problem_name;
    double gamma;
    BcdProblem problem;
    BcdTrace trace;
    double seconds;
};

std::vector<StoredRun> bcd_runs;  // filled by criterion 1, reused by 2

std::string run_criterion_1() {
    std::ostringstream issues;
    for (const char* name : {"quadratic", "lasso-bcd"}) {
        for (double gamma : {1.1, 2.0, 10.0}) {
            auto built = name == std::string("quadratic") ? make_quadratic(42)
                                                          : make_lasso_bcd(42);
            BcdConfig cfg = built.config;
            cfg.gamma = gamma;
            cfg.max_iters = 5000;
            cfg.stop_tol = 0.0;
            Clock::time_point t0 = Clock::now();
            BcdTrace trace = run_bcd(built.problem, cfg);
            double dt = seconds_since(t0);
            if (trace.iterations() < 5000) {
                issues << name << " gamma=" << gamma << ": only " << trace.iterations()
                       << " iterations; ";
            }
            CheckReport rep = check_sufficient_descent(trace, gamma, trace.l);
            if (rep.status != CheckStatus::pass || !rep.violations.empty()) {
                issues << name << " gamma=" << gamma << ": " << rep.violations.size()
                       << " descent violations (" << rep.details << "); ";
            }
            if (dt >= 5.0) {
                issues << name << " gamma=" << gamma << ": took " << fmt(dt) << "s >= 5s; ";
            }
            bcd_runs.push_back({name, gamma, built.problem, std::move(trace), dt});
        }
    }
    return issues.str();
}

std::string run_criterion_2() {
    std::ostringstream issues;
    for (const StoredRun& run : bcd_runs) {
        CheckReport rep =
            check_subdiff_bound(run.problem, run.trace, run.gamma, run.trace.l);
        if (rep.status != CheckStatus::pass) {
            issues << run.problem_name << " gamma=" << run.gamma << ": bound violated ("
                   << rep.details << "); ";
            continue;
        }
        double max_ratio = rep.metrics.at("max_ratio_vs_l");
        if (max_ratio > (2.0 * run.gamma + 2.0) * (1.0 + 1e-9)) {
            issues << run.problem_name << " gamma=" << run.gamma << ": ratio " << fmt(max_ratio)
                   << " above 2*gamma+2; ";
        }
        std::size_t bad_membership = 0;
        for (std::size_t k = 1; k <= run.trace.iterations(); ++k) {
            auto [ax, ay] = compute_subgrad_witness(run.problem, run.trace, k, run.gamma);
            bool ok_x =
                membership(run.problem.x_block_fn(run.trace.ys[k]), run.trace.xs[k], ax, 1e-8);
            bool ok_y =
                membership(run.problem.y_block_fn(run.trace.xs[k]), run.trace.ys[k], ay, 1e-8);
            if (!ok_x || !ok_y) ++bad_membership;
        }
        if (bad_membership > 0) {
            issues << run.problem_name << " gamma=" << run.gamma << ": " << bad_membership
                   << " membership failures at tol 1e-8; ";
        }
    }
    return issues.str();
}

BcdTrace lasso_trace_for_c3;  // reused by criterion 9
double lasso_psi_ref = 0.0;

std::string run_criterion_3() {
    std::ostringstream issues;
    auto built = make_lasso_bcd(42);
    lasso_trace_for_c3 = run_bcd(built.problem, built.config);
    const BcdTrace& t = lasso_trace_for_c3;

    CheckReport fl = check_finite_length(t);
    if (fl.status != CheckStatus::pass) {
        issues << "finite-length/Cauchy-tail failed: " << fl.details << "; ";
    }
    double final_dist = t.subdiff_dist[t.iterations()];
    if (!(final_dist <= 1e-6)) {
        issues << "final dist(0, subdiff) = " << fmt(final_dist) << " > 1e-6; ";
    }
    BlockPair z_ref = bcd_reference(built.problem, 1e-10);
    lasso_psi_ref = built.problem.psi(z_ref).v;
    double gap = std::fabs(t.psi[t.iterations()] - lasso_psi_ref);
    if (!(gap <= 1e-8)) {
        issues << "objective gap to reference = " << fmt(gap) << " > 1e-8; ";
    }
    return issues.str();
}

AdmmTrace consensus_trace_tau1rho1;  // reused by criteria 5 and 6

std::string run_criterion_4() {
    std::ostringstream issues;
    auto built = make_consensus_lasso(42);
    auto refs = admm_references(built.problem);
    for (double tau : {0.5, 1.0, 1.5, 1.6}) {
        for (double rho : {0.1, 1.0, 10.0}) {
            AdmmConfig cfg = built.config;
            cfg.tau = tau;
            cfg.rho = rho;
            cfg.max_iters = 2000;
            Clock::time_point t0 = Clock::now();
            AdmmTrace trace = run_admm(built.problem, cfg);
            double dt = seconds_since(t0);
            AuxSequences aux =
                compute_aux(built.problem, trace, refs[0].x1, refs[0].x2, refs[0].y);
            CheckReport rep = check_phi_descent(aux, rho, tau);
            if (rep.status != CheckStatus::pass) {
                issues << "tau=" << tau << " rho=" << rho << ": " << rep.violations.size()
                       << " violations (" << rep.details << "); ";
            } else if (rep.metrics.at("monotone_violations") != 0.0) {
                issues << "tau=" << tau << " rho=" << rho << ": Phi not monotone; ";
            }
            if (dt >= 10.0) {
                issues << "tau=" << tau << " rho=" << rho << ": took " << fmt(dt) << "s >= 10s; ";
            }
            if (tau == 1.0 && rho == 1.0) consensus_trace_tau1rho1 = std::move(trace);
        }
    }
    return issues.str();
}

std::string run_criterion_5() {
    std::ostringstream issues;
    {
        auto built = make_consensus_lasso(42);
        auto refs = admm_references(built.problem);
        const AdmmTrace& t = consensus_trace_tau1rho1;
        AuxSequences aux = compute_aux(built.problem, t, refs[0].x1, refs[0].x2, refs[0].y);
        if (t.route1 == SubproblemRoute::inner || t.route2 == SubproblemRoute::inner) {
            issues << "consensus-lasso unexpectedly used the inner route; ";
        }
        CheckReport rep = check_uv_membership(built.problem, aux, t, 1e-10, 1e-10);
        if (rep.status != CheckStatus::pass) {
            issues << "closed-form path membership at 1e-10 failed (" << rep.details << "); ";
        }
    }
    {
        auto built = make_basis_pursuit(42);
        AdmmTrace t = run_admm(built.problem, built.config);
        if (t.route2 != SubproblemRoute::inner) {
            issues << "basis-pursuit block 2 did not take the inner route; ";
        }
        auto refs = admm_references(built.problem);
        AuxSequences aux = compute_aux(built.problem, t, refs[0].x1, refs[0].x2, refs[0].y);
        double tol1 = uv_membership_tol(t.route1, t.inner_tol);
        double tol2 = uv_membership_tol(t.route2, t.inner_tol);
        if (tol2 != 100.0 * built.config.inner_tol) {
            issues << "inner-path tolerance policy is not 100*inner_tol; ";
        }
        CheckReport rep = check_uv_membership(built.problem, aux, t, tol1, tol2);
        if (rep.status != CheckStatus::pass) {
            issues << "inner path membership at 100*inner_tol failed (" << rep.details << "); ";
        }
    }
    return issues.str();
}

std::string run_criterion_6() {
    std::ostringstream issues;
    for (const char* name : {"consensus-lasso", "basis-pursuit"}) {
        auto built = name == std::string("consensus-lasso") ? make_consensus_lasso(42)
                                                            : make_basis_pursuit(42);
        AdmmConfig cfg = built.config;
        cfg.max_iters = 5000;
        AdmmTrace t = run_admm(built.problem, cfg);
        if (!t.converged) {
            issues << name << ": not converged within 5000 iterations; ";
            continue;
        }
        KktResiduals kkt =
            kkt_check(built.problem, t.x1.back(), t.x2.back(), t.y.back(), 1e-5);
        if (!kkt.pass) {
            issues << name << ": KKT residuals (" << fmt(kkt.primal) << ", " << fmt(kkt.dual1)
                   << ", " << fmt(kkt.dual2) << ") above 1e-5; ";
        }
        auto refs = admm_references(built.problem);
        double dist = std::sqrt((t.x1.back() - refs[0].x1).sqnorm() +
                                (t.x2.back() - refs[0].x2).sqnorm() +
                                (t.y.back() - refs[0].y).sqnorm());
        if (!(dist <= 1e-4)) {
            issues << name << ": final point " << fmt(dist) << " from reference (> 1e-4); ";
        }
    }
    return issues.str();
}

std::string run_criterion_7() {
    std::ostringstream issues;
    {
        BcdConfig cfg;
        cfg.gamma = 1.0;
        try {
            cfg.validate();
            issues << "gamma = 1 accepted; ";
        } catch (const InputError&) {
        }
        cfg.gamma = 0.5;
        try {
            cfg.validate();
            issues << "gamma = 0.5 accepted; ";
        } catch (const InputError&) {
        }
    }
    {
        AdmmConfig cfg;
        cfg.tau = 1.7;
        try {
            cfg.validate();
            issues << "tau = 1.7 accepted; ";
        } catch (const InputError& e) {
            if (std::string(e.what()).find("1.6180339887") == std::string::npos) {
                issues << "tau rejection does not cite the exact bound; ";
            }
        }
        cfg.tau = 0.0;
        try {
            cfg.validate();
            issues << "tau = 0 accepted; ";
        } catch (const InputError&) {
        }
        cfg.tau = 1.0;
        cfg.rho = 0.0;
        try {
            cfg.validate();
            issues << "rho = 0 accepted; ";
        } catch (const InputError&) {
        }
        cfg.rho = -2.0;
        try {
            cfg.validate();
            issues << "rho = -2 accepted; ";
        } catch (const InputError&) {
        }
    }
    return issues.str();
}

std::string run_criterion_8() {
    std::ostringstream issues;

    // prox vs grid oracle, 100 instances per atom at the default 1e-5 step
    std::vector<Atom> atoms = {Atom::zero(), Atom::l1(0.8), Atom::sq_l2(0.6),
                               Atom::ind_nonneg(), Atom::ind_box(Vec{-0.5}, Vec{1.25})};
    Rng rng(2024);
    for (const Atom& a : atoms) {
        std::size_t bad = 0;
        for (int inst = 0; inst < 100; ++inst) {
            double t = rng.uniform(0.1, 3.0);
            double x = rng.uniform(-2.0, 2.0);
            double closed = prox(a, t, Vec{x}).point[0];
            auto f1d = [&](double u) {
                ExtReal v = a.value_1d(u);
                if (!v.finite) return ExtReal::infinite();
                return ExtReal::of(t * v.v);
            };
            double grid = prox_oracle_1d(f1d, x, 1e-5);
            if (std::fabs(closed - grid) > 2e-5) ++bad;
        }
        if (bad > 0) {
            issues << a.describe() << ": " << bad << "/100 grid disagreements; ";
        }
    }

    // finite-difference gradient checks on every smooth coupling in the library
    struct NamedCoupling {
        std::string name;
        SmoothCoupling h;
        std::size_t n, m;
    };
    std::vector<NamedCoupling> couplings;
    {
        auto q = make_quadratic(42);
        couplings.push_back({"quadratic-H", q.problem.h, q.problem.n, q.problem.m});
        auto l = make_lasso_bcd(42);
        couplings.push_back({"lasso-bcd-H", l.problem.h, l.problem.n, l.problem.m});
    }
    Rng grng(77);
    for (const auto& nc : couplings) {
        SmoothPart sp;
        const SmoothCoupling& h = nc.h;
        std::size_t n = nc.n;
        sp.value = [h, n](const Vec& z) {
            Vec x(n), y(z.size() - n);
            for (std::size_t i = 0; i < n; ++i) x[i] = z[i];
            for (std::size_t i = n; i < z.size(); ++i) y[i - n] = z[i];
            return h.value(x, y);
        };
        sp.grad = [h, n](const Vec& z) {
            Vec x(n), y(z.size() - n);
            for (std::size_t i = 0; i < n; ++i) x[i] = z[i];
            for (std::size_t i = n; i < z.size(); ++i) y[i - n] = z[i];
            Vec gx = h.grad_x(x, y);
            Vec gy = h.grad_y(x, y);
            Vec g(z.size());
            for (std::size_t i = 0; i < n; ++i) g[i] = gx[i];
            for (std::size_t i = 0; i < gy.size(); ++i) g[n + i] = gy[i];
            return g;
        };
        StructuredFn f{Atom::zero(), std::move(sp)};
        Vec z = grng.uniform_vec(nc.n + nc.m, -1.0, 1.0);
        double err = grad_fd_check(f, z, 1e-5);
        if (!(err < 1e-6)) {
            issues << nc.name << ": fd gradient error " << fmt(err) << " >= 1e-6; ";
        }
    }
    // quadratic smooth addends used by the ADMM built-ins
    for (const char* name : {"consensus-lasso", "basis-pursuit"}) {
        auto built = name == std::string("consensus-lasso") ? make_consensus_lasso(42)
                                                            : make_basis_pursuit(42);
        const QuadForm& q = *built.problem.smooth1;
        SmoothPart sp;
        sp.value = [q](const Vec& v) { return q.value(v); };
        sp.grad = [q](const Vec& v) { return q.grad(v); };
        StructuredFn f{Atom::zero(), std::move(sp)};
        Vec v = grng.uniform_vec(q.g.cols(), -1.0, 1.0);
        double err = grad_fd_check(f, v, 1e-5);
        if (!(err < 1e-6)) {
            issues << name << " smooth addend: fd error " << fmt(err) << " >= 1e-6; ";
        }
    }

    // adjoint consistency on 100 random (operator, v, w) triples
    Rng arng(31337);
    std::size_t adjoint_bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 2 + static_cast<std::size_t>(arng.uniform(0.0, 28.0));
        std::size_t cols = 2 + static_cast<std::size_t>(arng.uniform(0.0, 28.0));
        LinOp a = LinOp::random(rows, cols, arng);
        Vec v = arng.uniform_vec(cols, -1.0, 1.0);
        Vec w = arng.uniform_vec(rows, -1.0, 1.0);
        double lhs = a.apply(v).dot(w);
        double rhs = v.dot(a.apply_adjoint(w));
        if (std::fabs(lhs - rhs) > 1e-12 * (1.0 + std::fabs(lhs))) ++adjoint_bad;
    }
    if (adjoint_bad > 0) issues << adjoint_bad << "/100 adjoint triples above 1e-12; ";

    return issues.str();
}

std::string run_criterion_9() {
    std::ostringstream issues;
    {
        auto built = make_quadratic(42);
        BcdConfig cfg = built.config;
        BcdTrace t = run_bcd(built.problem, cfg);
        auto samples = kl_samples(t);

        KlFit fit = fit_kl_exponent(samples, 0.0);
        if (!(std::fabs(fit.theta_hat - 0.5) <= 0.05)) {
            issues << "quadratic: fitted exponent " << fmt(fit.theta_hat) << " not 0.5 +/- 0.05; ";
        }
        // For psi = 0.5*||z||^2: dist = ||z||, gap = 0.5*||z||^2, so
        // phi'(gap)*dist = c*sqrt(2) and c = 1/sqrt(2) is exactly tight.
        Desingularizer d(1.0 / std::sqrt(2.0), 0.5, samples[0].value * 1.01);
        KlReport rep = kl_inequality_along_trace(samples, 0.0, d);
        if (rep.vacuous || rep.violations != 0) {
            issues << "quadratic: " << rep.violations << " violations with the analytic (c, 1/2)"
                   << " (min margin " << fmt(rep.min_margin) << "); ";
        }
    }
    {
        const BcdTrace& t = lasso_trace_for_c3;
        auto samples = kl_samples(t);
        double f_limit = lasso_psi_ref;
        // tail = second half of the eligible decay range
        double floor = 1e-14 * (1.0 + std::fabs(f_limit));
        std::vector<std::size_t> eligible;
        for (std::size_t k = 0; k < samples.size(); ++k) {
            if (samples[k].value - f_limit > floor && samples[k].dist > 0.0) eligible.push_back(k);
        }
        if (eligible.size() < 20) {
            issues << "lasso-bcd: only " << eligible.size() << " eligible points; ";
            return issues.str();
        }
        std::size_t burn_in = eligible[eligible.size() / 2];
        KlFit fit = fit_kl_exponent(samples, f_limit, burn_in);
        double eta = 0.0;
        for (std::size_t k = burn_in; k < samples.size(); ++k) {
            eta = std::max(eta, samples[k].value - f_limit);
        }
        Desingularizer d(fit.c_hat, std::min(std::max(fit.theta_hat, 0.0), 0.999), eta * 1.01);
        KlReport rep = kl_inequality_along_trace(samples, f_limit, d, burn_in);
        if (rep.vacuous || rep.violations != 0) {
            issues << "lasso-bcd: " << rep.violations
                   << " violations with the fitted desingularizer (theta "
                   << fmt(fit.theta_hat) << ", min margin " << fmt(rep.min_margin) << "); ";
        }
    }
    return issues.str();
}

std::string run_criterion_10() {
    std::ostringstream issues;
    for (const std::string& name : builtin_names()) {
        io::LoadedProblem p1 = io::load_builtin(name, 42);
        io::LoadedProblem p2 = io::load_builtin(name, 42);
        std::ostringstream s1, s2;
        if (p1.algorithm == "bcd") {
            BcdConfig cfg = *p1.bcd_cfg;
            cfg.max_iters = 150;
            cfg.stop_tol = 0.0;
            io::write_bcd_trace_csv(s1, run_bcd(*p1.bcd, cfg), true);
            io::write_bcd_trace_csv(s2, run_bcd(*p2.bcd, cfg), true);
        } else {
            AdmmConfig cfg = *p1.admm_cfg;
            cfg.max_iters = 150;
            cfg.primal_tol = 0.0;
            cfg.dual_tol = 0.0;
            io::write_admm_trace_csv(s1, run_admm(*p1.admm, cfg), true);
            io::write_admm_trace_csv(s2, run_admm(*p2.admm, cfg), true);
        }
        if (s1.str() != s2.str()) {
            issues << name << ": same-seed traces differ byte-wise; ";
        }
        if (s1.str().empty()) issues << name << ": empty trace; ";
    }
    return issues.str();
}

}  // namespace

int main() {
    Clock::time_point suite_start = Clock::now();

    criterion(1, "sufficient descent on quadratic/lasso-bcd, gamma in {1.1, 2, 10}",
              run_criterion_1);
    criterion(2, "subgradient witness membership and the (2*gamma+2)*l bound", run_criterion_2);
    criterion(3, "finite length, limit criticality, reference objective gap", run_criterion_3);
    criterion(4, "Phi descent across tau x rho grid on consensus-lasso", run_criterion_4);
    criterion(5, "u/v membership at route-scaled tolerances", run_criterion_5);
    criterion(6, "KKT convergence of consensus-lasso and basis-pursuit", run_criterion_6);
    criterion(7, "config gates: gamma > 1, tau in (0, golden ratio), rho > 0", run_criterion_7);
    criterion(8, "oracle equivalence: prox grid, fd gradients, adjoint pairs", run_criterion_8);
    criterion(9, "KL diagnostics: exponent fit and inequality margins", run_criterion_9);
    criterion(10, "byte-identical traces per seed; suite under 3 minutes", run_criterion_10);

    double total = seconds_since(suite_start);
    std::printf("acceptance total: %.1fs, %d failing criterion(s)\n", total, failures);
    if (total >= 180.0) {
        std::printf("[FAIL] runtime budget: %.1fs >= 180s\n", total);
        ++failures;
    }
    return failures;
}
