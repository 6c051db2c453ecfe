// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/problems.hpp"

#include <algorithm>
#include <cmath>

#include "blockopt/dense.hpp"
#include "blockopt/errors.hpp"
#include "blockopt/prox.hpp"

namespace blockopt {

RandomInstance random_instance(const std::string& kind, std::size_t n, std::size_t m,
                               std::size_t p, Rng& rng) {
    if (n == 0 || m == 0 || p == 0) throw InputError("random_instance: dims must be positive");
    if (kind == "lasso") {
        LinOp a = LinOp::random(p, n, rng);
        Vec c = rng.uniform_vec(p, -1.0, 1.0);
        double lambda = 0.05 * a.apply_adjoint(c).max_abs() + 1e-3;
        return LassoInstance{std::move(a), std::move(c), lambda};
    }
    if (kind == "feasible-admm") {
        LinOp a1 = LinOp::random(p, n, rng);
        LinOp a2 = LinOp::random(p, m, rng);
        Vec x1 = rng.uniform_vec(n, -1.0, 1.0);
        Vec x2 = rng.uniform_vec(m, -1.0, 1.0);
        Vec b = a1.apply(x1) + a2.apply(x2);
        return FeasibleAdmmInstance{std::move(a1), std::move(a2), std::move(b), std::move(x1),
                                    std::move(x2)};
    }
    if (kind == "quadratic-coupling") {
        LinOp a = LinOp::random(p, n, rng);
        LinOp b = LinOp::random(p, m, rng);
        Vec c = rng.uniform_vec(p, -1.0, 1.0);
        return QuadCouplingInstance{std::move(a), std::move(b), std::move(c)};
    }
    throw InputError("random_instance: unsupported kind '" + kind +
                     "' (supported: lasso, feasible-admm, quadratic-coupling)");
}

BuiltinBcd make_quadratic(std::uint64_t seed) {
    const std::size_t n = 20, m = 20;
    LinOp a(n + m, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    LinOp b(n + m, m);
    for (std::size_t i = 0; i < m; ++i) b(n + i, i) = 1.0;

    BcdProblem p;
    p.f = Atom::zero();
    p.g = Atom::zero();
    p.h = quadratic_coupling(std::move(a), std::move(b), Vec(n + m), 1.0);
    p.n = n;
    p.m = m;
    p.name = "quadratic";

    BcdConfig cfg;
    cfg.gamma = 2.0;
    cfg.max_iters = 5000;
    cfg.stop_tol = 0.0;
    cfg.seed = seed;
    return {std::move(p), cfg};
}

BuiltinBcd make_lasso_bcd(std::uint64_t seed) {
    const std::size_t n = 20, m = 20, rows = 80;
    Rng rng(seed);
    Rng ra = rng.split(1), rb = rng.split(2), rc = rng.split(3);
    LinOp a = LinOp::random(rows, n, ra);
    LinOp b = LinOp::random(rows, m, rb);
    Vec c = rc.uniform_vec(rows, -1.0, 1.0);

    BcdProblem p;
    p.f = Atom::l1(0.5);
    p.g = Atom::l1(0.3);
    p.h = quadratic_coupling(std::move(a), std::move(b), std::move(c));
    p.n = n;
    p.m = m;
    p.name = "lasso-bcd";

    BcdConfig cfg;
    cfg.gamma = 1.5;
    cfg.max_iters = 20000;
    cfg.stop_tol = 0.0;
    cfg.seed = seed;
    return {std::move(p), cfg};
}

BuiltinAdmm make_consensus_lasso(std::uint64_t seed) {
    const std::size_t nfeat = 50, nsamp = 20;
    Rng rng(seed);
    Rng ra = rng.split(1), rc = rng.split(2);
    LinOp data = LinOp::random(nsamp, nfeat, ra);
    Vec c = rc.uniform_vec(nsamp, -1.0, 1.0);

    AdmmProblem p;
    p.f1 = Atom::zero();
    p.smooth1 = QuadForm{data, c};
    p.f2 = Atom::l1(0.5);
    p.a1 = LinOp::identity(nfeat);
    p.a2 = LinOp::identity(nfeat).negated();
    p.b = Vec(nfeat);
    p.name = "consensus-lasso";
    p.feasible_point = {Vec(nfeat), Vec(nfeat)};  // x1 = x2 = 0 is feasible

    AdmmConfig cfg;
    cfg.rho = 1.0;
    cfg.tau = 1.0;
    cfg.max_iters = 5000;
    cfg.primal_tol = 1e-10;
    cfg.dual_tol = 1e-10;
    cfg.seed = seed;
    return {std::move(p), cfg};
}

BuiltinAdmm make_basis_pursuit(std::uint64_t seed) {
    const std::size_t rows = 20, feats = 15;
    Rng rng(seed);
    Rng ra = rng.split(1), rc = rng.split(2);
    LinOp data = LinOp::random(rows, feats, ra);
    Vec c = rc.uniform_vec(rows, -1.0, 1.0);

    AdmmProblem p;
    p.f1 = Atom::zero();
    p.smooth1 = QuadForm{LinOp::identity(rows), Vec(rows)};  // 0.5*||x1||^2
    p.f2 = Atom::l1(0.3);
    p.a1 = LinOp::identity(rows).negated();
    p.a2 = data;
    p.b = c;
    p.name = "basis-pursuit";
    // x2 = 0, x1 = -c satisfies A1 x1 + A2 x2 = b
    p.feasible_point = {c * -1.0, Vec(feats)};

    AdmmConfig cfg;
    cfg.rho = 1.0;
    cfg.tau = 1.0;
    cfg.max_iters = 5000;
    cfg.primal_tol = 1e-10;
    cfg.dual_tol = 1e-10;
    cfg.inner_tol = 1e-9;
    cfg.seed = seed;
    return {std::move(p), cfg};
}

BuiltinAdmm make_rank_deficient(std::uint64_t seed) {
    LinOp a(3, 2, {1.0, 0.0, 0.0, 1.0, 1.0, 1.0});

    AdmmProblem p;
    p.f1 = Atom::sq_l2(0.5);
    p.f2 = Atom::sq_l2(0.5);
    p.a1 = a;
    p.a2 = a;
    Vec x_tilde{1.0, 1.0};
    p.b = p.a1.apply(x_tilde) + p.a2.apply(x_tilde);
    p.name = "rank-deficient";
    p.feasible_point = {x_tilde, x_tilde};

    AdmmConfig cfg;
    cfg.rho = 1.0;
    cfg.tau = 1.0;
    cfg.max_iters = 500;
    cfg.primal_tol = 1e-12;
    cfg.dual_tol = 1e-12;
    cfg.seed = seed;
    return {std::move(p), cfg};
}

std::vector<std::string> builtin_names() {
    return {"quadratic", "lasso-bcd", "consensus-lasso", "basis-pursuit", "rank-deficient"};
}

bool is_builtin(const std::string& name) {
    auto names = builtin_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Vec lasso_reference(const LinOp& a, const Vec& c, double lambda, double tol,
                    std::size_t max_iters) {
    const double l = largest_singular_value(a);
    const double step = 1.0 / (l * l * 1.0000001 + 1e-12);
    const Atom atom = Atom::l1(lambda);
    SubdiffInterval iv;

    auto objective = [&](const Vec& x, const Vec& res) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) l1 += std::fabs(x[i]);
        return 0.5 * res.sqnorm() + lambda * l1;
    };

    Vec x(a.cols());
    Vec z = x;
    double t = 1.0;
    Vec res = a.apply(x) - c;
    double fx = objective(x, res);

    for (std::size_t it = 0; it < max_iters; ++it) {
        Vec res_z = a.apply(z) - c;
        Vec grad_z = a.apply_adjoint(res_z);
        Vec x_new = prox(atom, step, z - grad_z * step).point;
        Vec res_new = a.apply(x_new) - c;
        double f_new = objective(x_new, res_new);

        if (f_new > fx && t > 1.0) {
            // momentum overshoot: restart from the last accepted point.
            // A plain step (t == 1) is monotone up to roundoff and must be
            // accepted, or the loop can stall at the solution.
            z = x;
            t = 1.0;
            continue;
        }

        double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        z = x_new + (x_new - x) * ((t - 1.0) / t_new);
        x = std::move(x_new);
        fx = f_new;
        t = t_new;

        Vec grad_x = a.apply_adjoint(res_new);
        iv = atom_subdiff_interval(atom, x);
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double target = -grad_x[i];
            double d = target < iv.lo[i] ? iv.lo[i] - target
                                         : (target > iv.hi[i] ? target - iv.hi[i] : 0.0);
            sq += d * d;
        }
        if (std::sqrt(sq) <= tol) return x;
    }
    throw SolverError("lasso_reference: did not reach tol " + std::to_string(tol) + " within " +
                      std::to_string(max_iters) + " iterations");
}

BlockPair bcd_reference(const BcdProblem& p, double tol, std::size_t max_iters) {
    const double step = 1.0 / p.h.lipschitz_l;
    BlockPair z{Vec(p.n), Vec(p.m)};
    if (p.f.is_indicator()) z.x = prox(p.f, 1.0, z.x).point;
    if (p.g.is_indicator()) z.y = prox(p.g, 1.0, z.y).point;

    for (std::size_t it = 0; it < max_iters; ++it) {
        // joint forward-backward step: both gradients at the same point
        Vec gx = p.h.grad_x(z.x, z.y);
        Vec gy = p.h.grad_y(z.x, z.y);
        BlockPair z_new{prox(p.f, step, z.x - gx * step).point,
                        prox(p.g, step, z.y - gy * step).point};
        z = std::move(z_new);
        ExtReal d = p.subdiff_dist(z);
        if (d.finite && d.v <= tol) return z;
    }
    throw SolverError("bcd_reference: did not reach tol within max_iters");
}

std::vector<KktPair> admm_references(const AdmmProblem& p) {
    if (p.kkt_reference) return {*p.kkt_reference};
    if (p.name == "consensus-lasso") {
        const QuadForm& q = *p.smooth1;
        Vec x_star = lasso_reference(q.g, q.h, p.f2.lambda());
        Vec y_star = q.g.apply_adjoint(q.g.apply(x_star) - q.h) * -1.0;
        return {{x_star, x_star, y_star}};
    }
    if (p.name == "basis-pursuit") {
        Vec x2_star = lasso_reference(p.a2, p.b, p.f2.lambda());
        Vec x1_star = p.a2.apply(x2_star) - p.b;
        Vec y_star = x1_star;
        return {{x1_star, x2_star, y_star}};
    }
    if (p.name == "rank-deficient") {
        // Stationarity x_i = -A_i^T y plus feasibility forces
        // (A1 A1^T + A2 A2^T) y = -b; pseudo-inverse gives the min-norm dual
        // and the null space spans the rest of the dual line.
        LinOp s(p.p(), p.p());
        LinOp g1 = p.a1.transpose().gram();  // A1 A1^T
        LinOp g2 = p.a2.transpose().gram();
        for (std::size_t i = 0; i < p.p(); ++i)
            for (std::size_t j = 0; j < p.p(); ++j) s(i, j) = g1(i, j) + g2(i, j);

        Vec y_star = pinv_solve_spsd(s, p.b * -1.0);
        Vec x1_star = p.a1.apply_adjoint(y_star) * -1.0;
        Vec x2_star = p.a2.apply_adjoint(y_star) * -1.0;

        SymEigen eig = sym_eigen(s);
        if (eig.values[0] > 1e-10 * eig.values[p.p() - 1]) {
            throw SolverError("rank-deficient reference: expected a nontrivial dual null space");
        }
        Vec w(p.p());
        for (std::size_t i = 0; i < p.p(); ++i) w[i] = eig.vectors(i, 0);
        return {{x1_star, x2_star, y_star}, {x1_star, x2_star, y_star + w}};
    }
    throw InputError("admm_references: no reference recipe for problem '" + p.name + "'");
}

}  // namespace blockopt
