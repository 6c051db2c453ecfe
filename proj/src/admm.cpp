// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/admm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockopt/dense.hpp"
#include "blockopt/errors.hpp"
#include "blockopt/prox.hpp"

namespace blockopt {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

constexpr double kGoldenRatio = 1.6180339887498949;

SmoothPart quadform_smooth(const QuadForm& q) {
    SmoothPart sp;
    QuadForm qc = q;
    sp.value = [qc](const Vec& v) { return qc.value(v); };
    sp.grad = [qc](const Vec& v) { return qc.grad(v); };
    return sp;
}

}  // namespace

StructuredFn AdmmProblem::block1_fn() const {
    StructuredFn f{f1, std::nullopt};
    if (smooth1) f.smooth = quadform_smooth(*smooth1);
    return f;
}

StructuredFn AdmmProblem::block2_fn() const {
    StructuredFn f{f2, std::nullopt};
    if (smooth2) f.smooth = quadform_smooth(*smooth2);
    return f;
}

void AdmmProblem::validate() const {
    if (a1.rows() != b.size() || a2.rows() != b.size()) {
        throw InputError("AdmmProblem: A1/A2 row count must match dim of b");
    }
    if (smooth1 && smooth1->g.cols() != a1.cols()) {
        throw InputError("AdmmProblem: smooth1 acts on a different dimension than A1");
    }
    if (smooth2 && smooth2->g.cols() != a2.cols()) {
        throw InputError("AdmmProblem: smooth2 acts on a different dimension than A2");
    }
}

const char* to_string(SubproblemRoute r) {
    switch (r) {
        case SubproblemRoute::linear: return "linear";
        case SubproblemRoute::prox_closed_form: return "prox";
        case SubproblemRoute::inner: return "inner";
    }
    return "?";
}

void AdmmConfig::validate() const {
    if (!(rho > 0.0)) throw InputError("rho: must be > 0 (got " + fmt(rho) + ")");
    if (!(tau > 0.0 && tau < kGoldenRatio)) {
        throw InputError("tau: must lie in (0, 1.6180339887498949) = (0, (1+sqrt(5))/2), got " +
                         fmt(tau));
    }
    if (max_iters < 1) throw InputError("max_iters: must be >= 1");
    if (!(primal_tol >= 0.0) || !(dual_tol >= 0.0)) {
        throw InputError("primal_tol/dual_tol: must be >= 0");
    }
    if (!(inner_tol > 0.0)) throw InputError("inner_tol: must be > 0");
}

namespace {

struct GramInfo {
    double alpha = 0.0;   // A^T A = alpha I, when scaled_identity
    bool scaled_identity = false;
};

GramInfo gram_info(const LinOp& gram) {
    GramInfo info;
    const std::size_t n = gram.rows();
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += gram(i, i);
    double alpha = tr / static_cast<double>(n);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double target = i == j ? alpha : 0.0;
            dev = std::max(dev, std::fabs(gram(i, j) - target));
        }
    }
    info.alpha = alpha;
    info.scaled_identity = dev <= 1e-12 * std::max(1.0, alpha);
    return info;
}

SubproblemRoute pick_route(const Atom& atom, const std::optional<QuadForm>& q,
                           const GramInfo& gi) {
    if (atom.is_quadratic()) return SubproblemRoute::linear;
    if (!q && gi.scaled_identity && gi.alpha > 0.0) return SubproblemRoute::prox_closed_form;
    return SubproblemRoute::inner;
}

// One block's subproblem: atom(v) + quad(v) + <y, A v> + (rho/2)||A v + w||^2
// where w collects the other block and -b.
struct BlockSolver {
    const Atom* atom = nullptr;
    const QuadForm* quad = nullptr;
    const LinOp* a = nullptr;
    double rho = 0.0;
    SubproblemRoute route = SubproblemRoute::linear;
    std::optional<Cholesky> chol;  // linear route
    double alpha = 0.0;            // prox route
    double lip = 0.0;              // inner route step = 1/lip
    double inner_tol = 0.0;
    std::size_t max_inner = 0;
    int block_index = 1;

    struct Out {
        Vec v;
        std::size_t inner_iters = 0;
    };

    Vec smooth_grad_total(const Vec& v, const Vec& aty_rho_w) const {
        // gradient of quad(v) + <A^T y, v> + (rho/2)||A v + w||^2
        Vec g = a->apply_adjoint(a->apply(v)) * rho;
        g += aty_rho_w;
        if (quad) g += quad->grad(v);
        return g;
    }

    Out solve(const Vec& w, const Vec& y, const Vec& warm) const {
        // aty_rho_w = A^T y + rho A^T w, the v-independent gradient part
        Vec aty_rho_w = a->apply_adjoint(y + w * rho);

        switch (route) {
            case SubproblemRoute::linear: {
                Vec rhs = aty_rho_w * -1.0;
                if (quad) rhs += quad->g.apply_adjoint(quad->h);
                return {chol->solve(rhs), 0};
            }
            case SubproblemRoute::prox_closed_form: {
                Vec target = aty_rho_w * (-1.0 / (rho * alpha));
                return {prox(*atom, 1.0 / (rho * alpha), target).point, 0};
            }
            case SubproblemRoute::inner: {
                Vec v = warm;
                double step = 1.0 / lip;
                for (std::size_t it = 0; it <= max_inner; ++it) {
                    Vec g = smooth_grad_total(v, aty_rho_w);
                    SubdiffInterval iv = atom_subdiff_interval(*atom, v);
                    double res;
                    if (!iv.feasible) {
                        res = std::numeric_limits<double>::infinity();
                    } else {
                        double sq = 0.0;
                        for (std::size_t i = 0; i < v.size(); ++i) {
                            double t = -g[i];
                            double d = t < iv.lo[i] ? iv.lo[i] - t
                                                    : (t > iv.hi[i] ? t - iv.hi[i] : 0.0);
                            sq += d * d;
                        }
                        res = std::sqrt(sq);
                    }
                    if (res <= inner_tol) return {std::move(v), it};
                    if (it == max_inner) {
                        throw SolverError("x" + std::to_string(block_index) +
                                          " subproblem: inner solver residual " + fmt(res) +
                                          " > tol " + fmt(inner_tol) + " after " +
                                          std::to_string(max_inner) + " iterations");
                    }
                    v = prox(*atom, step, v - g * step).point;
                }
                return {std::move(v), 0};  // unreachable
            }
        }
        throw SolverError("unknown subproblem route");
    }
};

BlockSolver make_block_solver(const Atom& atom, const std::optional<QuadForm>& quad,
                              const LinOp& a, double rho, const AdmmConfig& cfg,
                              int block_index) {
    BlockSolver s;
    s.atom = &atom;
    s.quad = quad ? &*quad : nullptr;
    s.a = &a;
    s.rho = rho;
    s.inner_tol = cfg.inner_tol;
    s.max_inner = cfg.max_inner;
    s.block_index = block_index;

    LinOp gram = a.gram();
    GramInfo gi = gram_info(gram);
    s.route = pick_route(atom, quad, gi);

    const std::string label = "x" + std::to_string(block_index) + " subproblem";
    switch (s.route) {
        case SubproblemRoute::linear: {
            // Hessian = G^T G + 2*lambda*I + rho*A^T A must be positive definite
            LinOp hess = gram;
            for (std::size_t i = 0; i < hess.rows(); ++i)
                for (std::size_t j = 0; j < hess.cols(); ++j) hess(i, j) *= rho;
            if (quad) {
                LinOp gg = quad->g.gram();
                for (std::size_t i = 0; i < hess.rows(); ++i)
                    for (std::size_t j = 0; j < hess.cols(); ++j) hess(i, j) += gg(i, j);
            }
            if (atom.tag() == AtomTag::sq_l2) {
                for (std::size_t i = 0; i < hess.rows(); ++i) hess(i, i) += 2.0 * atom.lambda();
            }
            s.chol = Cholesky::factorize(hess);
            if (!s.chol) {
                throw InputError(label +
                                 " is not strictly convex: needs A^T A positive definite, a "
                                 "positive-definite quadratic addend, or an sq_l2 atom");
            }
            break;
        }
        case SubproblemRoute::prox_closed_form:
            s.alpha = gi.alpha;
            break;
        case SubproblemRoute::inner: {
            double sig_max = largest_singular_value(a);
            double sig_min = smallest_singular_value(a);
            double quad_min = 0.0, quad_max = 0.0;
            if (quad) {
                SymEigen e = sym_eigen(quad->g.gram());
                quad_min = std::max(0.0, e.values[0]);
                quad_max = std::max(0.0, e.values[e.values.size() - 1]);
            }
            s.lip = quad_max + rho * sig_max * sig_max;
            double strong = rho * sig_min * sig_min + quad_min;
            if (!(strong > 1e-12 * (1.0 + s.lip))) {
                throw InputError(label +
                                 " is not strictly convex (sigma_min(A)=" + fmt(sig_min) +
                                 "): unique-solution assumption fails, refusing the instance");
            }
            if (!(s.lip > 0.0)) throw InputError(label + ": degenerate zero curvature");
            break;
        }
    }
    return s;
}

Vec default_start(const Atom& atom, std::size_t dim) {
    // Zeros, projected to indicator feasibility.
    Vec z(dim);
    if (atom.is_indicator()) return prox(atom, 1.0, z).point;
    return z;
}

double lagrangian_value(const AdmmProblem& p, const Vec& x1, const Vec& x2, const Vec& y,
                        const Vec& r, double rho) {
    ExtReal v1 = p.f1.value(x1);
    ExtReal v2 = p.f2.value(x2);
    double val = (v1.finite ? v1.v : 0.0) + (v2.finite ? v2.v : 0.0);
    if (p.smooth1) val += p.smooth1->value(x1);
    if (p.smooth2) val += p.smooth2->value(x2);
    return val + y.dot(r) + 0.5 * rho * r.sqnorm();
}

}  // namespace

AdmmStructure analyze_structure(const AdmmProblem& p) {
    p.validate();
    AdmmStructure st;
    st.sigma_min_a1 = smallest_singular_value(p.a1);
    st.sigma_min_a2 = smallest_singular_value(p.a2);
    double smax1 = largest_singular_value(p.a1);
    double smax2 = largest_singular_value(p.a2);
    // Smallest singular values come from Gram eigenvalues, so an exactly
    // rank-deficient operator reads back as sqrt(eps)*sigma_max, not zero;
    // the gate must sit above that floor.
    auto rank_ok = [](double smin, double smax) { return smin > 1e-7 * std::max(1.0, smax); };
    st.columns_full_rank =
        rank_ok(st.sigma_min_a1, smax1) && rank_ok(st.sigma_min_a2, smax2);

    LinOp m = hcat(p.a1, p.a2);
    // Row rank through A A^T (the gram of the transpose).
    double row_min = smallest_singular_value(m.transpose());
    double row_max = largest_singular_value(m.transpose());
    st.sigma_min_rows = row_min;
    st.dual_unique = rank_ok(row_min, row_max);
    st.full_rank = st.columns_full_rank && st.dual_unique;

    GramInfo g1 = gram_info(p.a1.gram());
    GramInfo g2 = gram_info(p.a2.gram());
    st.route1 = pick_route(p.f1, p.smooth1, g1);
    st.route2 = pick_route(p.f2, p.smooth2, g2);
    st.alpha1 = g1.alpha;
    st.alpha2 = g2.alpha;
    return st;
}

Vec solve_x1_subproblem(const AdmmProblem& p, const Vec& x2, const Vec& y, double rho,
                        const AdmmConfig& cfg) {
    BlockSolver s = make_block_solver(p.f1, p.smooth1, p.a1, rho, cfg, 1);
    Vec w = p.a2.apply(x2) - p.b;
    return s.solve(w, y, default_start(p.f1, p.n())).v;
}

Vec solve_x2_subproblem(const AdmmProblem& p, const Vec& x1, const Vec& y, double rho,
                        const AdmmConfig& cfg) {
    BlockSolver s = make_block_solver(p.f2, p.smooth2, p.a2, rho, cfg, 2);
    Vec w = p.a1.apply(x1) - p.b;
    return s.solve(w, y, default_start(p.f2, p.m())).v;
}

AdmmTrace run_admm(const AdmmProblem& p, const AdmmConfig& cfg) {
    cfg.validate();
    p.validate();
    AdmmStructure st = analyze_structure(p);

    BlockSolver s1 = make_block_solver(p.f1, p.smooth1, p.a1, cfg.rho, cfg, 1);
    BlockSolver s2 = make_block_solver(p.f2, p.smooth2, p.a2, cfg.rho, cfg, 2);

    Vec x1 = cfg.x1_0 ? *cfg.x1_0 : default_start(p.f1, p.n());
    Vec x2 = cfg.x2_0 ? *cfg.x2_0 : default_start(p.f2, p.m());
    Vec y = cfg.y0 ? *cfg.y0 : Vec(p.p());
    if (x1.size() != p.n() || x2.size() != p.m() || y.size() != p.p()) {
        throw InputError("run_admm: initial point dimension mismatch");
    }

    AdmmTrace trace;
    trace.rho = cfg.rho;
    trace.tau = cfg.tau;
    trace.inner_tol = cfg.inner_tol;
    trace.route1 = s1.route;
    trace.route2 = s2.route;
    trace.full_rank = st.full_rank;
    trace.problem_name = p.name;
    trace.seed = cfg.seed;

    auto record = [&](const Vec& r, double dual, std::size_t in1, std::size_t in2) {
        trace.x1.push_back(x1);
        trace.x2.push_back(x2);
        trace.y.push_back(y);
        trace.r.push_back(r);
        trace.lagrangian.push_back(lagrangian_value(p, x1, x2, y, r, cfg.rho));
        trace.primal_norm.push_back(r.norm());
        trace.dual_norm.push_back(dual);
        trace.inner1.push_back(in1);
        trace.inner2.push_back(in2);
    };

    Vec r = p.a1.apply(x1) + p.a2.apply(x2) - p.b;
    record(r, 0.0, 0, 0);

    const double tau_rho = cfg.tau * cfg.rho;
    for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
        std::size_t in1 = 0, in2 = 0;
        try {
            Vec w1 = p.a2.apply(x2) - p.b;
            auto o1 = s1.solve(w1, y, x1);
            x1 = std::move(o1.v);
            in1 = o1.inner_iters;

            Vec w2 = p.a1.apply(x1) - p.b;
            auto o2 = s2.solve(w2, y, x2);
            Vec x2_prev = x2;
            x2 = std::move(o2.v);
            in2 = o2.inner_iters;

            r = p.a1.apply(x1) + p.a2.apply(x2) - p.b;
            y += r * tau_rho;  // the dual update is exactly y + tau*rho*r

            double dual = cfg.rho * (p.a2.apply(x2) - p.a2.apply(x2_prev)).norm();
            record(r, dual, in1, in2);

            if (r.norm() <= cfg.primal_tol && dual <= cfg.dual_tol) {
                trace.converged = true;
                break;
            }
        } catch (const SolverError& e) {
            throw SolverError("run_admm: iteration " + std::to_string(k) + ": " + e.what());
        }
    }
    return trace;
}

KktResiduals kkt_check(const AdmmProblem& p, const Vec& x1, const Vec& x2, const Vec& y,
                       double tol) {
    KktResiduals out;
    out.primal = (p.a1.apply(x1) + p.a2.apply(x2) - p.b).norm();
    ExtReal d1 = subdiff_distance_to(p.block1_fn(), x1, p.a1.apply_adjoint(y) * -1.0);
    ExtReal d2 = subdiff_distance_to(p.block2_fn(), x2, p.a2.apply_adjoint(y) * -1.0);
    out.dual_finite = d1.finite && d2.finite;
    out.dual1 = d1.finite ? d1.v : std::numeric_limits<double>::infinity();
    out.dual2 = d2.finite ? d2.v : std::numeric_limits<double>::infinity();
    out.pass = out.dual_finite && out.primal <= tol && out.dual1 <= tol && out.dual2 <= tol;
    return out;
}

AuxSequences compute_aux(const AdmmProblem& p, const AdmmTrace& trace, const Vec& ref_x1,
                         const Vec& ref_x2, const Vec& ref_y) {
    KktResiduals ref = kkt_check(p, ref_x1, ref_x2, ref_y, 1e-8);
    if (!ref.pass) {
        throw InputError("compute_aux: reference is not a KKT pair (primal " + fmt(ref.primal) +
                         ", dual1 " + fmt(ref.dual1) + ", dual2 " + fmt(ref.dual2) +
                         " vs tol 1e-8)");
    }

    const double rho = trace.rho, tau = trace.tau;
    const double phi_coeff = std::max(1.0 - tau, 1.0 - 1.0 / tau);
    const std::size_t n = trace.iterations();

    AuxSequences aux;
    aux.ref_x1 = ref_x1;
    aux.ref_x2 = ref_x2;
    aux.ref_y = ref_y;
    for (std::size_t k = 0; k <= n; ++k) {
        Vec e1 = trace.x1[k] - ref_x1;
        Vec e2 = trace.x2[k] - ref_x2;
        Vec ey = trace.y[k] - ref_y;
        Vec a1e1 = p.a1.apply(e1);
        Vec a2e2 = p.a2.apply(e2);
        Vec combo = a1e1 + a2e2;

        double psi = ey.sqnorm() / (tau * rho) + rho * a2e2.sqnorm();
        aux.psi.push_back(psi);
        aux.phi.push_back(psi + phi_coeff * rho * combo.sqnorm());

        if (k >= 1) {
            Vec base = trace.y[k] + combo * ((1.0 - tau) * rho);
            Vec u_arg = base + (p.a2.apply(trace.x2[k - 1]) - p.a2.apply(trace.x2[k])) * rho;
            aux.u.push_back(p.a1.apply_adjoint(u_arg) * -1.0);
            aux.v.push_back(p.a2.apply_adjoint(base) * -1.0);
        }
        aux.e1.push_back(std::move(e1));
        aux.e2.push_back(std::move(e2));
        aux.ey.push_back(std::move(ey));
        aux.a2e2.push_back(std::move(a2e2));
        aux.combo.push_back(std::move(combo));
    }
    return aux;
}

double uv_membership_tol(SubproblemRoute route, double inner_tol) {
    return route == SubproblemRoute::inner ? 100.0 * inner_tol : 1e-10;
}

CheckReport check_uv_membership(const AdmmProblem& p, const AuxSequences& aux,
                                const AdmmTrace& trace, double tol1, double tol2) {
    CheckReport rep;
    rep.name = "uv_membership";
    rep.certifies = "uv-subgradient-membership";
    rep.tolerance = std::max(tol1, tol2);
    rep.metrics["tol_block1"] = tol1;
    rep.metrics["tol_block2"] = tol2;

    const std::size_t n = trace.iterations();
    if (n < 1) {
        rep.status = CheckStatus::vacuous;
        return rep;
    }
    StructuredFn f1 = p.block1_fn();
    StructuredFn f2 = p.block2_fn();
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        ExtReal d1 = subdiff_distance_to(f1, trace.x1[k], aux.u[k - 1]);
        ExtReal d2 = subdiff_distance_to(f2, trace.x2[k], aux.v[k - 1]);
        bool ok1 = d1.finite && d1.v <= tol1;
        bool ok2 = d2.finite && d2.v <= tol2;
        if (d1.finite && d2.finite) worst = std::max({worst, d1.v, d2.v});
        if (!ok1 || !ok2) {
            rep.violations.push_back(k);
            if (rep.violations.size() == 1) {
                rep.details = "k=" + std::to_string(k) + ": dist(u, ∂f1)=" +
                              (d1.finite ? fmt(d1.v) : "inf") + " (tol " + fmt(tol1) +
                              "), dist(v, ∂f2)=" + (d2.finite ? fmt(d2.v) : "inf") + " (tol " +
                              fmt(tol2) + ")";
            }
        }
    }
    rep.metrics["max_distance"] = worst;
    rep.status = rep.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

CheckReport check_phi_descent(const AuxSequences& aux, double rho, double tau) {
    CheckReport rep;
    rep.name = "phi_descent";
    rep.certifies = "phi-descent";

    const double c1 = std::min(tau, 1.0 + tau - tau * tau);
    const double c2 = std::min(1.0, 1.0 + 1.0 / tau - tau);
    rep.metrics["coeff_steps"] = c1;
    rep.metrics["coeff_residual"] = c2;
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
        rep.status = CheckStatus::fail;
        rep.details = "descent coefficients not positive: tau outside (0, (1+sqrt(5))/2)";
        return rep;
    }

    const std::size_t n = aux.phi.empty() ? 0 : aux.phi.size() - 1;
    if (n < 2) {
        rep.status = CheckStatus::vacuous;
        rep.details = "need at least two iterations beyond the initial point";
        return rep;
    }
    const double slack = 1e-8 * (1.0 + aux.phi[1]);
    rep.tolerance = slack;

    double min_margin = std::numeric_limits<double>::infinity();
    std::size_t monotone_violations = 0;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        double lhs = aux.phi[k] - aux.phi[k + 1];
        double step_sq = (aux.a2e2[k] - aux.a2e2[k + 1]).sqnorm();  // ||A2(x2_k - x2_{k+1})||^2
        double rhs = c1 * rho * step_sq + c2 * rho * aux.combo[k + 1].sqnorm();
        double margin = lhs - rhs;
        min_margin = std::min(min_margin, margin);
        bool descent_ok = margin >= -slack;
        bool monotone_ok = aux.phi[k + 1] <= aux.phi[k] + slack;
        if (!monotone_ok) ++monotone_violations;
        if (!descent_ok || !monotone_ok) {
            rep.violations.push_back(k);
            if (rep.violations.size() == 1) {
                rep.details = "k=" + std::to_string(k) + ": Phi_k - Phi_{k+1} = " + fmt(lhs) +
                              " < required " + fmt(rhs) + " (slack " + fmt(slack) + ")";
            }
        }
    }
    rep.min_margin = min_margin;
    rep.metrics["monotone_violations"] = static_cast<double>(monotone_violations);
    rep.status = rep.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

CheckReport check_dual_update_exactness(const AdmmTrace& trace) {
    CheckReport rep;
    rep.name = "dual_update_exactness";
    rep.certifies = "dual-update-affine";
    const std::size_t n = trace.iterations();
    if (n < 1) {
        rep.status = CheckStatus::vacuous;
        return rep;
    }
    const double tau_rho = trace.tau * trace.rho;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        Vec expect = trace.r[k + 1] * tau_rho;
        Vec got = trace.y[k + 1] - trace.y[k];
        // relative to the magnitudes the update actually touches
        double scale = std::max(expect.norm() + trace.y[k + 1].norm(), 1e-300);
        double rel = (got - expect).norm() / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-14) rep.violations.push_back(k + 1);
    }
    rep.tolerance = 1e-14;
    rep.metrics["max_relative_error"] = worst;
    rep.status = rep.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
    if (!rep.ok()) {
        rep.details = "dual step deviates from tau*rho*r at " +
                      std::to_string(rep.violations.size()) + " iterations (max rel err " +
                      fmt(worst) + ")";
    }
    return rep;
}

CheckReport check_convergence_to_kkt(const AdmmProblem& p, const AdmmTrace& trace, double tol) {
    CheckReport rep;
    rep.name = "kkt_convergence";
    rep.certifies = "kkt-convergence";
    rep.tolerance = tol;

    if (!trace.full_rank) {
        rep.status = CheckStatus::inconclusive;
        rep.details = "full-rank hypothesis fails (rank-deficient constraint operators); "
                      "convergence certificate downgraded";
        return rep;
    }
    const std::size_t n = trace.iterations();
    if (!trace.converged) {
        rep.status = CheckStatus::inconclusive;
        rep.details = "max_iters reached before the residual tolerances; no verdict";
        return rep;
    }

    std::size_t tail_start = n - std::max<std::size_t>(2, n / 10);
    if (tail_start > n) tail_start = 0;
    double scale = 1.0 + std::sqrt(trace.x1[0].sqnorm() + trace.x2[0].sqnorm() +
                                   trace.y[0].sqnorm());
    double max_pair = 0.0;
    for (std::size_t i = tail_start; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            double d = std::sqrt((trace.x1[i] - trace.x1[j]).sqnorm() +
                                 (trace.x2[i] - trace.x2[j]).sqnorm() +
                                 (trace.y[i] - trace.y[j]).sqnorm());
            max_pair = std::max(max_pair, d);
        }
    }
    bool cauchy_ok = max_pair <= 1e-6 * scale;
    rep.metrics["tail_diameter"] = max_pair;

    KktResiduals kkt = kkt_check(p, trace.x1[n], trace.x2[n], trace.y[n], tol);
    rep.metrics["kkt_primal"] = kkt.primal;
    rep.metrics["kkt_dual1"] = kkt.dual1;
    rep.metrics["kkt_dual2"] = kkt.dual2;

    rep.status = (cauchy_ok && kkt.pass) ? CheckStatus::pass : CheckStatus::fail;
    if (!rep.ok()) {
        rep.details = std::string(cauchy_ok ? "" : "iterate tail not Cauchy; ") +
                      (kkt.pass ? "" : "KKT residuals above tol at the final iterate: primal " +
                                           fmt(kkt.primal) + ", dual1 " + fmt(kkt.dual1) +
                                           ", dual2 " + fmt(kkt.dual2));
    }
    return rep;
}

}  // namespace blockopt
