// Two-block ADMM on the augmented Lagrangian, with error-sequence certificates
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockopt/atom.hpp"
#include "blockopt/linop.hpp"
#include "blockopt/report.hpp"
#include "blockopt/smooth.hpp"
#include "blockopt/subdiff.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

struct AdmmKktRef {
    Vec x1, x2, y;
};

/// min f1(x1) + f2(x2)  s.t.  A1 x1 + A2 x2 = b, where each f_i is a convex
/// atom plus an optional quadratic smooth addend 0.5*||G_i v - h_i||^2.
struct AdmmProblem {
    Atom f1;
    Atom f2;
    std::optional<QuadForm> smooth1, smooth2;
    LinOp a1, a2;
    Vec b;
    std::optional<std::pair<Vec, Vec>> feasible_point;
    std::optional<AdmmKktRef> kkt_reference;  // user-supplied; validated before use
    std::string name;

    std::size_t n() const { return a1.cols(); }
    std::size_t m() const { return a2.cols(); }
    std::size_t p() const { return b.size(); }

    StructuredFn block1_fn() const;  // f1 + smooth1 as a structured sum
    StructuredFn block2_fn() const;

    void validate() const;
};

enum class SubproblemRoute { linear, prox_closed_form, inner };
const char* to_string(SubproblemRoute r);

/// Structural facts decided at setup: the solve route per block and the
/// full-rank status that gates the convergence certificate. Dual uniqueness
/// requires [A1 A2] to have full row rank; the Phi-descent certificate does
/// not need it, the convergence one is downgraded without it.
struct AdmmStructure {
    SubproblemRoute route1, route2;
    double sigma_min_a1 = 0.0, sigma_min_a2 = 0.0;
    double sigma_min_rows = 0.0;
    bool columns_full_rank = false;
    bool dual_unique = false;
    bool full_rank = false;
    double alpha1 = 0.0, alpha2 = 0.0;  // A_i^T A_i = alpha_i I on prox routes
};

AdmmStructure analyze_structure(const AdmmProblem& p);

struct AdmmConfig {
    double rho = 1.0;
    double tau = 1.0;  // dual step; must lie in (0, (1+sqrt(5))/2)
    std::size_t max_iters = 1000;
    double primal_tol = 1e-12;
    double dual_tol = 1e-12;
    double inner_tol = 1e-9;
    std::size_t max_inner = 200000;
    std::uint64_t seed = 1;
    std::optional<Vec> x1_0, x2_0, y0;

    void validate() const;
};

struct AdmmTrace {
    // Row k: iterates after the k-th sweep; row 0 is the initial point.
    std::vector<Vec> x1, x2, y, r;  // r_k = A1 x1_k + A2 x2_k - b
    std::vector<double> lagrangian, primal_norm, dual_norm;
    std::vector<std::size_t> inner1, inner2;

    double rho = 0.0, tau = 0.0, inner_tol = 0.0;
    SubproblemRoute route1 = SubproblemRoute::linear, route2 = SubproblemRoute::linear;
    bool converged = false;
    bool full_rank = true;
    std::string problem_name;
    std::uint64_t seed = 0;

    std::size_t iterations() const { return x1.empty() ? 0 : x1.size() - 1; }
};

/// argmin over x1 of L_rho(x1, x2, y). Route: direct SPD solve for quadratic
/// atoms, one prox call when A1^T A1 = alpha*I with no smooth addend, and a
/// proximal-gradient inner loop otherwise (error, never a silent inexact
/// step, when max_inner is exhausted).
Vec solve_x1_subproblem(const AdmmProblem& p, const Vec& x2, const Vec& y, double rho,
                        const AdmmConfig& cfg);
Vec solve_x2_subproblem(const AdmmProblem& p, const Vec& x1, const Vec& y, double rho,
                        const AdmmConfig& cfg);

AdmmTrace run_admm(const AdmmProblem& p, const AdmmConfig& cfg);

struct KktResiduals {
    double primal = 0.0;
    double dual1 = 0.0, dual2 = 0.0;
    bool dual_finite = true;
    bool pass = false;
};

/// ||A1x1 + A2x2 - b|| <= tol, dist(-A1^T y, ∂f1(x1)) <= tol and
/// dist(-A2^T y, ∂f2(x2)) <= tol; the three residuals come back separately.
KktResiduals kkt_check(const AdmmProblem& p, const Vec& x1, const Vec& x2, const Vec& y,
                       double tol);

/// Error vectors against a reference KKT pair and the scalar sequences
///   Psi_k = (1/(tau*rho))||ey_k||^2 + rho*||A2 e2_k||^2
///   Phi_k = Psi_k + max(1-tau, 1-1/tau) * rho * ||A1 e1_k + A2 e2_k||^2
/// Everything is computed literally from the formulas; u/v exist for k >= 1.
struct AuxSequences {
    std::vector<Vec> e1, e2, ey;  // index 0..N
    std::vector<Vec> a2e2;        // A2 e2_k
    std::vector<Vec> combo;       // A1 e1_k + A2 e2_k
    std::vector<Vec> u, v;        // u[k-1] holds u^k for k = 1..N
    std::vector<double> psi, phi;  // index 0..N
    Vec ref_x1, ref_x2, ref_y;
};

/// Reference must pass kkt_check at 1e-8, otherwise an error.
AuxSequences compute_aux(const AdmmProblem& p, const AdmmTrace& trace, const Vec& ref_x1,
                         const Vec& ref_x2, const Vec& ref_y);

/// u^k in ∂f1(x1^k) and v^k in ∂f2(x2^k) for every k >= 1; per-block
/// tolerances because the two blocks may take different solve routes.
CheckReport check_uv_membership(const AdmmProblem& p, const AuxSequences& aux,
                                const AdmmTrace& trace, double tol1, double tol2);

/// Per-block membership tolerance policy: 1e-10 on closed-form routes,
/// 100 * inner_tol on the inner route.
double uv_membership_tol(SubproblemRoute route, double inner_tol);

/// Phi_k - Phi_{k+1} >= min(tau, 1+tau-tau^2)*rho*||A2(x2_k - x2_{k+1})||^2
///                    + min(1, 1+1/tau-tau)*rho*||A1 e1_{k+1} + A2 e2_{k+1}||^2
/// for all k >= 1, slack 1e-8*(1+Phi_1); also asserts Phi monotone there.
CheckReport check_phi_descent(const AuxSequences& aux, double rho, double tau);

/// Cauchy tail + KKT residuals at the final iterate. Inconclusive when the
/// run hit max_iters before its tolerances or the full-rank gate failed.
CheckReport check_convergence_to_kkt(const AdmmProblem& p, const AdmmTrace& trace, double tol);

/// y_{k+1} - y_k = tau*rho*r_{k+1} to 1e-14 relative, every k. The dual
/// update is affine; anything above roundoff means a corrupted trace.
CheckReport check_dual_update_exactness(const AdmmTrace& trace);

}  // namespace blockopt
