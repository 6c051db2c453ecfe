// Built-in benchmark instances, random instance generation, reference solves
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "blockopt/admm.hpp"
#include "blockopt/bcd.hpp"
#include "blockopt/rng.hpp"

namespace blockopt {

// ---------------------------------------------------------------------------
// Random instance generation (deterministic per seed; entries in [-1, 1]).

struct LassoInstance {
    LinOp a;
    Vec c;
    double lambda;
};

struct FeasibleAdmmInstance {
    LinOp a1, a2;
    Vec b;
    Vec x1_feasible, x2_feasible;  // b = A1 x1 + A2 x2 by construction
};

struct QuadCouplingInstance {
    LinOp a, b;
    Vec c;
};

using RandomInstance = std::variant<LassoInstance, FeasibleAdmmInstance, QuadCouplingInstance>;

/// kind in {"lasso", "feasible-admm", "quadratic-coupling"}; anything else is
/// an error naming the supported tags.
RandomInstance random_instance(const std::string& kind, std::size_t n, std::size_t m,
                               std::size_t p, Rng& rng);

// ---------------------------------------------------------------------------
// Built-in problem library.

struct BuiltinBcd {
    BcdProblem problem;
    BcdConfig config;
};

struct BuiltinAdmm {
    AdmmProblem problem;
    AdmmConfig config;
};

/// quadratic: f = g = zero, H(x,y) = 0.5*||z||^2, n = m = 20, exact l = 1.
BuiltinBcd make_quadratic(std::uint64_t seed = 42);

/// lasso-bcd: l1 atoms on both blocks, H = 0.5*||A x + B y - c||^2 with
/// [A B] 50x40 (full column rank), n = m = 20.
BuiltinBcd make_lasso_bcd(std::uint64_t seed = 42);

/// consensus-lasso: min 0.5||A x1 - c||^2 + lambda||x2||_1  s.t. x1 - x2 = 0,
/// A 20x50. Both subproblems take closed-form routes.
BuiltinAdmm make_consensus_lasso(std::uint64_t seed = 42);

/// basis-pursuit: min 0.5||x1||^2 + lambda||x2||_1  s.t. A x2 - x1 = c,
/// A 20x15 (full column rank). Block 2 exercises the inner solver route.
BuiltinAdmm make_basis_pursuit(std::uint64_t seed = 42);

/// rank-deficient: strictly convex quadratic blocks with [A1 A2] row-rank
/// deficient, so the dual solution is a line; used by the Phi-descent
/// reference-independence checks. Convergence certificates downgrade.
BuiltinAdmm make_rank_deficient(std::uint64_t seed = 42);

std::vector<std::string> builtin_names();
bool is_builtin(const std::string& name);

// ---------------------------------------------------------------------------
// Reference solutions (independent solver path + multiplier recovery).

/// Proximal-gradient solve of min 0.5||A x - c||^2 + lambda||x||_1 down to
/// dist(0, ∂F) <= tol.
Vec lasso_reference(const LinOp& a, const Vec& c, double lambda, double tol = 1e-10,
                    std::size_t max_iters = 2000000);

/// Joint (non-alternating) proximal-gradient solve of a BcdProblem down to
/// blockwise dist(0, ∂psi) <= tol; the independent route for BCD certificates.
BlockPair bcd_reference(const BcdProblem& p, double tol = 1e-10,
                        std::size_t max_iters = 2000000);

using KktPair = AdmmKktRef;

/// Reference KKT pair(s): a user-supplied reference wins when present; the
/// built-in instances have per-name recipes; the rank-deficient instance
/// returns two distinct valid pairs.
std::vector<KktPair> admm_references(const AdmmProblem& p);

}  // namespace blockopt
