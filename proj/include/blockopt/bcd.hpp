// Two-block proximal-linearized coordinate descent and its certificates
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockopt/atom.hpp"
#include "blockopt/kl.hpp"
#include "blockopt/report.hpp"
#include "blockopt/smooth.hpp"
#include "blockopt/subdiff.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

/// min over (x, y) of  psi(x, y) = f(x) + g(y) + H(x, y)
struct BcdProblem {
    Atom f;
    Atom g;
    SmoothCoupling h;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string name;

    ExtReal psi(const BlockPair& z) const;

    /// Per-block structured views: f + H(., y) on the x block, g + H(x, .) on
    /// the y block. These carry the sum-rule representation used by every
    /// subdifferential query.
    StructuredFn x_block_fn(const Vec& y) const;
    StructuredFn y_block_fn(const Vec& x) const;

    /// dist(0, ∂psi(z)) in the product l2 norm, sqrt(dx^2 + dy^2).
    ExtReal subdiff_dist(const BlockPair& z) const;
};

struct BcdConfig {
    double gamma = 2.0;     // step sizes are 1/(gamma*l); gamma > 1 strictly
    std::size_t max_iters = 1000;
    double stop_tol = 0.0;  // on M*||z_k - z_{k-1}||, M = (2*gamma+2)*l; 0 disables
    std::uint64_t seed = 1;
    std::optional<BlockPair> z0;

    void validate() const;
};

struct BcdTrace {
    // Row k describes iterate z_k; row 0 is the initial point. step_* hold
    // ||z_k - z_{k-1}|| (0 at k = 0).
    std::vector<double> psi;
    std::vector<double> step_norm, step_x, step_y;
    std::vector<double> subdiff_dist;
    std::vector<Vec> xs, ys;

    double gamma = 0.0;
    double l = 0.0;
    std::uint64_t seed = 0;
    std::string problem_name;
    bool stopped_early = false;

    std::size_t iterations() const { return psi.empty() ? 0 : psi.size() - 1; }
    BlockPair z(std::size_t k) const { return {xs.at(k), ys.at(k)}; }
};

/// Alternating prox-linearized updates with fixed steps 1/(gamma*l):
///   x_{k+1} = prox_{c f}(x_k - c grad_x H(x_k, y_k))
///   y_{k+1} = prox_{c g}(y_k - c grad_y H(x_{k+1}, y_k))   (Gauss-Seidel order)
/// Aborts with a diagnostic if ||z_k|| exceeds 1e6 * (1 + ||z_0||).
BcdTrace run_bcd(const BcdProblem& p, const BcdConfig& cfg);

/// Per-iteration descent: ((gamma-1)*l/2)*||z_{k+1}-z_k||^2 <= psi_k - psi_{k+1}
/// with slack 1e-9*(1+|psi_0|).
CheckReport check_sufficient_descent(const BcdTrace& trace, double gamma, double l);

/// Square-summability proxy: the last-half tail of sum ||dz||^2 carries at
/// most 10% of the total, and the last step is no larger than the first.
CheckReport check_step_vanishing(const BcdTrace& trace);

/// Subgradient witness at iterate k (k >= 1):
///   A_x = gamma*l*(x_{k-1}-x_k) + grad_x H(x_k,y_k) - grad_x H(x_{k-1},y_{k-1})
///   A_y = gamma*l*(y_{k-1}-y_k) + grad_y H(x_k,y_k) - grad_y H(x_k,y_{k-1})
/// The x-correction uses y_{k-1}: that is the gradient the x-update actually
/// consumed, and the only choice for which (A_x, A_y) lands in the
/// subdifferential of psi at z_k.
std::pair<Vec, Vec> compute_subgrad_witness(const BcdProblem& p, const BcdTrace& trace,
                                            std::size_t k, double gamma);

/// ||A_x|| + ||A_y|| <= (2*gamma+2)*l*||z_k - z_{k-1}|| for every k >= 1,
/// slack 1e-9*l. Records the largest observed ratio against l*||dz||.
CheckReport check_subdiff_bound(const BcdProblem& p, const BcdTrace& trace, double gamma,
                                double l);

/// Finite length: tail increments of sum ||dz|| decay and the iterate tail is
/// Cauchy at 1e-6*(1+||z_0||) scale.
CheckReport check_finite_length(const BcdTrace& trace);

/// Criticality of the limit: needs a converged trace (else inconclusive);
/// checks dist(0, ∂psi) at the last iterate and that psi is flat over the
/// last 10% of the trace.
CheckReport check_limit_criticality(const BcdProblem& p, const BcdTrace& trace, double tol);

bool critical_point_check(const BcdProblem& p, const BlockPair& z, double tol);

/// (psi_k, dist(0, ∂psi(z_k))) pairs for the KL diagnostics.
std::vector<KlSample> kl_samples(const BcdTrace& trace);

}  // namespace blockopt
