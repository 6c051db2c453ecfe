// Structured subdifferential calculus and sampled verifiers
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blockopt/atom.hpp"
#include "blockopt/rng.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

/// Differentiable addend with an analytic gradient.
struct SmoothPart {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
};

/// atom + smooth sum. By the sum rule for a differentiable addend, every
/// subdifferential query on the sum reduces to the atom's set shifted by the
/// gradient; that identity is the definition used here. For the convex atom
/// library the Frechet, limiting and convex subdifferentials coincide, so a
/// single set serves all three.
struct StructuredFn {
    Atom atom;
    std::optional<SmoothPart> smooth;

    ExtReal value(const Vec& x) const;
    Vec smooth_grad(const Vec& x) const;  // zero vector when no smooth part
};

/// Per-coordinate closed intervals [lo_i, hi_i] describing the
/// subdifferential of a separable atom at a point; bounds may be infinite
/// (indicator normal cones). feasible == false means the point is outside
/// the atom's domain and the set is empty.
struct SubdiffInterval {
    bool feasible = true;
    std::vector<double> lo, hi;
};

SubdiffInterval atom_subdiff_interval(const Atom& a, const Vec& x);

/// dist(u, ∂F(x)) computed coordinatewise by clamping u - grad_smooth(x)
/// into the atom interval. Infinite marker when x is infeasible.
ExtReal subdiff_distance_to(const StructuredFn& f, const Vec& x, const Vec& u);

/// dist(0, ∂F(x)).
ExtReal subdiff_distance(const StructuredFn& f, const Vec& x);

bool membership(const StructuredFn& f, const Vec& x, const Vec& u, double tol);

/// Sampled falsifier for the variational inequality
///   F(y) - F(x) - <u, y-x> >= -eps * ||y-x||
/// at n_dirs random directions x n_radii log-spaced radii in [radius_min, 1].
/// It can refute a subgradient candidate but never prove one; certificates
/// never rely on it alone.
bool frechet_empirical_check(const StructuredFn& f, const Vec& x, const Vec& u, double eps,
                             std::size_t n_dirs, std::size_t n_radii, double radius_min,
                             Rng& rng);

/// Spot check of graph closedness on one explicit sequence: requires every
/// (xs_k, us_k) to be a member pair at tol (precondition), then checks the
/// limit pair at 10*tol and that the function-value gap |F(xs_k) - F(x_lim)|
/// dies out along the tail. One sequence only, not the full closure.
bool closed_graph_spotcheck(const StructuredFn& f, const std::vector<Vec>& xs,
                            const std::vector<Vec>& us, const Vec& x_lim, const Vec& u_lim,
                            double tol);

/// Central-difference gradient check for smooth F (zero atom required).
/// Returns the max-coordinate error, relative to the gradient magnitude when
/// the gradient is nonzero and absolute otherwise.
double grad_fd_check(const StructuredFn& f, const Vec& x, double h);

/// Blockwise criticality of f(x) + g(y) + H(x, y):
///   dist(0, ∂[f + H(.,y)](x)) + dist(0, ∂[g + H(x,.)](y)) <= tol.
bool critical_point_check(const StructuredFn& fx, const StructuredFn& fy, const BlockPair& z,
                          double tol);

}  // namespace blockopt
