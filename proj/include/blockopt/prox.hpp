// Scaled proximal operators and the brute-force grid oracle
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>

#include "blockopt/atom.hpp"
#include "blockopt/rng.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

struct ProxResult {
    Vec point;
    double objective;  // t*a(point) + 0.5*||point - x||^2
};

/// Unique minimizer of t*a(u) + 0.5*||u - x||^2 (all supported atoms are
/// convex). Closed forms:
///   zero       -> x
///   l1         -> soft threshold at t*lambda
///   sq_l2      -> x / (1 + 2*t*lambda)
///   ind_nonneg -> componentwise max(x, 0)
///   ind_box    -> clamp into [lo, hi]
ProxResult prox(const Atom& a, double t, const Vec& x);

/// Grid minimizer of f(u) + 0.5*(u - x)^2 over {lo, lo+step, ...} up to hi.
/// Ties break toward the smallest u. f may return the infinite marker; a grid
/// with no finite value is an error.
double prox_oracle_1d(const std::function<ExtReal(double)>& f, double x, double lo, double hi,
                      double step);

/// Same oracle with the default window lo = x - 10(1+|x|), hi = x + 10(1+|x|).
double prox_oracle_1d(const std::function<ExtReal(double)>& f, double x, double step = 1e-5);

/// Sampled global-minimality check: true iff the prox objective at u is no
/// worse (up to 1e-10) than at random perturbations u + r*d with radii
/// log-uniform in [1e-4, 1].
bool prox_objective_optimality(const Atom& a, double t, const Vec& x, const Vec& u,
                               std::size_t n_samples, Rng& rng);

}  // namespace blockopt
