// Smooth couplings H(x, y) and quadratic addends
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>
#include <optional>

#include "blockopt/linop.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

/// Structural description of H(x,y) = 0.5 * ||A x + B y - c||^2; kept so
/// problems round-trip through files.
struct QuadCouplingDesc {
    LinOp a, b;
    Vec c;
    std::optional<double> exact_l;
};

/// Differentiable coupling with per-block gradients and a Lipschitz constant
/// for the full gradient in the product l2 norm.
struct SmoothCoupling {
    std::function<double(const Vec&, const Vec&)> value;
    std::function<Vec(const Vec&, const Vec&)> grad_x;
    std::function<Vec(const Vec&, const Vec&)> grad_y;
    double lipschitz_l = 0.0;
    std::optional<QuadCouplingDesc> desc;  // present for serializable couplings
};

/// H(x,y) = 0.5*||A x + B y - c||^2. When exact_l is not given the Lipschitz
/// constant is the squared power-iteration norm of [A B] inflated by 1.01
/// (the estimate approaches the true value from below).
SmoothCoupling quadratic_coupling(LinOp a, LinOp b, Vec c,
                                  std::optional<double> exact_l = std::nullopt);

/// Horizontal concatenation [A B].
LinOp hcat(const LinOp& a, const LinOp& b);

/// Quadratic smooth addend q(v) = 0.5 * ||G v - h||^2 for one ADMM block.
struct QuadForm {
    LinOp g;
    Vec h;

    double value(const Vec& v) const;
    Vec grad(const Vec& v) const;
};

}  // namespace blockopt
