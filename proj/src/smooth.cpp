// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/smooth.hpp"

#include <memory>

#include "blockopt/errors.hpp"

namespace blockopt {

LinOp hcat(const LinOp& a, const LinOp& b) {
    if (a.rows() != b.rows()) throw InputError("hcat: row count mismatch");
    LinOp m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

SmoothCoupling quadratic_coupling(LinOp a, LinOp b, Vec c, std::optional<double> exact_l) {
    if (a.rows() != b.rows() || a.rows() != c.size()) {
        throw InputError("quadratic_coupling: A, B, c must share the output dimension");
    }
    double l;
    if (exact_l) {
        if (!(*exact_l > 0.0)) throw InputError("quadratic_coupling: exact_l must be > 0");
        l = *exact_l;
    } else {
        Rng rng(0x5EEDBA5Eu);  // fixed internal seed keeps the constant reproducible
        double sigma = op_norm_estimate(hcat(a, b), 200, rng);
        l = 1.01 * sigma * sigma;
        if (l <= 0.0) l = 1e-12;  // zero coupling: any tiny constant is valid
    }

    auto data = std::make_shared<QuadCouplingDesc>(
        QuadCouplingDesc{std::move(a), std::move(b), std::move(c), exact_l});

    auto residual = [data](const Vec& x, const Vec& y) {
        Vec r = data->a.apply(x);
        r += data->b.apply(y);
        r -= data->c;
        return r;
    };

    SmoothCoupling h;
    h.value = [residual](const Vec& x, const Vec& y) { return 0.5 * residual(x, y).sqnorm(); };
    h.grad_x = [residual, data](const Vec& x, const Vec& y) {
        return data->a.apply_adjoint(residual(x, y));
    };
    h.grad_y = [residual, data](const Vec& x, const Vec& y) {
        return data->b.apply_adjoint(residual(x, y));
    };
    h.lipschitz_l = l;
    h.desc = *data;
    return h;
}

double QuadForm::value(const Vec& v) const {
    Vec r = g.apply(v);
    r -= h;
    return 0.5 * r.sqnorm();
}

Vec QuadForm::grad(const Vec& v) const {
    Vec r = g.apply(v);
    r -= h;
    return g.apply_adjoint(r);
}

}  // namespace blockopt
