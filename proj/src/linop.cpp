// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/linop.hpp"

#include <cmath>

#include "blockopt/errors.hpp"
#include "blockopt/kernels.hpp"

namespace blockopt {

LinOp::LinOp(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), a_(std::move(row_major)) {
    if (a_.size() != rows * cols) {
        throw InputError("LinOp: data length " + std::to_string(a_.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (double v : a_) {
        if (!std::isfinite(v)) throw InputError("LinOp: coefficients must be finite");
    }
}

LinOp LinOp::identity(std::size_t n) {
    LinOp a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    return a;
}

LinOp LinOp::diagonal(const Vec& d) {
    LinOp a(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
    return a;
}

LinOp LinOp::random(std::size_t rows, std::size_t cols, Rng& rng, double lo, double hi) {
    LinOp a(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) a.a_[i] = rng.uniform(lo, hi);
    return a;
}

Vec LinOp::apply(const Vec& v) const {
    if (v.size() != cols_) {
        throw InputError("LinOp::apply: vector dim " + std::to_string(v.size()) +
                         " != cols " + std::to_string(cols_));
    }
    Vec out(rows_);
    kernels::matvec(a_.data(), rows_, cols_, v.data(), out.data());
    return out;
}

Vec LinOp::apply_adjoint(const Vec& w) const {
    if (w.size() != rows_) {
        throw InputError("LinOp::apply_adjoint: vector dim " + std::to_string(w.size()) +
                         " != rows " + std::to_string(rows_));
    }
    Vec out(cols_);
    kernels::matvec_adjoint(a_.data(), rows_, cols_, w.data(), out.data());
    return out;
}

LinOp LinOp::transpose() const {
    LinOp t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

LinOp LinOp::gram() const {
    LinOp g(cols_, cols_);
    for (std::size_t i = 0; i < cols_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, i) * (*this)(r, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    }
    return g;
}

LinOp LinOp::negated() const {
    LinOp n = *this;
    for (double& v : n.a_) v = -v;
    return n;
}

double LinOp::frobenius_norm() const {
    return std::sqrt(kernels::sqnorm(a_.data(), a_.size()));
}

double op_norm_estimate(const LinOp& a, std::size_t iters, Rng& rng) {
    if (iters < 1) throw InputError("op_norm_estimate: iters must be >= 1");
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    Vec v = rng.unit_vec(a.cols());
    double sigma = 0.0;
    for (std::size_t k = 0; k < iters; ++k) {
        Vec av = a.apply(v);
        double av_norm = av.norm();
        if (av_norm == 0.0) return 0.0;  // v in the null space and Rayleigh stuck at 0
        sigma = av_norm;                 // ||Av|| with ||v|| = 1
        Vec w = a.apply_adjoint(av);
        double w_norm = w.norm();
        if (w_norm == 0.0) return sigma;
        v = w * (1.0 / w_norm);
    }
    return sigma;
}

}  // namespace blockopt
