// Dense row-major linear operators
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>
#include <vector>

#include "blockopt/rng.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

class LinOp {
  public:
    LinOp() = default;
    LinOp(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}
    LinOp(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static LinOp identity(std::size_t n);
    static LinOp diagonal(const Vec& d);
    static LinOp random(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0,
                        double hi = 1.0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const std::vector<double>& coefficients() const { return a_; }

    Vec apply(const Vec& v) const;
    Vec apply_adjoint(const Vec& w) const;
    LinOp transpose() const;

    /// A^T A as a dense symmetric matrix (cols x cols).
    LinOp gram() const;

    /// -1 scaling, used for constraint blocks like A2 = -I.
    LinOp negated() const;

    double frobenius_norm() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

/// Power-iteration estimate of the largest singular value. Nondecreasing in
/// iters, never above the Frobenius norm, and 0 for the zero operator.
double op_norm_estimate(const LinOp& a, std::size_t iters, Rng& rng);

}  // namespace blockopt
