// Small dense factorizations: SPD Cholesky and cyclic Jacobi eigensolver
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <vector>

#include "blockopt/linop.hpp"
#include "blockopt/vec.hpp"

namespace blockopt {

/// Cholesky factorization of a symmetric positive-definite matrix.
/// factorize() returns nullopt when a pivot drops below tol * max-diagonal,
/// i.e. the matrix is not (numerically) positive definite.
class Cholesky {
  public:
    static std::optional<Cholesky> factorize(const LinOp& spd, double tol = 1e-13);

    Vec solve(const Vec& b) const;
    std::size_t dim() const { return n_; }

  private:
    Cholesky(std::size_t n, std::vector<double> l) : n_(n), l_(std::move(l)) {}

    std::size_t n_ = 0;
    std::vector<double> l_;  // lower triangle, row-major
};

struct SymEigen {
    Vec values;   // ascending
    LinOp vectors;  // column j pairs with values[j]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Intended for the
/// desk-scale matrices this library works with.
SymEigen sym_eigen(const LinOp& s, std::size_t max_sweeps = 64);

/// Smallest / largest singular values via the Gram matrix spectrum.
double smallest_singular_value(const LinOp& a);
double largest_singular_value(const LinOp& a);

/// Minimum-norm solution of S y = b for symmetric positive semidefinite S
/// (eigenvalues below rel_tol * lambda_max are treated as zero).
Vec pinv_solve_spsd(const LinOp& s, const Vec& b, double rel_tol = 1e-12);

}  // namespace blockopt
