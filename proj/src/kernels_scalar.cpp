// Scalar reference kernels
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/kernels.hpp"

#include <cmath>

namespace blockopt::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sqnorm(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void soft_threshold(double* out, const double* x, double thr, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        if (v > thr) {
            out[i] = v - thr;
        } else if (v < -thr) {
            out[i] = v + thr;
        } else {
            out[i] = 0.0;
        }
    }
}

void clamp(double* out, const double* x, const double* lo, const double* hi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        if (v < lo[i]) v = lo[i];
        if (v > hi[i]) v = hi[i];
        out[i] = v;
    }
}

void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = dot(m + r * cols, v, cols);
}

void matvec_adjoint(const double* m, std::size_t rows, std::size_t cols, const double* v,
                    double* out) {
    for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
    for (std::size_t r = 0; r < rows; ++r) axpy(out, v[r], m + r * cols, cols);
}

}  // namespace blockopt::kernels::scalar
