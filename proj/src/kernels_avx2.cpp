// AVX2 kernel lane (compiled with -mavx2 -mfma; only dispatched on capable CPUs)
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "kernels_impl.hpp"

#if BLOCKOPT_HAVE_AVX2_LANE

#include <immintrin.h>

namespace blockopt::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sqnorm(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, vx, _mm256_mul_pd(vb, vy)));
    }
    for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void soft_threshold(double* out, const double* x, double thr, std::size_t n) {
    const __m256d vthr = _mm256_set1_pd(thr);
    const __m256d vzero = _mm256_setzero_pd();
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vabs = _mm256_andnot_pd(sign_mask, vx);
        __m256d vsign = _mm256_and_pd(sign_mask, vx);
        __m256d shrunk = _mm256_max_pd(_mm256_sub_pd(vabs, vthr), vzero);
        _mm256_storeu_pd(out + i, _mm256_or_pd(shrunk, vsign));
    }
    for (; i < n; ++i) {
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
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vlo = _mm256_loadu_pd(lo + i);
        __m256d vhi = _mm256_loadu_pd(hi + i);
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_max_pd(vx, vlo), vhi));
    }
    for (; i < n; ++i) {
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

}  // namespace blockopt::kernels::avx2

#endif  // BLOCKOPT_HAVE_AVX2_LANE
