// NEON kernel lane (aarch64)
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "kernels_impl.hpp"

#if BLOCKOPT_HAVE_NEON_LANE

#include <arm_neon.h>

namespace blockopt::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sqnorm(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t va = vld1q_f64(a + i);
        acc = vfmaq_f64(acc, va, va);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
    float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n) {
    float64x2_t va = vdupq_n_f64(alpha);
    float64x2_t vb = vdupq_n_f64(beta);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t t = vmulq_f64(vb, vld1q_f64(y + i));
        vst1q_f64(out + i, vfmaq_f64(t, va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void soft_threshold(double* out, const double* x, double thr, std::size_t n) {
    const float64x2_t vthr = vdupq_n_f64(thr);
    const float64x2_t vzero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        float64x2_t vabs = vabsq_f64(vx);
        float64x2_t shrunk = vmaxq_f64(vsubq_f64(vabs, vthr), vzero);
        uint64x2_t sign = vandq_u64(vreinterpretq_u64_f64(vx), vdupq_n_u64(0x8000000000000000ULL));
        vst1q_f64(out + i, vreinterpretq_f64_u64(vorrq_u64(vreinterpretq_u64_f64(shrunk), sign)));
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
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vminq_f64(vmaxq_f64(vld1q_f64(x + i), vld1q_f64(lo + i)), vld1q_f64(hi + i));
        vst1q_f64(out + i, v);
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

}  // namespace blockopt::kernels::neon

#endif  // BLOCKOPT_HAVE_NEON_LANE
