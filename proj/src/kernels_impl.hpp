// Internal declarations for the per-ISA kernel lanes
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define BLOCKOPT_HAVE_AVX2_LANE 1
#else
#define BLOCKOPT_HAVE_AVX2_LANE 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define BLOCKOPT_HAVE_NEON_LANE 1
#else
#define BLOCKOPT_HAVE_NEON_LANE 0
#endif

namespace blockopt::kernels {

#if BLOCKOPT_HAVE_AVX2_LANE
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sqnorm(const double* a, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);
void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n);
void soft_threshold(double* out, const double* x, double thr, std::size_t n);
void clamp(double* out, const double* x, const double* lo, const double* hi, std::size_t n);
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out);
void matvec_adjoint(const double* m, std::size_t rows, std::size_t cols, const double* v,
                    double* out);
}  // namespace avx2
#endif

#if BLOCKOPT_HAVE_NEON_LANE
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
double sqnorm(const double* a, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);
void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n);
void soft_threshold(double* out, const double* x, double thr, std::size_t n);
void clamp(double* out, const double* x, const double* lo, const double* hi, std::size_t n);
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out);
void matvec_adjoint(const double* m, std::size_t rows, std::size_t cols, const double* v,
                    double* out);
}  // namespace neon
#endif

}  // namespace blockopt::kernels
