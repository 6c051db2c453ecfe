// Data-parallel inner-loop kernels with runtime ISA dispatch
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>

namespace blockopt::kernels {

enum class Isa { scalar, avx2, neon };

// Lane selected at first use. Honors BLOCKOPT_KERNELS=scalar|avx2|neon when
// the requested lane is compiled in and supported by the CPU; otherwise the
// best available lane wins. The choice is fixed for the lifetime of the
// process so runs on one machine are reproducible.
Isa active_isa();
const char* isa_name();

// Every kernel below has a scalar reference implementation and, where the
// build targets provide them, AVX2/NEON variants. All variants agree with
// the scalar lane to floating-point reduction-order differences only; the
// equivalence suite in tests/ pins that down.

double dot(const double* a, const double* b, std::size_t n);
double sqnorm(const double* a, std::size_t n);

// y += alpha * x
void axpy(double* y, double alpha, const double* x, std::size_t n);

// out = alpha * x + beta * y
void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n);

// out_i = sign(x_i) * max(|x_i| - thr, 0)
void soft_threshold(double* out, const double* x, double thr, std::size_t n);

// out_i = min(max(x_i, lo_i), hi_i)
void clamp(double* out, const double* x, const double* lo, const double* hi, std::size_t n);

// Row-major dense mat-vec: out =  M v      (rows x cols, v has cols entries)
//                          out =  M^T v    (v has rows entries)
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out);
void matvec_adjoint(const double* m, std::size_t rows, std::size_t cols, const double* v,
                    double* out);

// Scalar reference lane, always available; the equivalence tests compare the
// dispatched lane against these directly.
namespace scalar {
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
}  // namespace scalar

}  // namespace blockopt::kernels
