// Runtime kernel lane selection
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace blockopt::kernels {

namespace {

struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sqnorm)(const double*, std::size_t);
    void (*axpy)(double*, double, const double*, std::size_t);
    void (*lincomb)(double*, double, const double*, double, const double*, std::size_t);
    void (*soft_threshold)(double*, const double*, double, std::size_t);
    void (*clamp)(double*, const double*, const double*, const double*, std::size_t);
    void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
    void (*matvec_adjoint)(const double*, std::size_t, std::size_t, const double*, double*);
    Isa isa;
};

constexpr Ops kScalarOps = {scalar::dot,     scalar::sqnorm, scalar::axpy,
                            scalar::lincomb, scalar::soft_threshold,
                            scalar::clamp,   scalar::matvec, scalar::matvec_adjoint,
                            Isa::scalar};

#if BLOCKOPT_HAVE_AVX2_LANE
constexpr Ops kAvx2Ops = {avx2::dot,     avx2::sqnorm, avx2::axpy,
                          avx2::lincomb, avx2::soft_threshold,
                          avx2::clamp,   avx2::matvec, avx2::matvec_adjoint,
                          Isa::avx2};

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }
#endif

#if BLOCKOPT_HAVE_NEON_LANE
constexpr Ops kNeonOps = {neon::dot,     neon::sqnorm, neon::axpy,
                          neon::lincomb, neon::soft_threshold,
                          neon::clamp,   neon::matvec, neon::matvec_adjoint,
                          Isa::neon};
#endif

Ops select() {
    const char* req = std::getenv("BLOCKOPT_KERNELS");
    if (req != nullptr) {
        if (std::strcmp(req, "scalar") == 0) return kScalarOps;
#if BLOCKOPT_HAVE_AVX2_LANE
        if (std::strcmp(req, "avx2") == 0 && cpu_has_avx2()) return kAvx2Ops;
#endif
#if BLOCKOPT_HAVE_NEON_LANE
        if (std::strcmp(req, "neon") == 0) return kNeonOps;
#endif
        // Unknown or unavailable request: fall through to auto-detection.
    }
#if BLOCKOPT_HAVE_AVX2_LANE
    if (cpu_has_avx2()) return kAvx2Ops;
#endif
#if BLOCKOPT_HAVE_NEON_LANE
    return kNeonOps;
#else
    return kScalarOps;
#endif
}

const Ops& ops() {
    static const Ops selected = select();
    return selected;
}

}  // namespace

Isa active_isa() { return ops().isa; }

const char* isa_name() {
    switch (ops().isa) {
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
        default: return "scalar";
    }
}

double dot(const double* a, const double* b, std::size_t n) { return ops().dot(a, b, n); }
double sqnorm(const double* a, std::size_t n) { return ops().sqnorm(a, n); }
void axpy(double* y, double alpha, const double* x, std::size_t n) { ops().axpy(y, alpha, x, n); }
void lincomb(double* out, double alpha, const double* x, double beta, const double* y,
             std::size_t n) {
    ops().lincomb(out, alpha, x, beta, y, n);
}
void soft_threshold(double* out, const double* x, double thr, std::size_t n) {
    ops().soft_threshold(out, x, thr, n);
}
void clamp(double* out, const double* x, const double* lo, const double* hi, std::size_t n) {
    ops().clamp(out, x, lo, hi, n);
}
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out) {
    ops().matvec(m, rows, cols, v, out);
}
void matvec_adjoint(const double* m, std::size_t rows, std::size_t cols, const double* v,
                    double* out) {
    ops().matvec_adjoint(m, rows, cols, v, out);
}

}  // namespace blockopt::kernels
