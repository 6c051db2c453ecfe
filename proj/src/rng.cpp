// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/rng.hpp"

#include <cmath>

namespace blockopt {

std::uint64_t Rng::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng Rng::split(std::uint64_t stream) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(stream + 0xD1B54A32D192ED03ULL));
    child.counter_ = 0;
    return child;
}

std::uint64_t Rng::next_u64() {
    std::uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    return mix(z);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

Vec Rng::uniform_vec(std::size_t n, double lo, double hi) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
}

Vec Rng::unit_vec(std::size_t n) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Box-Muller; u1 > 0 guaranteed by the +2^-54 nudge.
        double u1 = next_double() + 0x1.0p-54;
        double u2 = next_double();
        v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
    double nrm = v.norm();
    if (nrm == 0.0) {
        v[0] = 1.0;
        return v;
    }
    return v * (1.0 / nrm);
}

}  // namespace blockopt
