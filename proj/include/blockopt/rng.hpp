// Counter-based splittable pseudorandom generator
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>

#include "blockopt/vec.hpp"

namespace blockopt {

class LinOp;

/// SplitMix64-style counter generator. Output at position k is a pure
/// function of (key, k), so identical seeds give identical streams across
/// platforms and split() children are independent of how much the parent
/// has been consumed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x9E3779B97F4A7C15ULL)) {}

    /// Independent child stream; deterministic in (parent key, stream id).
    Rng split(std::uint64_t stream) const;

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double next_double();

    double uniform(double lo, double hi);

    Vec uniform_vec(std::size_t n, double lo, double hi);

    /// Uniform direction on the unit sphere (Gaussian via Box-Muller, normalized).
    Vec unit_vec(std::size_t n);

  private:
    static std::uint64_t mix(std::uint64_t z);

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace blockopt
