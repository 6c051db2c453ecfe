// Nonsmooth convex atoms: values and structural data
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <string>

#include "blockopt/vec.hpp"

namespace blockopt {

/// Extended-real function value. Indicator atoms report infeasibility as the
/// distinct infinite marker, never as a float.
struct ExtReal {
    double v = 0.0;
    bool finite = true;

    static ExtReal of(double value) { return {value, true}; }
    static ExtReal infinite() { return {0.0, false}; }
};

enum class AtomTag { zero, l1, sq_l2, ind_nonneg, ind_box };

/// Proper lower-semicontinuous convex function from the supported library:
///   zero        u -> 0
///   l1          u -> lambda * ||u||_1
///   sq_l2       u -> lambda * ||u||^2
///   ind_nonneg  indicator of { u >= 0 }
///   ind_box     indicator of { lo <= u <= hi }
/// All tags are convex, so proxes are single-valued; nonconvex atoms are out
/// of scope.
class Atom {
  public:
    Atom() = default;  // the zero atom

    static Atom zero();
    static Atom l1(double lambda);
    static Atom sq_l2(double lambda);
    static Atom ind_nonneg();
    static Atom ind_box(Vec lo, Vec hi);

    AtomTag tag() const { return tag_; }
    double lambda() const { return lambda_; }
    const Vec& box_lo() const { return lo_; }
    const Vec& box_hi() const { return hi_; }

    ExtReal value(const Vec& x) const;

    /// One-coordinate value for separable use (grid oracle, interval checks).
    ExtReal value_1d(double u, std::size_t coord = 0) const;

    bool is_indicator() const { return tag_ == AtomTag::ind_nonneg || tag_ == AtomTag::ind_box; }
    bool is_quadratic() const { return tag_ == AtomTag::zero || tag_ == AtomTag::sq_l2; }

    /// Every supported atom is bounded below on its domain (by 0).
    double lower_bound() const { return 0.0; }

    std::string describe() const;

  private:
    Atom(AtomTag tag, double lambda, Vec lo, Vec hi)
        : tag_(tag), lambda_(lambda), lo_(std::move(lo)), hi_(std::move(hi)) {}

    AtomTag tag_ = AtomTag::zero;
    double lambda_ = 0.0;
    Vec lo_, hi_;
};

}  // namespace blockopt
