// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/atom.hpp"

#include <cmath>

#include "blockopt/errors.hpp"

namespace blockopt {

Atom Atom::zero() { return Atom(AtomTag::zero, 0.0, Vec(), Vec()); }

Atom Atom::l1(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InputError("l1 atom: lambda must be finite and >= 0");
    }
    return Atom(AtomTag::l1, lambda, Vec(), Vec());
}

Atom Atom::sq_l2(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InputError("sq_l2 atom: lambda must be finite and >= 0");
    }
    return Atom(AtomTag::sq_l2, lambda, Vec(), Vec());
}

Atom Atom::ind_nonneg() { return Atom(AtomTag::ind_nonneg, 0.0, Vec(), Vec()); }

Atom Atom::ind_box(Vec lo, Vec hi) {
    if (lo.size() != hi.size()) throw InputError("ind_box atom: lo/hi dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) {
            throw InputError("ind_box atom: lo > hi at coordinate " + std::to_string(i));
        }
    }
    return Atom(AtomTag::ind_box, 0.0, std::move(lo), std::move(hi));
}

ExtReal Atom::value(const Vec& x) const {
    switch (tag_) {
        case AtomTag::zero:
            return ExtReal::of(0.0);
        case AtomTag::l1: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i]);
            return ExtReal::of(lambda_ * s);
        }
        case AtomTag::sq_l2:
            return ExtReal::of(lambda_ * x.sqnorm());
        case AtomTag::ind_nonneg:
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] < 0.0) return ExtReal::infinite();
            }
            return ExtReal::of(0.0);
        case AtomTag::ind_box:
            if (x.size() != lo_.size()) throw InputError("ind_box: point dim != bound dim");
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] < lo_[i] || x[i] > hi_[i]) return ExtReal::infinite();
            }
            return ExtReal::of(0.0);
    }
    throw InputError("Atom: unknown tag");
}

ExtReal Atom::value_1d(double u, std::size_t coord) const {
    switch (tag_) {
        case AtomTag::zero:
            return ExtReal::of(0.0);
        case AtomTag::l1:
            return ExtReal::of(lambda_ * std::fabs(u));
        case AtomTag::sq_l2:
            return ExtReal::of(lambda_ * u * u);
        case AtomTag::ind_nonneg:
            return u >= 0.0 ? ExtReal::of(0.0) : ExtReal::infinite();
        case AtomTag::ind_box:
            if (coord >= lo_.size()) throw InputError("ind_box: coordinate out of range");
            return (u >= lo_[coord] && u <= hi_[coord]) ? ExtReal::of(0.0) : ExtReal::infinite();
    }
    throw InputError("Atom: unknown tag");
}

std::string Atom::describe() const {
    switch (tag_) {
        case AtomTag::zero: return "zero";
        case AtomTag::l1: return "l1(lambda=" + std::to_string(lambda_) + ")";
        case AtomTag::sq_l2: return "sq_l2(lambda=" + std::to_string(lambda_) + ")";
        case AtomTag::ind_nonneg: return "ind_nonneg";
        case AtomTag::ind_box: return "ind_box(dim=" + std::to_string(lo_.size()) + ")";
    }
    return "?";
}

}  // namespace blockopt
