// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/vec.hpp"

#include <cmath>

#include "blockopt/errors.hpp"
#include "blockopt/kernels.hpp"

namespace blockopt {

namespace {

void require_finite(const std::vector<double>& e) {
    for (double v : e) {
        if (!std::isfinite(v)) throw InputError("Vec: entries must be finite (no NaN/Inf)");
    }
}

}  // namespace

Vec::Vec(std::vector<double> entries) : e_(std::move(entries)) { require_finite(e_); }

Vec::Vec(std::initializer_list<double> entries) : e_(entries) { require_finite(e_); }

void Vec::require_same_dim(const Vec& other) const {
    if (e_.size() != other.e_.size()) {
        throw InputError("Vec: dimension mismatch (" + std::to_string(e_.size()) + " vs " +
                         std::to_string(other.e_.size()) + ")");
    }
}

double Vec::dot(const Vec& other) const {
    require_same_dim(other);
    return kernels::dot(data(), other.data(), size());
}

double Vec::sqnorm() const { return kernels::sqnorm(data(), size()); }

double Vec::norm() const { return std::sqrt(sqnorm()); }

double Vec::max_abs() const {
    double m = 0.0;
    for (double v : e_) m = std::max(m, std::fabs(v));
    return m;
}

Vec Vec::operator+(const Vec& other) const {
    require_same_dim(other);
    Vec out(size());
    kernels::lincomb(out.data(), 1.0, data(), 1.0, other.data(), size());
    return out;
}

Vec Vec::operator-(const Vec& other) const {
    require_same_dim(other);
    Vec out(size());
    kernels::lincomb(out.data(), 1.0, data(), -1.0, other.data(), size());
    return out;
}

Vec Vec::operator*(double s) const {
    Vec out(size());
    kernels::lincomb(out.data(), s, data(), 0.0, data(), size());
    return out;
}

Vec& Vec::operator+=(const Vec& other) {
    require_same_dim(other);
    kernels::axpy(data(), 1.0, other.data(), size());
    return *this;
}

Vec& Vec::operator-=(const Vec& other) {
    require_same_dim(other);
    kernels::axpy(data(), -1.0, other.data(), size());
    return *this;
}

void Vec::axpy(double alpha, const Vec& x) {
    require_same_dim(x);
    kernels::axpy(data(), alpha, x.data(), size());
}

bool Vec::all_finite() const {
    for (double v : e_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double block_sqnorm(const BlockPair& z) { return z.x.sqnorm() + z.y.sqnorm(); }

double block_norm(const BlockPair& z) { return std::sqrt(block_sqnorm(z)); }

}  // namespace blockopt
