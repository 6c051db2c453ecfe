// Dense vectors and two-block points with the l2 product norm
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>
#include <vector>

namespace blockopt {

/// Finite-dimensional real vector. Entries are always finite: constructors
/// taking data validate, arithmetic on finite inputs stays finite at the
/// scales the solvers allow (they abort well before overflow).
class Vec {
  public:
    Vec() = default;
    explicit Vec(std::size_t n) : e_(n, 0.0) {}
    explicit Vec(std::vector<double> entries);
    Vec(std::initializer_list<double> entries);

    std::size_t size() const { return e_.size(); }
    double operator[](std::size_t i) const { return e_[i]; }
    double& operator[](std::size_t i) { return e_[i]; }
    const double* data() const { return e_.data(); }
    double* data() { return e_.data(); }
    const std::vector<double>& entries() const { return e_; }

    double dot(const Vec& other) const;
    double sqnorm() const;
    double norm() const;
    double max_abs() const;

    Vec operator+(const Vec& other) const;
    Vec operator-(const Vec& other) const;
    Vec operator*(double s) const;
    Vec& operator+=(const Vec& other);
    Vec& operator-=(const Vec& other);

    /// this += alpha * x
    void axpy(double alpha, const Vec& x);

    bool all_finite() const;

  private:
    void require_same_dim(const Vec& other) const;

    std::vector<double> e_;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

/// Two-block point z = (x, y) with ||z|| = sqrt(||x||^2 + ||y||^2).
struct BlockPair {
    Vec x;
    Vec y;

    BlockPair() = default;
    BlockPair(Vec x_, Vec y_) : x(std::move(x_)), y(std::move(y_)) {}

    BlockPair operator+(const BlockPair& o) const { return {x + o.x, y + o.y}; }
    BlockPair operator-(const BlockPair& o) const { return {x - o.x, y - o.y}; }
    BlockPair operator*(double s) const { return {x * s, y * s}; }
};

double block_norm(const BlockPair& z);
double block_sqnorm(const BlockPair& z);

}  // namespace blockopt
