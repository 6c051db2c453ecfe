// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/dense.hpp"

#include <algorithm>
#include <cmath>

#include "blockopt/errors.hpp"

namespace blockopt {

std::optional<Cholesky> Cholesky::factorize(const LinOp& spd, double tol) {
    if (spd.rows() != spd.cols()) throw InputError("Cholesky: matrix must be square");
    const std::size_t n = spd.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(spd(i, i)));
    if (max_diag == 0.0) return std::nullopt;

    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = spd(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (d <= tol * max_diag) return std::nullopt;
        double dj = std::sqrt(d);
        l[j * n + j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = spd(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = s / dj;
        }
    }
    return Cholesky(n, std::move(l));
}

Vec Cholesky::solve(const Vec& b) const {
    if (b.size() != n_) throw InputError("Cholesky::solve: dimension mismatch");
    Vec y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l_[i * n_ + k] * y[k];
        y[i] = s / l_[i * n_ + i];
    }
    Vec x(n_);
    for (std::size_t ii = n_; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n_; ++k) s -= l_[k * n_ + ii] * x[k];
        x[ii] = s / l_[ii * n_ + ii];
    }
    return x;
}

SymEigen sym_eigen(const LinOp& s, std::size_t max_sweeps) {
    if (s.rows() != s.cols()) throw InputError("sym_eigen: matrix must be square");
    const std::size_t n = s.rows();
    LinOp a = s;
    LinOp v = LinOp::identity(n);

    double fro = a.frobenius_norm();
    const double stop = 1e-15 * std::max(fro, 1e-300);

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(2.0 * off) <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymEigen out{Vec(n), LinOp(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double smallest_singular_value(const LinOp& a) {
    SymEigen e = sym_eigen(a.gram());
    return std::sqrt(std::max(0.0, e.values[0]));
}

double largest_singular_value(const LinOp& a) {
    SymEigen e = sym_eigen(a.gram());
    return std::sqrt(std::max(0.0, e.values[e.values.size() - 1]));
}

Vec pinv_solve_spsd(const LinOp& s, const Vec& b, double rel_tol) {
    SymEigen e = sym_eigen(s);
    const std::size_t n = s.rows();
    double lmax = std::max(0.0, e.values[n - 1]);
    Vec y(n);
    for (std::size_t j = 0; j < n; ++j) {
        double lam = e.values[j];
        if (lam <= rel_tol * std::max(lmax, 1e-300)) continue;
        double coeff = 0.0;
        for (std::size_t i = 0; i < n; ++i) coeff += e.vectors(i, j) * b[i];
        coeff /= lam;
        for (std::size_t i = 0; i < n; ++i) y[i] += coeff * e.vectors(i, j);
    }
    return y;
}

}  // namespace blockopt
