// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/subdiff.hpp"

#include <cmath>
#include <limits>

#include "blockopt/errors.hpp"

namespace blockopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double interval_distance(double t, double lo, double hi) {
    if (t < lo) return lo - t;
    if (t > hi) return t - hi;
    return 0.0;
}

}  // namespace

ExtReal StructuredFn::value(const Vec& x) const {
    ExtReal a = atom.value(x);
    if (!a.finite) return a;
    double s = smooth ? smooth->value(x) : 0.0;
    return ExtReal::of(a.v + s);
}

Vec StructuredFn::smooth_grad(const Vec& x) const {
    if (smooth) return smooth->grad(x);
    return Vec(x.size());
}

SubdiffInterval atom_subdiff_interval(const Atom& a, const Vec& x) {
    const std::size_t n = x.size();
    SubdiffInterval out;
    out.lo.assign(n, 0.0);
    out.hi.assign(n, 0.0);

    switch (a.tag()) {
        case AtomTag::zero:
            break;
        case AtomTag::l1: {
            double lam = a.lambda();
            for (std::size_t i = 0; i < n; ++i) {
                if (x[i] == 0.0) {
                    out.lo[i] = -lam;
                    out.hi[i] = lam;
                } else {
                    double g = x[i] > 0.0 ? lam : -lam;
                    out.lo[i] = g;
                    out.hi[i] = g;
                }
            }
            break;
        }
        case AtomTag::sq_l2:
            for (std::size_t i = 0; i < n; ++i) {
                double g = 2.0 * a.lambda() * x[i];
                out.lo[i] = g;
                out.hi[i] = g;
            }
            break;
        case AtomTag::ind_nonneg:
            for (std::size_t i = 0; i < n; ++i) {
                if (x[i] < 0.0) {
                    out.feasible = false;
                    return out;
                }
                if (x[i] == 0.0) {
                    out.lo[i] = -kInf;  // normal cone at the boundary
                    out.hi[i] = 0.0;
                }
            }
            break;
        case AtomTag::ind_box: {
            const Vec& lo = a.box_lo();
            const Vec& hi = a.box_hi();
            if (lo.size() != n) throw InputError("atom_subdiff_interval: box dim mismatch");
            for (std::size_t i = 0; i < n; ++i) {
                if (x[i] < lo[i] || x[i] > hi[i]) {
                    out.feasible = false;
                    return out;
                }
                bool at_lo = x[i] == lo[i];
                bool at_hi = x[i] == hi[i];
                if (at_lo) out.lo[i] = -kInf;
                if (at_hi) out.hi[i] = kInf;
            }
            break;
        }
    }
    return out;
}

ExtReal subdiff_distance_to(const StructuredFn& f, const Vec& x, const Vec& u) {
    if (u.size() != x.size()) throw InputError("subdiff_distance_to: dimension mismatch");
    SubdiffInterval iv = atom_subdiff_interval(f.atom, x);
    if (!iv.feasible) return ExtReal::infinite();
    Vec g = f.smooth_grad(x);
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = interval_distance(u[i] - g[i], iv.lo[i], iv.hi[i]);
        sq += d * d;
    }
    return ExtReal::of(std::sqrt(sq));
}

ExtReal subdiff_distance(const StructuredFn& f, const Vec& x) {
    return subdiff_distance_to(f, x, Vec(x.size()));
}

bool membership(const StructuredFn& f, const Vec& x, const Vec& u, double tol) {
    ExtReal d = subdiff_distance_to(f, x, u);
    return d.finite && d.v <= tol;
}

bool frechet_empirical_check(const StructuredFn& f, const Vec& x, const Vec& u, double eps,
                             std::size_t n_dirs, std::size_t n_radii, double radius_min,
                             Rng& rng) {
    if (!(radius_min > 0.0) || radius_min > 1.0) {
        throw InputError("frechet_empirical_check: radius_min must lie in (0, 1]");
    }
    ExtReal fx = f.value(x);
    if (!fx.finite) return false;

    for (std::size_t d = 0; d < n_dirs; ++d) {
        Vec dir = rng.unit_vec(x.size());
        for (std::size_t j = 0; j < n_radii; ++j) {
            double frac = n_radii > 1 ? static_cast<double>(j) / (n_radii - 1) : 0.0;
            double r = radius_min * std::pow(1.0 / radius_min, frac);
            Vec y = x + dir * r;
            ExtReal fy = f.value(y);
            if (!fy.finite) continue;  // +inf satisfies the inequality
            double lhs = fy.v - fx.v - u.dot(y - x);
            if (lhs < -eps * r) return false;
        }
    }
    return true;
}

bool closed_graph_spotcheck(const StructuredFn& f, const std::vector<Vec>& xs,
                            const std::vector<Vec>& us, const Vec& x_lim, const Vec& u_lim,
                            double tol) {
    if (xs.size() != us.size()) {
        throw InputError("closed_graph_spotcheck: xs/us length mismatch");
    }
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!membership(f, xs[k], us[k], tol)) {
            throw InputError("closed_graph_spotcheck: precondition fails, pair " +
                             std::to_string(k) + " is not a member at tol");
        }
    }
    if (!membership(f, x_lim, u_lim, tol * 10.0)) return false;

    ExtReal flim = f.value(x_lim);
    if (!flim.finite) return false;

    // f-attentive tail: the value gap at the end must have shrunk relative to
    // the start of the tail (or be at roundoff already).
    if (xs.size() >= 4) {
        std::size_t tail_start = xs.size() / 2;
        ExtReal f_start = f.value(xs[tail_start]);
        ExtReal f_last = f.value(xs.back());
        if (!f_start.finite || !f_last.finite) return false;
        double d_start = std::fabs(f_start.v - flim.v);
        double d_last = std::fabs(f_last.v - flim.v);
        double atol = 1e-12 * (1.0 + std::fabs(flim.v));
        if (d_last > std::max(0.9 * d_start, atol)) return false;
    }
    return true;
}

double grad_fd_check(const StructuredFn& f, const Vec& x, double h) {
    if (f.atom.tag() != AtomTag::zero) {
        throw InputError("grad_fd_check: requires a smooth function (zero atom)");
    }
    if (!(h > 0.0)) throw InputError("grad_fd_check: h must be > 0");
    if (!f.smooth) throw InputError("grad_fd_check: no smooth part to differentiate");

    Vec g = f.smooth->grad(x);
    double gmax = g.max_abs();
    double worst = 0.0;
    Vec xp = x, xm = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        double fd = (f.smooth->value(xp) - f.smooth->value(xm)) / (2.0 * h);
        worst = std::max(worst, std::fabs(fd - g[i]));
        xp[i] = x[i];
        xm[i] = x[i];
    }
    if (gmax > 1e-8) return worst / gmax;
    return worst;  // absolute error at (near-)critical points
}

bool critical_point_check(const StructuredFn& fx, const StructuredFn& fy, const BlockPair& z,
                          double tol) {
    ExtReal dx = subdiff_distance(fx, z.x);
    ExtReal dy = subdiff_distance(fy, z.y);
    if (!dx.finite || !dy.finite) return false;
    return dx.v + dy.v <= tol;
}

}  // namespace blockopt
