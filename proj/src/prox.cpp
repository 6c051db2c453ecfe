// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/prox.hpp"

#include <cmath>
#include <limits>

#include "blockopt/errors.hpp"
#include "blockopt/kernels.hpp"

namespace blockopt {

ProxResult prox(const Atom& a, double t, const Vec& x) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("prox: t must be finite and > 0");

    Vec u(x.size());
    switch (a.tag()) {
        case AtomTag::zero:
            u = x;
            break;
        case AtomTag::l1:
            kernels::soft_threshold(u.data(), x.data(), t * a.lambda(), x.size());
            break;
        case AtomTag::sq_l2: {
            double scale = 1.0 / (1.0 + 2.0 * t * a.lambda());
            kernels::lincomb(u.data(), scale, x.data(), 0.0, x.data(), x.size());
            break;
        }
        case AtomTag::ind_nonneg:
            for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] > 0.0 ? x[i] : 0.0;
            break;
        case AtomTag::ind_box: {
            if (x.size() != a.box_lo().size()) {
                throw InputError("prox(ind_box): point dim != bound dim");
            }
            kernels::clamp(u.data(), x.data(), a.box_lo().data(), a.box_hi().data(), x.size());
            break;
        }
    }

    ExtReal au = a.value(u);
    // Prox outputs are feasible by construction.
    double objective = t * au.v + 0.5 * (u - x).sqnorm();
    return {std::move(u), objective};
}

double prox_oracle_1d(const std::function<ExtReal(double)>& f, double x, double lo, double hi,
                      double step) {
    if (!(lo < hi)) throw InputError("prox_oracle_1d: need lo < hi");
    if (!(step > 0.0) || step > (hi - lo) / 10.0) {
        throw InputError("prox_oracle_1d: step must be positive and <= (hi-lo)/10");
    }

    double best_u = 0.0;
    double best_obj = std::numeric_limits<double>::infinity();
    bool any_finite = false;
    const std::size_t count = static_cast<std::size_t>((hi - lo) / step) + 1;
    for (std::size_t k = 0; k < count; ++k) {
        double u = lo + static_cast<double>(k) * step;
        if (u > hi) break;
        ExtReal fu = f(u);
        if (!fu.finite || !std::isfinite(fu.v)) continue;
        double obj = fu.v + 0.5 * (u - x) * (u - x);
        if (obj < best_obj) {  // strict: ties keep the smallest u
            best_obj = obj;
            best_u = u;
            any_finite = true;
        }
    }
    if (!any_finite) throw InputError("prox_oracle_1d: f is non-finite on the whole grid");
    return best_u;
}

double prox_oracle_1d(const std::function<ExtReal(double)>& f, double x, double step) {
    double half_width = 10.0 * (1.0 + std::fabs(x));
    return prox_oracle_1d(f, x, x - half_width, x + half_width, step);
}

bool prox_objective_optimality(const Atom& a, double t, const Vec& x, const Vec& u,
                               std::size_t n_samples, Rng& rng) {
    ExtReal au = a.value(u);
    if (!au.finite) return false;  // a minimizer must be feasible
    const double base = t * au.v + 0.5 * (u - x).sqnorm();
    const double slack = 1e-10;

    for (std::size_t s = 0; s < n_samples; ++s) {
        double radius = std::pow(10.0, rng.uniform(-4.0, 0.0));
        Vec v = u + rng.unit_vec(u.size()) * radius;
        ExtReal av = a.value(v);
        if (!av.finite) continue;  // infinite objective can never undercut
        double obj = t * av.v + 0.5 * (v - x).sqnorm();
        if (base > obj + slack) return false;
    }
    return true;
}

}  // namespace blockopt
