// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/kl.hpp"

#include <cmath>
#include <limits>

#include "blockopt/errors.hpp"

namespace blockopt {

Desingularizer::Desingularizer(double c, double theta, double eta)
    : c_(c), theta_(theta), eta_(eta) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw InputError("Desingularizer: c must be finite and > 0");
    }
    if (!(theta >= 0.0 && theta < 1.0)) {
        throw InputError("Desingularizer: theta must lie in [0, 1)");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InputError("Desingularizer: eta must be finite and > 0");
    }
}

double Desingularizer::phi(double t) const {
    return c_ / (1.0 - theta_) * std::pow(t, 1.0 - theta_);
}

double Desingularizer::dphi(double t) const { return c_ * std::pow(t, -theta_); }

bool verify_desingularizing_fn(const std::function<double(double)>& phi,
                               const std::function<double(double)>& dphi, double eta,
                               std::size_t grid_points) {
    if (grid_points < 3) throw InputError("verify_desingularizing: need grid_points >= 3");
    if (!(eta > 0.0)) throw InputError("verify_desingularizing: eta must be > 0");

    if (phi(0.0) != 0.0) return false;

    std::vector<double> grid(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        double frac = static_cast<double>(i) / (grid_points - 1);
        grid[i] = eta * std::pow(10.0, -12.0 * (1.0 - frac)) * (1.0 - 1e-12);
    }
    for (double t : grid) {
        if (!(dphi(t) > 0.0)) return false;
    }
    for (std::size_t i = 0; i + 1 < grid_points; ++i) {
        double a = grid[i], b = grid[i + 1];
        double pa = phi(a), pb = phi(b);
        double slack = 1e-12 * (1.0 + std::fabs(pa) + std::fabs(pb));
        if (phi(0.5 * (a + b)) < 0.5 * (pa + pb) - slack) return false;
    }
    return true;
}

bool verify_desingularizing(const Desingularizer& d, std::size_t grid_points) {
    return verify_desingularizing_fn([&](double t) { return d.phi(t); },
                                     [&](double t) { return d.dphi(t); }, d.eta(), grid_points);
}

KlReport kl_inequality_along_trace(const std::vector<KlSample>& samples, double f_limit,
                                   const Desingularizer& d, std::size_t burn_in) {
    KlReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    // The window's lower edge sits at the roundoff resolution of f_limit:
    // smaller gaps are cancellation noise and certify nothing.
    const double gap_floor = 1e-14 * (1.0 + std::fabs(f_limit));
    for (std::size_t k = burn_in; k < samples.size(); ++k) {
        double gap = samples[k].value - f_limit;
        if (!(gap > gap_floor) || !(gap < d.eta())) continue;  // value window (0, eta)
        ++rep.eligible;
        double margin = d.dphi(gap) * samples[k].dist - 1.0;
        rep.min_margin = std::min(rep.min_margin, margin);
        if (margin < -1e-8) {
            ++rep.violations;
            rep.violating_indices.push_back(k);
        }
    }
    if (rep.eligible == 0) {
        rep.vacuous = true;
        rep.min_margin = 0.0;
    }
    return rep;
}

KlFit fit_kl_exponent(const std::vector<KlSample>& samples, double f_limit,
                      std::size_t burn_in) {
    const double gap_floor = 1e-14 * (1.0 + std::fabs(f_limit));
    std::vector<double> lg, ld;
    for (std::size_t k = burn_in; k < samples.size(); ++k) {
        double gap = samples[k].value - f_limit;
        if (gap <= gap_floor || !(samples[k].dist > 0.0)) continue;
        lg.push_back(std::log(gap));
        ld.push_back(std::log(samples[k].dist));
    }
    if (lg.size() < 10) {
        throw InputError("fit_kl_exponent: need >= 10 eligible points, have " +
                         std::to_string(lg.size()));
    }

    const std::size_t n = lg.size();
    double mg = 0.0, md = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mg += lg[i];
        md += ld[i];
    }
    mg /= static_cast<double>(n);
    md /= static_cast<double>(n);
    double sgg = 0.0, sgd = 0.0, sdd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sgg += (lg[i] - mg) * (lg[i] - mg);
        sgd += (lg[i] - mg) * (ld[i] - md);
        sdd += (ld[i] - md) * (ld[i] - md);
    }
    if (sgg < 1e-20) throw InputError("fit_kl_exponent: insufficient decay in objective gaps");

    double theta = sgd / sgg;
    double intercept = md - theta * mg;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ld[i] - (intercept + theta * lg[i]);
        ss_res += r * r;
    }
    double r2 = sdd > 0.0 ? 1.0 - ss_res / sdd : 1.0;

    // Envelope constant: smallest c such that c * gap^-theta * dist >= 1 on
    // every fitted point.
    double c_env = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c_env = std::max(c_env, std::exp(theta * lg[i] - ld[i]));
    }
    c_env *= 1.0 + 1e-12;

    return {theta, c_env, std::exp(-intercept), r2, n};
}

}  // namespace blockopt
