// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/certify.hpp"

#include <algorithm>
#include <cmath>

#include "blockopt/errors.hpp"
#include "blockopt/kl.hpp"
#include "blockopt/problems.hpp"

namespace blockopt {

namespace {

CheckReport kl_check(const BcdTrace& trace, const BcdCertifyOptions& opt) {
    CheckReport rep;
    rep.name = "kl_inequality";
    rep.certifies = "kl-inequality";

    std::vector<KlSample> samples = kl_samples(trace);
    double f_limit = opt.f_limit ? *opt.f_limit : trace.psi.back();
    // Default: the whole trace; the value window (0, eta) drops converged points.
    std::size_t burn_in = opt.kl_burn_in;

    double theta, c;
    try {
        if (opt.kl_theta && opt.kl_c) {
            theta = *opt.kl_theta;
            c = *opt.kl_c;
        } else if (opt.kl_theta) {
            // envelope c for the requested exponent
            KlFit fit = fit_kl_exponent(samples, f_limit, burn_in);
            theta = *opt.kl_theta;
            c = 0.0;
            for (std::size_t k = burn_in; k < samples.size(); ++k) {
                double gap = samples[k].value - f_limit;
                if (gap <= 1e-14 * (1.0 + std::fabs(f_limit)) || samples[k].dist <= 0.0) continue;
                c = std::max(c, std::pow(gap, theta) / samples[k].dist);
            }
            c *= 1.0 + 1e-12;
            rep.metrics["fit_theta"] = fit.theta_hat;
            rep.metrics["fit_r2"] = fit.r2;
            if (!(c > 0.0)) {
                rep.status = CheckStatus::vacuous;
                rep.details = "no eligible points for the requested exponent";
                return rep;
            }
        } else {
            KlFit fit = fit_kl_exponent(samples, f_limit, burn_in);
            theta = fit.theta_hat;
            c = fit.c_hat;
            rep.metrics["fit_theta"] = fit.theta_hat;
            rep.metrics["fit_r2"] = fit.r2;
            rep.metrics["fit_c"] = fit.c_hat;
            if (!(theta >= 0.0 && theta < 1.0)) {
                rep.status = CheckStatus::inconclusive;
                rep.details = "fitted exponent outside [0,1); trace tail not power-law shaped";
                return rep;
            }
        }
    } catch (const InputError& e) {
        rep.status = CheckStatus::inconclusive;
        rep.details = std::string("no KL fit: ") + e.what();
        return rep;
    }

    double max_gap = 0.0;
    for (std::size_t k = burn_in; k < samples.size(); ++k) {
        max_gap = std::max(max_gap, samples[k].value - f_limit);
    }
    if (!(max_gap > 0.0)) {
        rep.status = CheckStatus::vacuous;
        rep.details = "all tail objective gaps at the limit already";
        return rep;
    }

    Desingularizer d(c, theta, max_gap * 1.01);
    KlReport kl = kl_inequality_along_trace(samples, f_limit, d, burn_in);
    rep.metrics["theta"] = theta;
    rep.metrics["c"] = c;
    rep.metrics["eligible"] = static_cast<double>(kl.eligible);
    rep.min_margin = kl.min_margin;
    rep.violations = kl.violating_indices;
    rep.tolerance = 1e-8;
    if (kl.vacuous) {
        rep.status = CheckStatus::vacuous;
    } else {
        rep.status = kl.violations == 0 ? CheckStatus::pass : CheckStatus::fail;
        if (kl.violations > 0) {
            rep.details = std::to_string(kl.violations) + " margins below -1e-8, min margin " +
                          std::to_string(kl.min_margin);
        }
    }
    return rep;
}

}  // namespace

std::vector<CheckReport> certify_bcd(const BcdProblem& p, const BcdTrace& trace,
                                     const BcdCertifyOptions& opt) {
    std::vector<CheckReport> reports;
    reports.push_back(check_sufficient_descent(trace, trace.gamma, trace.l));
    reports.push_back(check_step_vanishing(trace));
    reports.push_back(check_subdiff_bound(p, trace, trace.gamma, trace.l));
    reports.push_back(check_finite_length(trace));
    reports.push_back(check_limit_criticality(p, trace, opt.criticality_tol));
    if (opt.with_kl) reports.push_back(kl_check(trace, opt));
    return reports;
}

std::vector<CheckReport> certify_admm(const AdmmProblem& p, const AdmmTrace& trace,
                                      const AdmmCertifyOptions& opt) {
    std::vector<CheckReport> reports;
    reports.push_back(check_dual_update_exactness(trace));

    std::vector<KktPair> refs;
    try {
        refs = admm_references(p);
    } catch (const InputError& e) {
        CheckReport rep;
        rep.name = "phi_descent";
        rep.certifies = "phi-descent";
        rep.status = CheckStatus::inconclusive;
        rep.details = std::string("no KKT reference: ") + e.what();
        reports.push_back(rep);
    }

    for (std::size_t i = 0; i < refs.size(); ++i) {
        AuxSequences aux = compute_aux(p, trace, refs[i].x1, refs[i].x2, refs[i].y);
        CheckReport phi = check_phi_descent(aux, trace.rho, trace.tau);
        if (i > 0) phi.name += "_ref" + std::to_string(i + 1);
        reports.push_back(std::move(phi));
        if (i == 0) {
            double tol1 = uv_membership_tol(trace.route1, trace.inner_tol);
            double tol2 = uv_membership_tol(trace.route2, trace.inner_tol);
            reports.push_back(check_uv_membership(p, aux, trace, tol1, tol2));
        }
    }

    reports.push_back(check_convergence_to_kkt(p, trace, opt.kkt_tol));
    return reports;
}

bool all_ok(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return r.ok(); });
}

}  // namespace blockopt
