// Full certificate suites over finished traces
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "blockopt/admm.hpp"
#include "blockopt/bcd.hpp"
#include "blockopt/report.hpp"

namespace blockopt {

struct BcdCertifyOptions {
    double criticality_tol = 1e-6;
    bool with_kl = true;
    // f_limit for the KL window; defaults to the final trace objective.
    std::optional<double> f_limit;
    std::optional<double> kl_theta;  // fixed theta; c fitted as envelope
    std::optional<double> kl_c;      // fixed c (needs kl_theta)
    std::size_t kl_burn_in = 0;      // leading iterates skipped by the KL checks
};

std::vector<CheckReport> certify_bcd(const BcdProblem& p, const BcdTrace& trace,
                                     const BcdCertifyOptions& opt = {});

struct AdmmCertifyOptions {
    double kkt_tol = 1e-5;
};

/// Runs dual-update exactness, Phi descent against every available KKT
/// reference (reference independence), u/v membership with route-scaled
/// tolerances, and the KKT convergence check. Reports inconclusive phi/uv
/// checks when no reference is available for the problem.
std::vector<CheckReport> certify_admm(const AdmmProblem& p, const AdmmTrace& trace,
                                      const AdmmCertifyOptions& opt = {});

bool all_ok(const std::vector<CheckReport>& reports);

}  // namespace blockopt
