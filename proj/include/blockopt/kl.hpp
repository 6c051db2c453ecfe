// Desingularizing functions and empirical KL-inequality diagnostics
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace blockopt {

/// Power-family desingularizer phi(t) = (c/(1-theta)) * t^(1-theta) on
/// [0, eta), with phi'(t) = c * t^(-theta). The power family covers the
/// semialgebraic objectives this library targets and is the only family with
/// a canonical fitting procedure; arbitrary concave phi are out of scope.
class Desingularizer {
  public:
    Desingularizer(double c, double theta, double eta);

    double c() const { return c_; }
    double theta() const { return theta_; }
    double eta() const { return eta_; }

    double phi(double t) const;
    double dphi(double t) const;

  private:
    double c_, theta_, eta_;
};

/// Grid verification of the desingularizing-function axioms: phi(0) = 0,
/// phi' > 0 on a log-spaced grid in (0, eta), and midpoint concavity on
/// adjacent grid pairs. The function-handle overload exists so tests can
/// inject non-members (e.g. convex candidates).
bool verify_desingularizing_fn(const std::function<double(double)>& phi,
                               const std::function<double(double)>& dphi, double eta,
                               std::size_t grid_points);
bool verify_desingularizing(const Desingularizer& d, std::size_t grid_points);

/// One trace point: objective value and dist(0, ∂F) at that iterate.
struct KlSample {
    double value;
    double dist;
};

struct KlReport {
    bool vacuous = false;
    std::size_t eligible = 0;
    std::size_t violations = 0;
    double min_margin = 0.0;
    std::vector<std::size_t> violating_indices;  // indices into the sample sequence
};

/// Margins of phi'(F(x_k) - f_limit) * dist(0, ∂F(x_k)) >= 1 along a trace.
/// Points with gap outside (0, eta) are skipped per the property's value
/// window; a point with dist = 0 and positive gap scores margin -1 (hard
/// violation, flags a premature critical point). Violation threshold -1e-8.
KlReport kl_inequality_along_trace(const std::vector<KlSample>& samples, double f_limit,
                                   const Desingularizer& d, std::size_t burn_in = 0);

struct KlFit {
    double theta_hat;
    double c_hat;   // envelope constant: minimal c with zero margin violations
    double c_ls;    // least-squares intercept constant, for diagnostics
    double r2;
    std::size_t points_used;
};

/// Log-log regression of dist against the objective gap over the trace tail.
/// Requires >= 10 eligible points (gap above roundoff floor, dist > 0).
KlFit fit_kl_exponent(const std::vector<KlSample>& samples, double f_limit,
                      std::size_t burn_in = 0);

}  // namespace blockopt
