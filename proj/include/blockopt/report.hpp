// Certificate check reports
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blockopt {

enum class CheckStatus { pass, fail, vacuous, inconclusive };

const char* to_string(CheckStatus s);

/// Outcome of one certificate check over a trace. `certifies` is a stable
/// tag for the inequality/property being checked; failure details always
/// name the iteration index, both sides of the inequality, and the slack.
struct CheckReport {
    std::string name;
    std::string certifies;
    CheckStatus status = CheckStatus::pass;
    std::optional<double> min_margin;
    std::vector<std::size_t> violations;
    double tolerance = 0.0;
    std::map<std::string, double> metrics;
    std::string details;

    bool ok() const { return status == CheckStatus::pass || status == CheckStatus::vacuous; }
};

}  // namespace blockopt
