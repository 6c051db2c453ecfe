// Problem files, trace CSVs and report JSON
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blockopt/admm.hpp"
#include "blockopt/bcd.hpp"
#include "blockopt/report.hpp"

namespace blockopt::io {

struct LoadedProblem {
    std::string algorithm;  // "bcd" | "admm"
    std::string name;
    std::optional<BcdProblem> bcd;
    std::optional<BcdConfig> bcd_cfg;
    std::optional<AdmmProblem> admm;
    std::optional<AdmmConfig> admm_cfg;
};

/// Loads a problem JSON file; validation errors name the offending field and
/// the violated constraint.
LoadedProblem load_problem_file(const std::string& path);

/// Built-in library instance by name (see builtin_names()).
LoadedProblem load_builtin(const std::string& name, std::uint64_t seed);

/// Accepts either a file path or a built-in name.
LoadedProblem load_problem(const std::string& path_or_builtin, std::uint64_t seed);

std::string problem_to_json_text(const LoadedProblem& p);
LoadedProblem problem_from_json_text(const std::string& text);
void save_problem_file(const std::string& path, const LoadedProblem& p);

/// Trace CSVs: '#'-prefixed metadata preamble, one header row, then data rows
/// with numbers at 17 significant digits (exact round trip). Iterate vectors
/// are included when the total dimension is at most 64 or `full` is set;
/// otherwise only the scalar per-iteration columns are written.
void write_bcd_trace_csv(std::ostream& os, const BcdTrace& trace, bool full);
void write_admm_trace_csv(std::ostream& os, const AdmmTrace& trace, bool full);
void save_trace_csv(const std::string& path, const BcdTrace& trace, bool full);
void save_trace_csv(const std::string& path, const AdmmTrace& trace, bool full);

struct LoadedTrace {
    std::string algorithm;
    bool has_vectors = false;
    std::optional<BcdTrace> bcd;
    std::optional<AdmmTrace> admm;
};

LoadedTrace load_trace_csv(const std::string& path);

/// Recomputes the residual vectors r_k (not stored in the CSV) from the
/// problem data after loading.
void rebuild_residuals(AdmmTrace& trace, const AdmmProblem& p);

std::string report_to_json_text(const std::vector<CheckReport>& reports,
                                const std::string& algorithm, const std::string& problem);
void save_report_json(const std::string& path, const std::vector<CheckReport>& reports,
                      const std::string& algorithm, const std::string& problem);

}  // namespace blockopt::io
