// Error types shared across the library
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace blockopt {

// Bad user input: malformed problems, out-of-range parameters, dimension
// mismatches. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
  public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// An algorithm failed at run time (divergence, inner solver stall). Exit code 3.
class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blockopt
