// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include "blockopt/report.hpp"

namespace blockopt {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::vacuous: return "vacuous";
        case CheckStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace blockopt
