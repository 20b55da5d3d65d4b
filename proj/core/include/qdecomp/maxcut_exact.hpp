#pragma once

#include "qdecomp/maxcut.hpp"

namespace qdecomp {

struct MaxCutExactOptions {
    int brute_force_cap = 22;  // Gray-code enumeration up to this size
    int size_cap = 28;         // hard limit; branch and cut in between
};

/// Provably optimal cut. Small components are enumerated with Gray-code
/// updates; larger ones fall back to branch and bound on the edge variables
/// with cycle-relaxation bounds. Throws std::invalid_argument above size_cap.
CutSolution maxcut_exact(const MaxCutInstance& g, const MaxCutExactOptions& opts = {});

}  // namespace qdecomp
