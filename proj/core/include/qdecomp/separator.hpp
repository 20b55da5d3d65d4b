#pragma once

#include <vector>

#include "qdecomp/linprog.hpp"
#include "qdecomp/maxcut.hpp"

namespace qdecomp {

/// Partition V = A ∪ B ∪ C where removing C leaves no edge between A and B
/// and ||A| - |B|| <= beta.
struct SeparatorResult {
    lp::SolveStatus status = lp::SolveStatus::Infeasible;
    std::vector<int> partition_a;
    std::vector<int> partition_b;
    std::vector<int> separator;
    long nodes_explored = 0;
};

/// Minimum-cardinality balanced vertex separator via the integer program
/// max sum(x_v + y_v) s.t. x_u + y_v <= 1 and x_v + y_u <= 1 per edge,
/// x_v + y_v <= 1 per vertex, |sum(x_v - y_v)| <= beta.
SeparatorResult balanced_vertex_separator(const MaxCutInstance& g, int beta,
                                          const lp::MilpOptions& opts = {});

}  // namespace qdecomp
