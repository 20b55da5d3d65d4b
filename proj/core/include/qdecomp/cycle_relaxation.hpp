#pragma once

#include <vector>

#include "qdecomp/linprog.hpp"
#include "qdecomp/maxcut.hpp"

namespace qdecomp {

/// Fractional edge-variable point of the cycle relaxation. Values are indexed
/// like MaxCutInstance::edges.
struct FractionalCut {
    std::vector<double> edge_values;
    double objective = 0.0;
};

/// Odd-cycle inequality: sum_{e in odd_set} x_e - sum_{e in rest} x_e <= |odd_set| - 1.
/// Edges are stored as indices into the instance's edge list.
struct OddCycleInequality {
    std::vector<int> cycle_edges;       // all edges of the cycle
    std::vector<bool> in_odd_set;       // parallel to cycle_edges
    double violation = 0.0;             // by the point that produced it

    int odd_set_size() const {
        int k = 0;
        for (bool b : in_odd_set) k += b;
        return k;
    }
};

/// Most-violated odd-cycle inequalities found by shortest-path search in the
/// two-layer auxiliary graph with edge lengths {x_e, 1-x_e}. Returns at most
/// max_cuts inequalities violated by more than tol, sorted by violation.
std::vector<OddCycleInequality> separate_odd_cycles(const MaxCutInstance& g,
                                                    const std::vector<double>& x,
                                                    int max_cuts = 50, double tol = lp::kFeasTol);

/// Cutting-plane optimum of the cycle relaxation: solve with bounds only,
/// add violated odd-cycle inequalities, repeat until a final exact separation
/// pass certifies the point.
FractionalCut solve_cycle_relaxation(const MaxCutInstance& g);

}  // namespace qdecomp
