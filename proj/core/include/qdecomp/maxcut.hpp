#pragma once

#include <optional>
#include <vector>

#include "qdecomp/qubo.hpp"

namespace qdecomp {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

/// Weighted undirected graph plus the scalar offset accumulated by the
/// QUBO transform and by shrinking. Stored edges always have nonzero weight
/// and normalized endpoints u < v.
struct MaxCutInstance {
    int n_vertices = 0;
    std::vector<WeightedEdge> edges;
    double offset = 0.0;
    std::optional<int> root_vertex;  // vertex 0 of a QUBO-derived instance

    void add_edge(int u, int v, double w);
    void validate() const;  // no self-loops, no duplicate pairs, nonzero weights
    std::vector<std::vector<std::pair<int, double>>> adjacency() const;
    double total_weight() const;
    /// Connected components as sorted vertex lists, ordered by smallest member.
    std::vector<std::vector<int>> components() const;
};

/// Vertex bipartition; side[v] == 1 means v is in W.
struct CutSolution {
    std::vector<int> side;
    double weight = 0.0;
};

double cut_weight(const MaxCutInstance& g, const std::vector<int>& side);

/// Equivalent MaxCut instance on n+1 vertices (vertex 0 is the root).
/// Every cut of weight M decodes to an assignment of QUBO value -M/2 + offset.
MaxCutInstance qubo_to_maxcut(const QuboProblem& q);

/// x_i = 1 iff vertex i lies on the same side as the root. Throws
/// std::invalid_argument when the instance has no root vertex.
std::vector<int> cut_to_assignment(const CutSolution& cut, const MaxCutInstance& inst);

}  // namespace qdecomp
