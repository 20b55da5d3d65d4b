#pragma once

#include <vector>

#include "qdecomp/maxcut.hpp"
#include "qdecomp/separator.hpp"

namespace qdecomp {

/// One edge contraction: vertex `removed` is identified with `kept`
/// (sigma = +1 for equal sides, -1 for opposite sides). After contraction the
/// removed index disappears and every vertex above it shifts down by one.
/// The record stores everything needed to revert exactly.
struct ContractionRecord {
    int removed = 0;
    int kept = 0;
    int sigma = +1;
    double offset_delta = 0.0;
    int n_before = 0;
    std::vector<WeightedEdge> edges_before;  // edges incident to removed or kept, old ids
    std::vector<WeightedEdge> edges_after;   // edges incident to kept, new ids
    bool root_cleared = false;               // root vertex was absorbed into the super-vertex
};

/// Ordered contraction log plus the original-vertex provenance map.
struct ShrinkStack {
    std::vector<ContractionRecord> records;
    std::vector<int> provenance;  // original vertex -> current super-vertex

    double total_offset_delta() const {
        double s = 0.0;
        for (const auto& r : records) s += r.offset_delta;
        return s;
    }
};

/// Contract u into v with sign sigma. Common-neighbor weights merge as
/// w'(t, v) = w(t, v) + sigma * w(t, u); the offset grows by the weight that
/// the fixing forces into every cut. Cuts of the result plus the offset delta
/// reproduce the optimal sigma-respecting cuts of the input.
std::pair<MaxCutInstance, ContractionRecord> contract_edge(const MaxCutInstance& g, int u, int v,
                                                           int sigma);

/// Undo one contraction; the exact inverse of contract_edge.
MaxCutInstance revert_contraction(const MaxCutInstance& g, const ContractionRecord& rec);

/// LP-guided choice: the separator edge whose relaxation value is closest to
/// an integer, sigma = +1 below 0.5 and -1 otherwise. Ties break toward the
/// lexicographically smallest (u, v).
struct FixingChoice {
    int u = 0;
    int v = 0;
    int sigma = +1;
    double relaxation_value = 0.0;
};
FixingChoice choose_fixing(const MaxCutInstance& g, const std::vector<std::pair<int, int>>& sep_edges);

/// Iteratively contract separator edges until a single super-vertex remains.
/// When the separator subgraph is disconnected, a virtual zero-weight edge
/// between the two lexicographically smallest cross-component vertices is
/// contracted with sigma = +1.
struct ShrinkOutcome {
    MaxCutInstance graph;
    ShrinkStack stack;
    int separator_vertex = 0;  // the surviving super-vertex
};
ShrinkOutcome shrink_separator_to_vertex(const MaxCutInstance& g, const SeparatorResult& sep,
                                         int target_cardinality = 1);

/// Map a cut of the shrunk graph back to the original vertex set by reverting
/// the contraction log; lifted weight = shrunk weight + total offset delta.
CutSolution lift_solution(const CutSolution& cut_shrunk, const ShrinkStack& stack);

}  // namespace qdecomp
