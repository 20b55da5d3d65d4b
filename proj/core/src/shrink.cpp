#include "qdecomp/shrink.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "qdecomp/cycle_relaxation.hpp"

namespace qdecomp {

namespace {

int shifted(int v, int removed) { return v > removed ? v - 1 : v; }
int unshifted(int v, int removed) { return v >= removed ? v + 1 : v; }

}  // namespace

std::pair<MaxCutInstance, ContractionRecord> contract_edge(const MaxCutInstance& g, int u, int v,
                                                           int sigma) {
    if (u == v) throw std::invalid_argument("contract_edge: u and v must differ");
    if (u < 0 || v < 0 || u >= g.n_vertices || v >= g.n_vertices)
        throw std::invalid_argument("contract_edge: vertex out of range");
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("contract_edge: sigma must be +-1");

    ContractionRecord rec;
    rec.removed = u;
    rec.kept = v;
    rec.sigma = sigma;
    rec.n_before = g.n_vertices;

    // Merged neighbor weights; the uv edge itself only contributes offset.
    std::map<int, double> merged;  // neighbor (old id, != u, v) -> weight
    double w_uv = 0.0;
    for (const auto& e : g.edges) {
        bool at_u = e.u == u || e.v == u;
        bool at_v = e.u == v || e.v == v;
        if (!at_u && !at_v) continue;
        rec.edges_before.push_back(e);
        if (at_u && at_v) {
            w_uv += e.w;
            continue;
        }
        int t = at_u ? (e.u == u ? e.v : e.u) : (e.u == v ? e.v : e.u);
        merged[t] += at_u ? sigma * e.w : e.w;
        if (at_u && sigma == -1) rec.offset_delta += e.w;
    }
    if (sigma == -1) rec.offset_delta += w_uv;

    MaxCutInstance out;
    out.n_vertices = g.n_vertices - 1;
    out.offset = g.offset + rec.offset_delta;
    if (g.root_vertex) {
        if (*g.root_vertex == u)
            rec.root_cleared = true;  // the root id is gone; super-vertex keeps no root role
        else
            out.root_vertex = shifted(*g.root_vertex, u);
    }

    for (const auto& e : g.edges) {
        if (e.u == u || e.v == u || e.u == v || e.v == v) continue;
        out.add_edge(shifted(e.u, u), shifted(e.v, u), e.w);
    }
    int v_new = shifted(v, u);
    for (const auto& [t, w] : merged) {
        if (w == 0.0) continue;
        int e_new = shifted(t, u);
        out.add_edge(std::min(e_new, v_new), std::max(e_new, v_new), w);
        rec.edges_after.push_back({std::min(e_new, v_new), std::max(e_new, v_new), w});
    }
    return {std::move(out), std::move(rec)};
}

MaxCutInstance revert_contraction(const MaxCutInstance& g, const ContractionRecord& rec) {
    if (g.n_vertices != rec.n_before - 1)
        throw std::invalid_argument("revert_contraction: graph and record disagree");

    std::set<std::pair<int, int>> to_drop;
    for (const auto& e : rec.edges_after) to_drop.insert({e.u, e.v});

    MaxCutInstance out;
    out.n_vertices = rec.n_before;
    out.offset = g.offset - rec.offset_delta;
    for (const auto& e : g.edges) {
        if (to_drop.count({e.u, e.v})) continue;
        out.add_edge(unshifted(e.u, rec.removed), unshifted(e.v, rec.removed), e.w);
    }
    for (const auto& e : rec.edges_before) out.add_edge(e.u, e.v, e.w);
    if (g.root_vertex)
        out.root_vertex = unshifted(*g.root_vertex, rec.removed);
    else if (rec.root_cleared)
        out.root_vertex = rec.removed;
    std::sort(out.edges.begin(), out.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    return out;
}

FixingChoice choose_fixing(const MaxCutInstance& g,
                           const std::vector<std::pair<int, int>>& sep_edges) {
    if (sep_edges.empty()) throw std::invalid_argument("choose_fixing: no separator edges");
    FractionalCut frac = solve_cycle_relaxation(g);

    std::map<std::pair<int, int>, double> value_of;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        value_of[{g.edges[e].u, g.edges[e].v}] = frac.edge_values[e];

    FixingChoice best;
    double best_score = 2.0;
    std::vector<std::pair<int, int>> sorted = sep_edges;
    for (auto& [a, b] : sorted)
        if (a > b) std::swap(a, b);
    std::sort(sorted.begin(), sorted.end());
    for (auto [a, b] : sorted) {
        auto it = value_of.find({a, b});
        if (it == value_of.end())
            throw std::invalid_argument("choose_fixing: separator edge not in graph");
        double x = it->second;
        double score = std::min(x, 1.0 - x);
        if (score < best_score - 1e-12) {
            best_score = score;
            best = {a, b, x < 0.5 ? +1 : -1, x};
        }
    }
    return best;
}

ShrinkOutcome shrink_separator_to_vertex(const MaxCutInstance& g, const SeparatorResult& sep,
                                         int target_cardinality) {
    g.validate();
    if (sep.separator.empty())
        throw std::invalid_argument("shrink_separator_to_vertex: empty separator");
    if (target_cardinality < 1)
        throw std::invalid_argument("shrink_separator_to_vertex: target must be >= 1");

    ShrinkOutcome out;
    out.graph = g;
    out.stack.provenance.resize(g.n_vertices);
    for (int v = 0; v < g.n_vertices; ++v) out.stack.provenance[v] = v;

    // Current images of the separator vertices (ids in the working graph).
    std::set<int> sep_now(sep.separator.begin(), sep.separator.end());

    while (static_cast<int>(sep_now.size()) > target_cardinality) {
        std::vector<std::pair<int, int>> intra;
        for (const auto& e : out.graph.edges)
            if (sep_now.count(e.u) && sep_now.count(e.v)) intra.push_back({e.u, e.v});

        int cu, cv, sigma;
        if (!intra.empty()) {
            FixingChoice fix = choose_fixing(out.graph, intra);
            cu = fix.u;
            cv = fix.v;
            sigma = fix.sigma;
        } else {
            // Disconnected separator subgraph: contract a virtual zero-weight
            // edge between the two smallest vertices of distinct components.
            std::vector<int> verts(sep_now.begin(), sep_now.end());
            auto adj = out.graph.adjacency();
            std::map<int, int> comp;
            int nc = 0;
            for (int s : verts) {
                if (comp.count(s)) continue;
                std::vector<int> stack{s};
                comp[s] = nc;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (auto [t, w] : adj[x])
                        if (sep_now.count(t) && !comp.count(t)) {
                            comp[t] = nc;
                            stack.push_back(t);
                        }
                }
                ++nc;
            }
            cu = verts[0];
            cv = -1;
            for (int t : verts)
                if (comp[t] != comp[cu]) {
                    cv = t;
                    break;
                }
            if (cv < 0) throw std::logic_error("shrink: separator components inconsistent");
            if (cu > cv) std::swap(cu, cv);
            sigma = +1;
        }

        // Remove the larger id so the surviving super-vertex keeps the
        // smaller one; the provenance map follows the relabeling.
        int removed = std::max(cu, cv);
        int kept = std::min(cu, cv);
        auto [shrunk, rec] = contract_edge(out.graph, removed, kept, sigma);
        out.graph = std::move(shrunk);
        out.stack.records.push_back(std::move(rec));

        std::set<int> next_sep;
        for (int s : sep_now) next_sep.insert(shifted(s == removed ? kept : s, removed));
        sep_now = std::move(next_sep);
        for (auto& p : out.stack.provenance) p = shifted(p == removed ? kept : p, removed);
    }

    out.separator_vertex = *sep_now.begin();
    return out;
}

CutSolution lift_solution(const CutSolution& cut_shrunk, const ShrinkStack& stack) {
    std::vector<int> side = cut_shrunk.side;
    for (auto it = stack.records.rbegin(); it != stack.records.rend(); ++it) {
        const auto& rec = *it;
        if (side.size() != static_cast<std::size_t>(rec.n_before) - 1)
            throw std::invalid_argument("lift_solution: stack does not match cut size");
        std::vector<int> prev(rec.n_before);
        for (int v = 0; v < rec.n_before; ++v) {
            if (v == rec.removed) continue;
            prev[v] = side[shifted(v, rec.removed)];
        }
        int kept_side = prev[rec.kept];
        prev[rec.removed] = rec.sigma == +1 ? kept_side : 1 - kept_side;
        side = std::move(prev);
    }
    CutSolution out;
    out.side = std::move(side);
    out.weight = cut_shrunk.weight + stack.total_offset_delta();
    return out;
}

}  // namespace qdecomp
