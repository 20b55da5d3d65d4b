#include "qdecomp/maxcut.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qdecomp {

void MaxCutInstance::add_edge(int u, int v, double w) {
    if (u == v) throw std::invalid_argument("maxcut: self-loop");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_vertices) throw std::invalid_argument("maxcut: vertex out of range");
    if (w == 0.0) return;  // zero-weight edges are never stored
    edges.push_back({u, v, w});
}

void MaxCutInstance::validate() const {
    if (n_vertices <= 0) throw std::invalid_argument("maxcut: empty vertex set");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("maxcut: self-loop");
        if (e.u < 0 || e.v < 0 || e.u >= n_vertices || e.v >= n_vertices)
            throw std::invalid_argument("maxcut: vertex out of range");
        if (e.w == 0.0 || !std::isfinite(e.w))
            throw std::invalid_argument("maxcut: edge weight must be nonzero and finite");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) throw std::invalid_argument("maxcut: duplicate edge");
    }
    if (root_vertex && (*root_vertex < 0 || *root_vertex >= n_vertices))
        throw std::invalid_argument("maxcut: root vertex out of range");
}

std::vector<std::vector<std::pair<int, double>>> MaxCutInstance::adjacency() const {
    std::vector<std::vector<std::pair<int, double>>> adj(n_vertices);
    for (const auto& e : edges) {
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }
    return adj;
}

double MaxCutInstance::total_weight() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.w;
    return s;
}

std::vector<std::vector<int>> MaxCutInstance::components() const {
    std::vector<int> comp(n_vertices, -1);
    auto adj = adjacency();
    int n_comp = 0;
    for (int s = 0; s < n_vertices; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = n_comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [t, w] : adj[v]) {
                if (comp[t] < 0) {
                    comp[t] = n_comp;
                    stack.push_back(t);
                }
            }
        }
        ++n_comp;
    }
    std::vector<std::vector<int>> out(n_comp);
    for (int v = 0; v < n_vertices; ++v) out[comp[v]].push_back(v);
    return out;
}

double cut_weight(const MaxCutInstance& g, const std::vector<int>& side) {
    if (side.size() != static_cast<std::size_t>(g.n_vertices))
        throw std::invalid_argument("cut_weight: side vector size mismatch");
    double w = 0.0;
    for (const auto& e : g.edges)
        if (side[e.u] != side[e.v]) w += e.w;
    return w;
}

MaxCutInstance qubo_to_maxcut(const QuboProblem& q) {
    q.validate();
    const int n = q.n_vars;
    MaxCutInstance g;
    g.n_vertices = n + 1;
    g.root_vertex = 0;

    // w_{ij} = q_ij + q_ji for i, j >= 1; the root edge weight sums the full
    // row and column of q including the diagonal term (twice).
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) g.add_edge(i + 1, j + 1, q.q(i, j) + q.q(j, i));
        double w0 = 0.0;
        for (int j = 0; j < n; ++j) w0 += q.q(i, j) + q.q(j, i);
        g.add_edge(0, i + 1, w0);
    }

    // Constant making qubo_value = -M/2 + offset for every cut of weight M.
    double c = 0.0;
    for (int i = 0; i < n; ++i) {
        c += q.q(i, i);
        for (int j = i + 1; j < n; ++j) c += q.q(i, j) + q.q(j, i);
    }
    g.offset = c;
    return g;
}

std::vector<int> cut_to_assignment(const CutSolution& cut, const MaxCutInstance& inst) {
    if (!inst.root_vertex)
        throw std::invalid_argument("cut_to_assignment: not a QUBO-derived instance (no root vertex)");
    if (cut.side.size() != static_cast<std::size_t>(inst.n_vertices))
        throw std::invalid_argument("cut_to_assignment: side vector size mismatch");
    const int root = *inst.root_vertex;
    std::vector<int> x;
    x.reserve(inst.n_vertices - 1);
    for (int v = 0; v < inst.n_vertices; ++v) {
        if (v == root) continue;
        x.push_back(cut.side[v] == cut.side[root] ? 1 : 0);
    }
    return x;
}

}  // namespace qdecomp
