#include "qdecomp/cycle_relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace qdecomp {

namespace {

// Aux-graph vertex: 2v for layer 0, 2v+1 for layer 1. Traversing an edge in
// the odd set crosses layers (length 1 - x_e), staying costs x_e.
struct AuxArc {
    int to;
    int edge;     // index into g.edges
    bool marked;  // crosses layers
    double len;
};

std::vector<OddCycleInequality> simple_cycles_from_walk(
    std::vector<std::pair<int, bool>> walk_edges, std::vector<int> walk_vertices,
    const MaxCutInstance& g, const std::vector<double>& x) {
    // Split the closed walk at a repeated vertex and keep the odd half; the
    // lengths only shrink, so the surviving cycle is at least as violated.
    while (true) {
        std::map<int, int> first_pos;
        int rep_a = -1, rep_b = -1;
        for (int i = 0; i < static_cast<int>(walk_vertices.size()) - 1; ++i) {
            auto [it, fresh] = first_pos.emplace(walk_vertices[i], i);
            if (!fresh) {
                rep_a = it->second;
                rep_b = i;
                break;
            }
        }
        if (rep_a < 0) break;
        int odd_inner = 0;
        for (int i = rep_a; i < rep_b; ++i) odd_inner += walk_edges[i].second;
        if (odd_inner % 2 == 1) {
            walk_vertices = std::vector<int>(walk_vertices.begin() + rep_a,
                                             walk_vertices.begin() + rep_b + 1);
            walk_edges = std::vector<std::pair<int, bool>>(walk_edges.begin() + rep_a,
                                                           walk_edges.begin() + rep_b);
        } else {
            walk_vertices.erase(walk_vertices.begin() + rep_a, walk_vertices.begin() + rep_b);
            walk_edges.erase(walk_edges.begin() + rep_a, walk_edges.begin() + rep_b);
        }
    }

    OddCycleInequality ineq;
    double lhs = 0.0;
    int odd_count = 0;
    for (auto [e, marked] : walk_edges) {
        ineq.cycle_edges.push_back(e);
        ineq.in_odd_set.push_back(marked);
        if (marked) {
            lhs += x[e];
            ++odd_count;
        } else {
            lhs -= x[e];
        }
    }
    if (odd_count % 2 == 0) return {};  // defensive; should not happen
    ineq.violation = lhs - (odd_count - 1);
    if (ineq.violation <= 0.0) return {};
    return {std::move(ineq)};
}

}  // namespace

std::vector<OddCycleInequality> separate_odd_cycles(const MaxCutInstance& g,
                                                    const std::vector<double>& x, int max_cuts,
                                                    double tol) {
    if (x.size() != g.edges.size())
        throw std::invalid_argument("separate_odd_cycles: point size mismatch");

    const int n = g.n_vertices;
    std::vector<std::vector<AuxArc>> adj(2 * n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        double xv = std::clamp(x[e], 0.0, 1.0);
        for (int layer = 0; layer < 2; ++layer) {
            adj[2 * ed.u + layer].push_back({2 * ed.v + layer, e, false, xv});
            adj[2 * ed.v + layer].push_back({2 * ed.u + layer, e, false, xv});
            adj[2 * ed.u + layer].push_back({2 * ed.v + (1 - layer), e, true, 1.0 - xv});
            adj[2 * ed.v + layer].push_back({2 * ed.u + (1 - layer), e, true, 1.0 - xv});
        }
    }

    std::vector<OddCycleInequality> found;
    std::set<std::vector<int>> signatures;  // (edge, marked) pairs, sorted

    std::vector<double> dist(2 * n);
    std::vector<int> par_vertex(2 * n), par_edge(2 * n);
    std::vector<char> par_marked(2 * n);

    for (int s = 0; s < n; ++s) {
        // Dijkstra from s in layer 0; reaching s in layer 1 closes a walk
        // with an odd number of marked edges.
        std::fill(dist.begin(), dist.end(), lp::kInf);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[2 * s] = 0.0;
        par_vertex[2 * s] = -1;
        pq.push({0.0, 2 * s});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v] + 1e-15) continue;
            for (const auto& arc : adj[v]) {
                double nd = d + arc.len;
                if (nd < dist[arc.to] - 1e-15) {
                    dist[arc.to] = nd;
                    par_vertex[arc.to] = v;
                    par_edge[arc.to] = arc.edge;
                    par_marked[arc.to] = arc.marked;
                    pq.push({nd, arc.to});
                }
            }
        }
        if (dist[2 * s + 1] >= 1.0 - tol) continue;

        std::vector<std::pair<int, bool>> walk_edges;
        std::vector<int> walk_vertices;
        int cur = 2 * s + 1;
        walk_vertices.push_back(s);
        while (par_vertex[cur] >= 0) {
            walk_edges.push_back({par_edge[cur], static_cast<bool>(par_marked[cur])});
            cur = par_vertex[cur];
            walk_vertices.push_back(cur / 2);
        }
        std::reverse(walk_edges.begin(), walk_edges.end());
        std::reverse(walk_vertices.begin(), walk_vertices.end());

        for (auto& ineq : simple_cycles_from_walk(std::move(walk_edges), std::move(walk_vertices),
                                                  g, x)) {
            if (ineq.violation <= tol) continue;
            std::vector<int> sig;
            for (std::size_t k = 0; k < ineq.cycle_edges.size(); ++k)
                sig.push_back(2 * ineq.cycle_edges[k] + (ineq.in_odd_set[k] ? 1 : 0));
            std::sort(sig.begin(), sig.end());
            if (signatures.insert(sig).second) found.push_back(std::move(ineq));
        }
    }

    std::stable_sort(found.begin(), found.end(),
                     [](const OddCycleInequality& a, const OddCycleInequality& b) {
                         return a.violation > b.violation;
                     });
    if (static_cast<int>(found.size()) > max_cuts) found.resize(max_cuts);
    return found;
}

FractionalCut solve_cycle_relaxation(const MaxCutInstance& g) {
    g.validate();
    lp::LinearModel model;
    for (std::size_t e = 0; e < g.edges.size(); ++e) model.add_variable(0.0, 1.0);
    std::vector<double> obj(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) obj[e] = g.edges[e].w;
    model.set_objective(lp::Sense::Maximize, obj);

    std::set<std::vector<int>> added;
    lp::IncrementalLp solver(model);
    FractionalCut frac;
    while (true) {
        lp::LpSolution sol = solver.solve();
        if (sol.status != lp::SolveStatus::Optimal)
            throw std::runtime_error("cycle relaxation: LP solve failed");
        frac.edge_values = sol.values;
        frac.objective = sol.objective;

        auto cuts = separate_odd_cycles(g, frac.edge_values);
        std::vector<const OddCycleInequality*> fresh;
        for (const auto& c : cuts) {
            std::vector<int> sig;
            for (std::size_t k = 0; k < c.cycle_edges.size(); ++k)
                sig.push_back(2 * c.cycle_edges[k] + (c.in_odd_set[k] ? 1 : 0));
            std::sort(sig.begin(), sig.end());
            if (added.insert(sig).second) fresh.push_back(&c);
        }
        if (fresh.empty()) break;
        for (const auto* c : fresh) {
            std::vector<lp::Term> terms;
            for (std::size_t k = 0; k < c->cycle_edges.size(); ++k)
                terms.push_back({c->cycle_edges[k], c->in_odd_set[k] ? 1.0 : -1.0});
            solver.add_constraint(std::move(terms), lp::Relation::LessEqual,
                                  c->odd_set_size() - 1.0);
        }
    }
    return frac;
}

}  // namespace qdecomp
