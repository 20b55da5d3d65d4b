#include "qdecomp/maxcut_exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qdecomp/cycle_relaxation.hpp"
#include "qdecomp/linprog.hpp"

namespace qdecomp {

namespace {

// Gray-code enumeration with incremental weight updates; vertex 0 fixed to
// side 0 by cut symmetry.
CutSolution brute_force_component(const MaxCutInstance& g) {
    const int n = g.n_vertices;
    auto adj = g.adjacency();
    std::vector<int> side(n, 0);
    double weight = 0.0;
    CutSolution best{side, 0.0};

    const std::uint64_t count = n >= 1 ? (1ull << (n - 1)) : 1;
    for (std::uint64_t m = 1; m < count; ++m) {
        int v = std::countr_zero(m) + 1;  // vertex to flip (vertex 0 stays put)
        for (auto [t, w] : adj[v]) weight += side[t] == side[v] ? w : -w;
        side[v] ^= 1;
        if (weight > best.weight + 1e-15) {
            best.weight = weight;
            best.side = side;
        }
    }
    best.weight = cut_weight(g, best.side);  // recompute to shed drift
    return best;
}

// Branch and bound on edge binaries bounded by the cycle relaxation; odd-cycle
// rows are generated lazily until the integer optimum is a valid cut.
CutSolution branch_and_cut_component(const MaxCutInstance& g) {
    lp::LinearModel model;
    for (std::size_t e = 0; e < g.edges.size(); ++e) model.add_variable(0.0, 1.0, true);
    std::vector<double> obj(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) obj[e] = g.edges[e].w;
    model.set_objective(lp::Sense::Maximize, obj);

    while (true) {
        lp::LpSolution sol = solve_milp(model);
        if (sol.status != lp::SolveStatus::Optimal)
            throw std::runtime_error("maxcut_exact: integer solve failed");
        std::vector<double> x(g.edges.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) x[e] = std::round(sol.values[e]);
        auto cuts = separate_odd_cycles(g, x, 50, 1e-9);
        if (cuts.empty()) {
            // Integral, cycle-consistent point: read sides off a BFS.
            std::vector<int> side(g.n_vertices, -1);
            auto adj_e = std::vector<std::vector<std::pair<int, int>>>(g.n_vertices);
            for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
                adj_e[g.edges[e].u].push_back({g.edges[e].v, e});
                adj_e[g.edges[e].v].push_back({g.edges[e].u, e});
            }
            for (int s = 0; s < g.n_vertices; ++s) {
                if (side[s] >= 0) continue;
                side[s] = 0;
                std::vector<int> stack{s};
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (auto [t, e] : adj_e[v]) {
                        int want = side[v] ^ static_cast<int>(x[e]);
                        if (side[t] < 0) {
                            side[t] = want;
                            stack.push_back(t);
                        }
                    }
                }
            }
            return {side, cut_weight(g, side)};
        }
        for (const auto& c : cuts) {
            std::vector<lp::Term> terms;
            for (std::size_t k = 0; k < c.cycle_edges.size(); ++k)
                terms.push_back({c.cycle_edges[k], c.in_odd_set[k] ? 1.0 : -1.0});
            model.add_constraint(std::move(terms), lp::Relation::LessEqual,
                                 c.odd_set_size() - 1.0);
        }
    }
}

MaxCutInstance induced_subgraph(const MaxCutInstance& g, const std::vector<int>& verts,
                                std::vector<int>& back_map) {
    std::vector<int> fwd(g.n_vertices, -1);
    back_map = verts;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) fwd[verts[i]] = i;
    MaxCutInstance sub;
    sub.n_vertices = static_cast<int>(verts.size());
    for (const auto& e : g.edges)
        if (fwd[e.u] >= 0 && fwd[e.v] >= 0) sub.add_edge(fwd[e.u], fwd[e.v], e.w);
    return sub;
}

}  // namespace

CutSolution maxcut_exact(const MaxCutInstance& g, const MaxCutExactOptions& opts) {
    g.validate();
    CutSolution out;
    out.side.assign(g.n_vertices, 0);
    for (const auto& comp : g.components()) {
        std::vector<int> back;
        MaxCutInstance sub = induced_subgraph(g, comp, back);
        CutSolution local;
        if (sub.n_vertices <= opts.brute_force_cap)
            local = brute_force_component(sub);
        else if (sub.n_vertices <= opts.size_cap)
            local = branch_and_cut_component(sub);
        else
            throw std::invalid_argument("maxcut_exact: instance above configured size cap");
        for (int i = 0; i < sub.n_vertices; ++i) out.side[back[i]] = local.side[i];
    }
    out.weight = cut_weight(g, out.side);
    return out;
}

}  // namespace qdecomp
