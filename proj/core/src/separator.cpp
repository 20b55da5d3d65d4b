#include "qdecomp/separator.hpp"

#include <stdexcept>

namespace qdecomp {

SeparatorResult balanced_vertex_separator(const MaxCutInstance& g, int beta,
                                          const lp::MilpOptions& opts) {
    g.validate();
    if (g.n_vertices < 3)
        throw std::invalid_argument("balanced_vertex_separator: need at least 3 vertices");
    if (beta < 0) throw std::invalid_argument("balanced_vertex_separator: beta must be >= 0");

    const int n = g.n_vertices;
    lp::LinearModel model;
    // x_v = v, y_v = n + v.
    for (int v = 0; v < n; ++v) model.add_variable(0.0, 1.0, true, "x" + std::to_string(v));
    for (int v = 0; v < n; ++v) model.add_variable(0.0, 1.0, true, "y" + std::to_string(v));

    std::vector<double> obj(2 * n, 1.0);
    model.set_objective(lp::Sense::Maximize, obj);

    for (const auto& e : g.edges) {
        model.add_constraint({{e.u, 1.0}, {n + e.v, 1.0}}, lp::Relation::LessEqual, 1.0);
        model.add_constraint({{e.v, 1.0}, {n + e.u, 1.0}}, lp::Relation::LessEqual, 1.0);
    }
    for (int v = 0; v < n; ++v)
        model.add_constraint({{v, 1.0}, {n + v, 1.0}}, lp::Relation::LessEqual, 1.0);

    std::vector<lp::Term> balance;
    for (int v = 0; v < n; ++v) {
        balance.push_back({v, 1.0});
        balance.push_back({n + v, -1.0});
    }
    model.add_constraint(balance, lp::Relation::LessEqual, beta);
    for (auto& t : balance) t.coeff = -t.coeff;
    model.add_constraint(std::move(balance), lp::Relation::LessEqual, beta);

    lp::LpSolution sol = solve_milp(model, opts);
    SeparatorResult res;
    res.status = sol.status;
    res.nodes_explored = sol.nodes_explored;
    if (sol.status != lp::SolveStatus::Optimal) return res;

    for (int v = 0; v < n; ++v) {
        if (sol.values[v] > 0.5)
            res.partition_a.push_back(v);
        else if (sol.values[n + v] > 0.5)
            res.partition_b.push_back(v);
        else
            res.separator.push_back(v);
    }
    return res;
}

}  // namespace qdecomp
