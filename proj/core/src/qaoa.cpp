#include "qdecomp/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qdecomp/nelder_mead.hpp"
#include "qdecomp/rng.hpp"

namespace qdecomp {

Circuit build_qaoa_circuit(const MaxCutInstance& g, const QaoaParams& params,
                           const std::vector<int>& edge_order) {
    if (params.values.size() % 2 != 0)
        throw std::invalid_argument("build_qaoa_circuit: params must pair (gamma, beta)");
    {
        std::vector<int> check = edge_order;
        std::sort(check.begin(), check.end());
        for (std::size_t i = 0; i < check.size(); ++i)
            if (check[i] != static_cast<int>(i) || check.size() != g.edges.size())
                throw std::invalid_argument(
                    "build_qaoa_circuit: edge_order must permute the edge list");
    }

    Circuit c;
    c.n_qubits = g.n_vertices;
    c.n_slots = g.n_vertices;
    c.set_plus_init();
    for (int layer = 0; layer < params.layers(); ++layer) {
        for (int e : edge_order)
            c.zz(g.edges[e].u, g.edges[e].v, params.gamma(layer) * g.edges[e].w);
        for (int q = 0; q < g.n_vertices; ++q) c.rx(q, 2.0 * params.beta(layer));
    }
    for (int q = 0; q < g.n_vertices; ++q) c.measure(q, q);
    return c;
}

Circuit build_qaoa_circuit(const MaxCutInstance& g, const QaoaParams& params) {
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    return build_qaoa_circuit(g, params, order);
}

double expectation_f(const MaxCutInstance& g, const Distribution& dist) {
    if (dist.n_bits != g.n_vertices)
        throw std::invalid_argument("expectation_f: distribution size mismatch");
    long double acc = 0.0L;
    for (std::size_t s = 0; s < dist.p.size(); ++s) {
        if (dist.p[s] == 0.0) continue;
        double f = 0.0;
        for (const auto& e : g.edges)
            if (((s >> e.u) & 1) != ((s >> e.v) & 1)) f += e.w;
        acc += static_cast<long double>(dist.p[s]) * f;
    }
    return static_cast<double>(acc);
}

TrainResult train_qaoa(const MaxCutInstance& g, int layers, const TrainConfig& cfg) {
    g.validate();
    if (layers < 1) throw std::invalid_argument("train_qaoa: need at least one layer");

    auto objective = [&](const std::vector<double>& v) {
        QaoaParams p{v};
        return -expectation_f(g, simulate(build_qaoa_circuit(g, p)));
    };

    Rng rng = Rng(cfg.seed).substream("optimizer");
    TrainResult best;
    best.expectation = -std::numeric_limits<double>::infinity();

    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<double> x0(2 * layers);
        for (double& v : x0) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
        NelderMeadResult nm = nelder_mead(objective, std::move(x0), 0.4,
                                          cfg.max_evals_per_restart);
        best.evaluations += nm.evaluations;
        if (-nm.value > best.expectation) {
            best.expectation = -nm.value;
            best.params = QaoaParams{nm.x};
        }
    }
    return best;
}

}  // namespace qdecomp
