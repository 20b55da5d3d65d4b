#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qdecomp/qaoa.hpp"
#include "qdecomp/rng.hpp"
#include "qdecomp/statevector.hpp"

using namespace qdecomp;

namespace {

using CVec = std::vector<Complex>;
using CMat = std::vector<CVec>;

// Dense-unitary oracle: every gate becomes a full 2^n x 2^n matrix built
// entrywise from the bit convention, applied by explicit matrix-vector
// products. Shares no code with the simulator's in-place updates.
CMat full_matrix(const CircuitOp& op, int n) {
    const std::size_t dim = std::size_t{1} << n;
    CMat m(dim, CVec(dim, Complex{0.0, 0.0}));
    if (const auto* g = std::get_if<GateZZ>(&op)) {
        for (std::size_t s = 0; s < dim; ++s) {
            int za = (s >> g->a) & 1 ? -1 : 1;
            int zb = (s >> g->b) & 1 ? -1 : 1;
            m[s][s] = std::polar(1.0, -g->theta / 2.0 * za * zb);
        }
        return m;
    }
    Complex u[2][2];
    int target = -1;
    if (const auto* g = std::get_if<GateRX>(&op)) {
        double c = std::cos(g->theta / 2.0), s = std::sin(g->theta / 2.0);
        u[0][0] = c;
        u[0][1] = Complex(0.0, -s);
        u[1][0] = Complex(0.0, -s);
        u[1][1] = c;
        target = g->target;
    } else if (const auto* g = std::get_if<GateBasisRotation>(&op)) {
        const double r = 1.0 / std::sqrt(2.0);
        switch (g->basis) {
            case PauliBasis::Z:
                u[0][0] = 1.0; u[0][1] = 0.0; u[1][0] = 0.0; u[1][1] = 1.0;
                break;
            case PauliBasis::X:
                u[0][0] = r; u[0][1] = r; u[1][0] = r; u[1][1] = -r;
                break;
            case PauliBasis::Y:
                u[0][0] = r; u[0][1] = Complex(0.0, -r);
                u[1][0] = r; u[1][1] = Complex(0.0, r);
                break;
        }
        target = g->target;
    } else {
        throw std::logic_error("oracle: unsupported op");
    }
    for (std::size_t row = 0; row < dim; ++row)
        for (std::size_t col = 0; col < dim; ++col) {
            if ((row & ~(std::size_t{1} << target)) != (col & ~(std::size_t{1} << target)))
                continue;
            m[row][col] = u[(row >> target) & 1][(col >> target) & 1];
        }
    return m;
}

Distribution oracle_simulate(const Circuit& c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    CVec state(dim, Complex{0.0, 0.0});
    if (c.init.empty()) {
        state[0] = 1.0;
    } else {
        for (std::size_t s = 0; s < dim; ++s) {
            Complex a{1.0, 0.0};
            for (int q = 0; q < c.n_qubits; ++q)
                a *= (s >> q) & 1 ? c.init[q].amp1 : c.init[q].amp0;
            state[s] = a;
        }
    }
    for (const auto& op : c.ops) {
        if (std::holds_alternative<OpMeasure>(op)) continue;  // final readout only
        CMat m = full_matrix(op, c.n_qubits);
        CVec next(dim, Complex{0.0, 0.0});
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t col = 0; col < dim; ++col) next[r] += m[r][col] * state[col];
        state = std::move(next);
    }
    Distribution d;
    d.n_bits = c.n_qubits;
    d.p.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) d.p[s] = std::norm(state[s]);
    return d;
}

MaxCutInstance random_graph(int n, double density, Rng& rng) {
    MaxCutInstance g;
    g.n_vertices = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng.uniform() > density) continue;
            double w = rng.uniform(-1.5, 1.5);
            if (std::abs(w) < 0.05) w = 0.05;
            g.add_edge(u, v, w);
        }
    return g;
}

}  // namespace

TEST_CASE("empty circuit measures the initial state") {
    Circuit c;
    c.n_qubits = 2;
    c.n_slots = 2;
    c.measure(0, 0);
    c.measure(1, 1);
    Distribution d = simulate(c);
    CHECK(d.p[0] == doctest::Approx(1.0));
    CHECK(d.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("plus init gives the uniform distribution") {
    Circuit c;
    c.n_qubits = 3;
    c.n_slots = 3;
    c.set_plus_init();
    for (int q = 0; q < 3; ++q) c.measure(q, q);
    Distribution d = simulate(c);
    for (double v : d.p) CHECK(v == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("simulator matches the dense oracle on random QAOA circuits") {
    Rng rng(500);
    for (int trial = 0; trial < 8; ++trial) {
        MaxCutInstance g = random_graph(5, 0.6, rng);
        QaoaParams params{{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                           rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)}};
        Circuit c = build_qaoa_circuit(g, params);
        Distribution fast = simulate(c);
        Distribution slow = oracle_simulate(c);
        REQUIRE(fast.p.size() == slow.p.size());
        double max_dev = 0.0;
        for (std::size_t s = 0; s < fast.p.size(); ++s)
            max_dev = std::max(max_dev, std::abs(fast.p[s] - slow.p[s]));
        CHECK(max_dev < 1e-10);
        CHECK(fast.sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("basis rotations agree with the oracle") {
    Rng rng(501);
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y}) {
        Circuit c;
        c.n_qubits = 3;
        c.n_slots = 3;
        c.set_plus_init();
        c.zz(0, 1, rng.uniform(-2.0, 2.0));
        c.basis_rotation(1, b);
        c.rx(2, rng.uniform(-2.0, 2.0));
        for (int q = 0; q < 3; ++q) c.measure(q, q);
        Distribution fast = simulate(c);
        Distribution slow = oracle_simulate(c);
        for (std::size_t s = 0; s < fast.p.size(); ++s)
            CHECK(fast.p[s] == doctest::Approx(slow.p[s]).epsilon(1e-10));
    }
}

TEST_CASE("simulate_branch on |+> forced to 0") {
    Circuit c;
    c.n_qubits = 1;
    c.n_slots = 1;
    c.set_plus_init();
    c.measure(0, 0);
    BranchResult b = simulate_branch(c, {{0, 0}});
    CHECK(b.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.conditional.n_bits == 0);
    CHECK(b.conditional.p[0] == doctest::Approx(1.0));
}

TEST_CASE("forcing both branches reproduces simulate") {
    Rng rng(502);
    MaxCutInstance g = random_graph(4, 0.7, rng);
    QaoaParams params{{0.7, 0.3, -0.4, 0.9}};
    Circuit c = build_qaoa_circuit(g, params);
    // Insert a mid-circuit measurement + reset on qubit 0 halfway through.
    Circuit mid;
    mid.n_qubits = 4;
    mid.n_slots = 5;
    mid.set_plus_init();
    std::size_t half = c.ops.size() / 2;
    for (std::size_t i = 0; i < half; ++i) mid.ops.push_back(c.ops[i]);
    mid.measure(0, 4);
    mid.reset(0, basis_eigenstate(PauliBasis::X, 0));
    for (std::size_t i = half; i < c.ops.size(); ++i) mid.ops.push_back(c.ops[i]);

    Distribution full = simulate(mid);
    CHECK(full.sum() == doctest::Approx(1.0).epsilon(1e-10));

    double prob_total = 0.0;
    std::vector<double> recombined(1 << 4, 0.0);
    for (int xh = 0; xh < 2; ++xh) {
        BranchResult b = simulate_branch(mid, {{4, xh}});
        prob_total += b.probability;
        for (std::size_t s = 0; s < b.conditional.p.size(); ++s)
            recombined[s] += b.probability * b.conditional.p[s];
    }
    CHECK(prob_total == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t s = 0; s < recombined.size(); ++s) {
        double marg = full.p[s] + full.p[s | (1u << 4)];
        CHECK(recombined[s] == doctest::Approx(marg).epsilon(1e-10));
    }
}

TEST_CASE("reset equals measure-then-reprepare marginalized") {
    // Reset on an entangled qubit must behave like discarding a measurement.
    Circuit with_measure;
    with_measure.n_qubits = 2;
    with_measure.n_slots = 3;
    with_measure.set_plus_init();
    with_measure.zz(0, 1, std::numbers::pi / 2);
    with_measure.measure(0, 2);
    with_measure.reset(0, basis_eigenstate(PauliBasis::Y, 1));
    with_measure.rx(0, 0.8);
    with_measure.rx(1, -0.4);
    with_measure.measure(0, 0);
    with_measure.measure(1, 1);

    Circuit bare = with_measure;
    bare.ops.erase(bare.ops.begin() + 1);  // drop the explicit measurement
    bare.n_slots = 2;
    // Re-target the final measurement slots (unchanged indices still valid).

    Distribution a = simulate(with_measure);
    Distribution b = simulate(bare);
    for (std::size_t s = 0; s < b.p.size(); ++s) {
        double marg = a.p[s] + a.p[s | (1u << 2)];
        CHECK(marg == doctest::Approx(b.p[s]).epsilon(1e-10));
    }
}

TEST_CASE("edge order within a layer does not matter") {
    Rng rng(503);
    MaxCutInstance g = random_graph(5, 0.8, rng);
    QaoaParams params{{1.1, 0.4, -0.6, 0.2}};
    Distribution base = simulate(build_qaoa_circuit(g, params));
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
        for (std::size_t k = order.size(); k > 1; --k)
            std::swap(order[k - 1], order[rng.below(k)]);
        Distribution permuted = simulate(build_qaoa_circuit(g, params, order));
        for (std::size_t s = 0; s < base.p.size(); ++s)
            CHECK(std::abs(base.p[s] - permuted.p[s]) < 1e-12);
    }
}

TEST_CASE("single-edge closed form") {
    // <f>(gamma, beta) = w/2 (1 - sin(gamma w) sin(4 beta)) for one edge of
    // weight w under the project conventions; frozen against the dense oracle.
    MaxCutInstance g;
    g.n_vertices = 2;
    g.add_edge(0, 1, 1.7);
    const double w = 1.7;
    for (double gamma : {0.0, 0.3, 1.1, -0.8}) {
        for (double beta : {0.0, 0.2, 0.9, -1.3}) {
            QaoaParams p{{gamma, beta}};
            Circuit c = build_qaoa_circuit(g, p);
            double from_sim = expectation_f(g, simulate(c));
            double from_oracle = expectation_f(g, oracle_simulate(c));
            double closed = w / 2.0 * (1.0 - std::sin(gamma * w) * std::sin(4.0 * beta));
            CHECK(from_sim == doctest::Approx(from_oracle).epsilon(1e-10));
            CHECK(from_sim == doctest::Approx(closed).epsilon(1e-9));
        }
    }
}

TEST_CASE("expectation under uniform and point-mass distributions") {
    Rng rng(504);
    MaxCutInstance g = random_graph(5, 0.7, rng);
    QaoaParams zero{{0.0, 0.0}};
    double at_zero = expectation_f(g, simulate(build_qaoa_circuit(g, zero)));
    CHECK(at_zero == doctest::Approx(g.total_weight() / 2.0).epsilon(1e-10));

    Distribution point;
    point.n_bits = 5;
    point.p.assign(32, 0.0);
    point.p[5] = 1.0;  // sides 1,0,1,0,0
    std::vector<int> side{1, 0, 1, 0, 0};
    CHECK(expectation_f(g, point) == doctest::Approx(cut_weight(g, side)).epsilon(1e-12));
}

TEST_CASE("training reaches the single-edge analytic optimum") {
    MaxCutInstance g;
    g.n_vertices = 2;
    g.add_edge(0, 1, 1.3);

    // Grid oracle over (gamma, beta).
    double grid_best = 0.0;
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) {
            double gamma = -std::numbers::pi + i * (2 * std::numbers::pi / 59);
            double beta = -std::numbers::pi + j * (2 * std::numbers::pi / 59);
            QaoaParams p{{gamma, beta}};
            grid_best = std::max(grid_best, expectation_f(g, simulate(build_qaoa_circuit(g, p))));
        }
    CHECK(grid_best >= 0.98 * 1.3);

    TrainConfig cfg;
    cfg.restarts = 6;
    cfg.max_evals_per_restart = 150;
    cfg.seed = 9;
    TrainResult r = train_qaoa(g, 1, cfg);
    CHECK(r.expectation >= 0.99 * 1.3);
    CHECK(r.expectation >= grid_best - 0.01);
}

TEST_CASE("two-layer training dominates the best single-layer grid point") {
    MaxCutInstance tri;
    tri.n_vertices = 3;
    tri.add_edge(0, 1, 1.0);
    tri.add_edge(1, 2, 1.0);
    tri.add_edge(0, 2, 1.0);

    double p1_grid = 0.0;
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            double gamma = -std::numbers::pi + i * (2 * std::numbers::pi / 39);
            double beta = -std::numbers::pi + j * (2 * std::numbers::pi / 39);
            QaoaParams p{{gamma, beta}};
            p1_grid = std::max(p1_grid, expectation_f(tri, simulate(build_qaoa_circuit(tri, p))));
        }

    TrainConfig cfg;
    cfg.restarts = 8;
    cfg.max_evals_per_restart = 250;
    cfg.seed = 4;
    TrainResult r = train_qaoa(tri, 2, cfg);
    CHECK(r.expectation >= p1_grid - 1e-6);
}

TEST_CASE("training at the zero start evaluates to half the total weight") {
    Rng rng(505);
    MaxCutInstance g = random_graph(4, 0.8, rng);
    QaoaParams zero{{0.0, 0.0, 0.0, 0.0}};
    double val = expectation_f(g, simulate(build_qaoa_circuit(g, zero)));
    CHECK(val == doctest::Approx(g.total_weight() / 2.0).epsilon(1e-10));
}

TEST_CASE("simulator cap and circuit validation") {
    Circuit c;
    c.n_qubits = 25;
    c.n_slots = 0;
    CHECK_THROWS_AS(simulate(c), std::invalid_argument);

    Circuit bad;
    bad.n_qubits = 2;
    bad.n_slots = 1;
    bad.measure(0, 3);
    CHECK_THROWS_AS(simulate(bad), std::invalid_argument);
}
