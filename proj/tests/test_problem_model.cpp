#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qdecomp/maxcut.hpp"
#include "qdecomp/qubo.hpp"
#include "qdecomp/rng.hpp"
#include "qdecomp/serialize.hpp"
#include "qdecomp/tsp.hpp"

using namespace qdecomp;

namespace {

// All-permutations tour oracle, no symmetry tricks.
Tour naive_best_tour(const TspInstance& tsp) {
    std::vector<int> rest(tsp.n_cities - 1);
    std::iota(rest.begin(), rest.end(), 1);
    Tour best;
    best.length = std::numeric_limits<double>::infinity();
    do {
        std::vector<int> order{0};
        order.insert(order.end(), rest.begin(), rest.end());
        double len = tour_length(tsp, order);
        if (len < best.length) best = {order, len};
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

QuboProblem random_qubo(int n, Rng& rng) {
    QuboProblem q;
    q.n_vars = n;
    q.coeffs.resize(static_cast<std::size_t>(n) * n);
    for (double& c : q.coeffs) c = rng.uniform(-1.0, 1.0);
    return q;
}

std::vector<int> bits_of(std::size_t mask, int n) {
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    return x;
}

}  // namespace

TEST_CASE("euclidean generation is deterministic and valid") {
    TspInstance a = generate_euclidean_tsp(7, 123);
    TspInstance b = generate_euclidean_tsp(7, 123);
    CHECK(a.n_cities == 7);
    CHECK(a.distances == b.distances);

    std::set<double> pairwise;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) pairwise.insert(a.dist(i, j));
    CHECK(pairwise.size() == 21);  // all distinct for generic placements

    CHECK(generate_euclidean_tsp(7, 124).distances != a.distances);
    CHECK_THROWS_AS(generate_euclidean_tsp(2, 1), std::invalid_argument);
}

TEST_CASE("triangle tour is the perimeter") {
    TspInstance t = generate_euclidean_tsp(3, 7);
    double perimeter = t.dist(0, 1) + t.dist(1, 2) + t.dist(2, 0);
    Tour tour = tsp_brute_force(t);
    CHECK(tour.length == doctest::Approx(perimeter).epsilon(1e-12));
}

TEST_CASE("brute force matches naive permutation oracle") {
    for (std::uint64_t seed : {42ull, 43ull, 44ull}) {
        TspInstance t = generate_euclidean_tsp(5, seed);
        CHECK(tsp_brute_force(t).length == doctest::Approx(naive_best_tour(t).length).epsilon(1e-12));
    }
    TspInstance t7 = generate_euclidean_tsp(7, 42);
    CHECK(tsp_brute_force(t7).length == doctest::Approx(naive_best_tour(t7).length).epsilon(1e-12));
}

TEST_CASE("unit square tour") {
    TspInstance sq;
    sq.n_cities = 4;
    sq.coords = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    sq.distances.assign(16, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double dx = sq.coords[i].first - sq.coords[j].first;
            double dy = sq.coords[i].second - sq.coords[j].second;
            sq.distances[i * 4 + j] = std::hypot(dx, dy);
        }
    CHECK(tsp_brute_force(sq).length == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("tsp_to_qubo sizes and penalty guard") {
    TspInstance t = generate_euclidean_tsp(7, 1);
    QuboProblem q = tsp_to_qubo(t);
    CHECK(q.n_vars == 36);
    CHECK_THROWS_AS(tsp_to_qubo(t, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("N=3 qubo minimizers are the two triangle orientations") {
    TspInstance t = generate_euclidean_tsp(3, 9);
    QuboProblem q = tsp_to_qubo(t);
    REQUIRE(q.n_vars == 4);

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> argmins;
    for (std::size_t m = 0; m < 16; ++m) {
        double v = qubo_value(q, bits_of(m, 4));
        if (v < best - 1e-9) {
            best = v;
            argmins = {m};
        } else if (v < best + 1e-9) {
            argmins.push_back(m);
        }
    }
    REQUIRE(argmins.size() == 2);
    for (std::size_t m : argmins) {
        DecodeResult d = decode_tour(bits_of(m, 4), t, *q.metadata);
        REQUIRE(d.feasible());
        CHECK(d.tour->length == doctest::Approx(tsp_brute_force(t).length).epsilon(1e-12));
    }
}

TEST_CASE("N=5 exhaustive qubo enumeration against tour brute force") {
    TspInstance t = generate_euclidean_tsp(5, 42);
    QuboProblem q = tsp_to_qubo(t);
    REQUIRE(q.n_vars == 16);
    const auto& meta = *q.metadata;

    double best_feasible = std::numeric_limits<double>::infinity();
    double best_any = std::numeric_limits<double>::infinity();
    std::size_t best_any_mask = 0;
    double worst_feasible = -std::numeric_limits<double>::infinity();
    double best_infeasible = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < (1u << 16); ++m) {
        auto x = bits_of(m, 16);
        double v = qubo_value(q, x);
        if (v < best_any) {
            best_any = v;
            best_any_mask = m;
        }
        if (decode_tour(x, t, meta).feasible()) {
            best_feasible = std::min(best_feasible, v);
            worst_feasible = std::max(worst_feasible, v);
        } else {
            best_infeasible = std::min(best_infeasible, v);
        }
    }

    Tour opt = tsp_brute_force(t);
    CHECK(best_feasible ==
          doctest::Approx(meta.tour_scale * opt.length - meta.tour_offset).epsilon(1e-9));
    CHECK(best_any == doctest::Approx(best_feasible).epsilon(1e-12));
    CHECK(decode_tour(bits_of(best_any_mask, 16), t, meta).feasible());
    // Penalty dominance: every infeasible assignment costs strictly more than
    // every feasible one.
    CHECK(best_infeasible > worst_feasible + 1e-9);
    // The global minimizer decodes to the optimal tour.
    DecodeResult d = decode_tour(bits_of(best_any_mask, 16), t, meta);
    CHECK(d.tour->length == doctest::Approx(opt.length).epsilon(1e-12));
}

TEST_CASE("decoder round-trip over all permutation matrices") {
    TspInstance t = generate_euclidean_tsp(5, 11);
    QuboProblem q = tsp_to_qubo(t);
    const auto& meta = *q.metadata;

    std::vector<int> perm{1, 2, 3, 4};
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<int> x(16, 0);
        for (int tstep = 1; tstep <= 4; ++tstep) x[meta.var_index(perm[tstep - 1], tstep)] = 1;
        DecodeResult d = decode_tour(x, t, meta);
        REQUIRE(d.feasible());
        double v = qubo_value(q, x);
        CHECK(meta.tour_scale * d.tour->length ==
              doctest::Approx(v + meta.tour_offset).epsilon(1e-9));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("decode_tour diagnostics") {
    TspInstance t = generate_euclidean_tsp(4, 3);
    QuboProblem q = tsp_to_qubo(t);
    const auto& meta = *q.metadata;

    std::vector<int> identity(9, 0);
    for (int k = 1; k <= 3; ++k) identity[meta.var_index(k, k)] = 1;
    DecodeResult ok = decode_tour(identity, t, meta);
    REQUIRE(ok.feasible());
    CHECK(ok.tour->order == std::vector<int>{0, 1, 2, 3});

    DecodeResult empty = decode_tour(std::vector<int>(9, 0), t, meta);
    CHECK(!empty.feasible());
    CHECK(empty.diagnostic.bad_rows.size() == 3);  // every city row empty
    CHECK(empty.diagnostic.bad_cols.size() == 3);
}

TEST_CASE("qubo_to_maxcut vertex counts and trivial cases") {
    TspInstance t = generate_euclidean_tsp(7, 1);
    MaxCutInstance g = qubo_to_maxcut(tsp_to_qubo(t));
    CHECK(g.n_vertices == 37);
    CHECK(g.root_vertex == 0);

    QuboProblem zeros;
    zeros.n_vars = 4;
    zeros.coeffs.assign(16, 0.0);
    MaxCutInstance gz = qubo_to_maxcut(zeros);
    CHECK(gz.edges.empty());
    CHECK(gz.offset == 0.0);
}

TEST_CASE("qubo/maxcut equivalence over all cuts") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9));  // up to 10 variables
        QuboProblem q = random_qubo(n, rng);
        MaxCutInstance g = qubo_to_maxcut(q);
        REQUIRE(g.n_vertices == n + 1);
        for (std::size_t mask = 0; mask < (std::size_t{1} << (n + 1)); ++mask) {
            CutSolution cut;
            cut.side = bits_of(mask, n + 1);
            double m = cut_weight(g, cut.side);
            auto x = cut_to_assignment(cut, g);
            CHECK(qubo_value(q, x) == doctest::Approx(-m / 2.0 + g.offset).epsilon(1e-9));
        }
    }
}

TEST_CASE("cut_to_assignment special cuts") {
    Rng rng(5);
    QuboProblem q = random_qubo(6, rng);
    MaxCutInstance g = qubo_to_maxcut(q);

    CutSolution all_same{std::vector<int>(7, 1), 0.0};
    CHECK(cut_to_assignment(all_same, g) == std::vector<int>(6, 1));

    CutSolution root_alone{std::vector<int>(7, 1), 0.0};
    root_alone.side[0] = 0;
    CHECK(cut_to_assignment(root_alone, g) == std::vector<int>(6, 0));

    MaxCutInstance no_root = g;
    no_root.root_vertex.reset();
    CHECK_THROWS_AS(cut_to_assignment(all_same, no_root), std::invalid_argument);
}

TEST_CASE("objective evaluations and cut symmetry") {
    QuboProblem zeros;
    zeros.n_vars = 3;
    zeros.coeffs.assign(9, 0.0);
    CHECK(qubo_value(zeros, {1, 0, 1}) == 0.0);

    MaxCutInstance k2;
    k2.n_vertices = 2;
    k2.add_edge(0, 1, 1.0);
    CHECK(cut_weight(k2, {0, 1}) == 1.0);
    CHECK(cut_weight(k2, {0, 0}) == 0.0);

    TspInstance t = generate_euclidean_tsp(7, 2);
    std::vector<int> order{0, 1, 2, 3, 4, 5, 6};
    double expect = 0.0;
    for (int k = 0; k < 7; ++k) expect += t.dist(order[k], order[(k + 1) % 7]);
    CHECK(tour_length(t, order) == doctest::Approx(expect).epsilon(1e-12));

    Rng rng(77);
    QuboProblem q = random_qubo(5, rng);
    MaxCutInstance g = qubo_to_maxcut(q);
    for (std::size_t mask = 0; mask < 64; ++mask) {
        auto side = bits_of(mask, 6);
        auto flipped = side;
        for (int& b : flipped) b ^= 1;
        CHECK(cut_weight(g, side) == doctest::Approx(cut_weight(g, flipped)).epsilon(1e-12));
    }
}

TEST_CASE("artifact json round-trips") {
    TspInstance t = generate_euclidean_tsp(5, 42);
    TspInstance t2 = tsp_from_json(to_json(t));
    CHECK(t2.distances == t.distances);
    CHECK(t2.coords == t.coords);

    QuboProblem q = tsp_to_qubo(t);
    QuboProblem q2 = qubo_from_json(to_json(q));
    CHECK(q2.coeffs == q.coeffs);
    CHECK(q2.metadata->tour_offset == q.metadata->tour_offset);

    MaxCutInstance g = qubo_to_maxcut(q);
    MaxCutInstance g2 = maxcut_from_json(to_json(g));
    CHECK(g2.n_vertices == g.n_vertices);
    CHECK(g2.offset == g.offset);
    REQUIRE(g2.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(g2.edges[i].u == g.edges[i].u);
        CHECK(g2.edges[i].v == g.edges[i].v);
        CHECK(g2.edges[i].w == g.edges[i].w);
    }
}
