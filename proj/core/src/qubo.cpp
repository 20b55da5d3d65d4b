#include "qdecomp/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdecomp {

void QuboProblem::validate() const {
    if (n_vars <= 0) throw std::invalid_argument("qubo: need at least one variable");
    if (coeffs.size() != static_cast<std::size_t>(n_vars) * n_vars)
        throw std::invalid_argument("qubo: coefficient matrix size mismatch");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("qubo: non-finite coefficient");
}

QuboProblem tsp_to_qubo(const TspInstance& tsp, double penalty_a, double penalty_b) {
    tsp.validate();
    const int n_cities = tsp.n_cities;
    double max_d = 0.0;
    for (double d : tsp.distances) max_d = std::max(max_d, d);
    if (!(penalty_a > 0.0) || !(penalty_b > 0.0) || !(penalty_a / penalty_b > n_cities * max_d))
        throw std::invalid_argument("penalty too small: require A/B > N * max distance");

    const int m = n_cities - 1;  // cities 1..N-1 at times 1..N-1
    QuboProblem q;
    q.n_vars = m * m;
    q.coeffs.assign(static_cast<std::size_t>(q.n_vars) * q.n_vars, 0.0);
    QuboMetadata meta;
    meta.n_cities = n_cities;
    meta.tour_scale = penalty_b;
    // Both one-hot penalties contribute a dropped constant of A per row;
    // feasible assignments then evaluate to B*length - 2*A*(N-1).
    meta.tour_offset = 2.0 * penalty_a * m;
    q.metadata = meta;

    auto idx = [m](int city, int time) { return (city - 1) * m + (time - 1); };

    // City one-hot: A * (1 - sum_t x_{v,t})^2, constant dropped.
    // Time one-hot: A * (1 - sum_v x_{v,t})^2, constant dropped.
    for (int v = 1; v < n_cities; ++v) {
        for (int t = 1; t < n_cities; ++t) {
            q.q(idx(v, t), idx(v, t)) -= 2.0 * penalty_a;  // -A from each penalty family
            for (int t2 = t + 1; t2 < n_cities; ++t2) {
                q.q(idx(v, t), idx(v, t2)) += penalty_a;
                q.q(idx(v, t2), idx(v, t)) += penalty_a;
            }
            for (int v2 = v + 1; v2 < n_cities; ++v2) {
                q.q(idx(v, t), idx(v2, t)) += penalty_a;
                q.q(idx(v2, t), idx(v, t)) += penalty_a;
            }
        }
    }

    // Path length: B * sum_{u != v} d_uv x_{u,i} x_{v,i+1} over cyclic time.
    // Steps touching time 0 involve the fixed start city and fold into the
    // diagonal: leaving city 0 at time 0 -> x_{v,1}; returning at time N-1.
    for (int v = 1; v < n_cities; ++v) {
        q.q(idx(v, 1), idx(v, 1)) += penalty_b * tsp.dist(0, v);
        q.q(idx(v, m), idx(v, m)) += penalty_b * tsp.dist(v, 0);
    }
    for (int t = 1; t < m; ++t) {
        for (int u = 1; u < n_cities; ++u) {
            for (int v = 1; v < n_cities; ++v) {
                if (u == v) continue;
                q.q(idx(u, t), idx(v, t + 1)) += penalty_b * tsp.dist(u, v);
            }
        }
    }
    return q;
}

QuboProblem tsp_to_qubo(const TspInstance& tsp) {
    double max_d = 0.0;
    for (double d : tsp.distances) max_d = std::max(max_d, d);
    return tsp_to_qubo(tsp, tsp.n_cities * max_d + 1.0, 1.0);
}

double qubo_value(const QuboProblem& q, const std::vector<int>& x) {
    if (x.size() != static_cast<std::size_t>(q.n_vars))
        throw std::invalid_argument("qubo_value: assignment size mismatch");
    double val = 0.0;
    for (int i = 0; i < q.n_vars; ++i) {
        if (!x[i]) continue;
        const double* row = &q.coeffs[static_cast<std::size_t>(i) * q.n_vars];
        for (int j = 0; j < q.n_vars; ++j)
            if (x[j]) val += row[j];
    }
    return val;
}

DecodeResult decode_tour(const std::vector<int>& x, const TspInstance& tsp, const QuboMetadata& meta) {
    const int m = meta.n_cities - 1;
    if (x.size() != static_cast<std::size_t>(m) * m)
        throw std::invalid_argument("decode_tour: assignment size mismatch");

    DecodeResult res;
    std::vector<int> city_at_time(m + 1, -1);
    for (int v = 1; v <= m; ++v) {
        int row_ones = 0;
        for (int t = 1; t <= m; ++t) row_ones += x[meta.var_index(v, t)];
        if (row_ones != 1) res.diagnostic.bad_rows.push_back(v);
    }
    for (int t = 1; t <= m; ++t) {
        int col_ones = 0;
        for (int v = 1; v <= m; ++v) {
            if (x[meta.var_index(v, t)]) {
                ++col_ones;
                city_at_time[t] = v;
            }
        }
        if (col_ones != 1) res.diagnostic.bad_cols.push_back(t);
    }
    if (!res.diagnostic.bad_rows.empty() || !res.diagnostic.bad_cols.empty()) return res;

    Tour tour;
    tour.order.reserve(meta.n_cities);
    tour.order.push_back(0);
    for (int t = 1; t <= m; ++t) tour.order.push_back(city_at_time[t]);
    tour.length = tour_length(tsp, tour.order);
    res.tour = std::move(tour);
    return res;
}

}  // namespace qdecomp
