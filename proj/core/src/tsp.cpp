#include "qdecomp/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdecomp/rng.hpp"

namespace qdecomp {

void TspInstance::validate() const {
    if (n_cities < 3) throw std::invalid_argument("invalid instance: need at least 3 cities");
    if (distances.size() != static_cast<std::size_t>(n_cities) * n_cities)
        throw std::invalid_argument("invalid instance: distance matrix size mismatch");
    for (int i = 0; i < n_cities; ++i) {
        if (dist(i, i) != 0.0)
            throw std::invalid_argument("invalid instance: nonzero diagonal distance");
        for (int j = i + 1; j < n_cities; ++j) {
            if (!(dist(i, j) > 0.0) || !std::isfinite(dist(i, j)))
                throw std::invalid_argument("invalid instance: distances must be positive");
            if (dist(i, j) != dist(j, i))
                throw std::invalid_argument("invalid instance: asymmetric distances");
        }
    }
}

TspInstance generate_euclidean_tsp(int n, std::uint64_t seed, double box) {
    if (n < 3) throw std::invalid_argument("invalid instance: need at least 3 cities");
    if (!(box > 0.0)) throw std::invalid_argument("invalid instance: box must be positive");

    Rng rng = Rng(seed).substream("instance");
    TspInstance tsp;
    tsp.n_cities = n;
    tsp.seed = seed;
    tsp.coords.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = rng.uniform(0.0, box);
        double y = rng.uniform(0.0, box);
        tsp.coords.emplace_back(x, y);
    }
    tsp.distances.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dx = tsp.coords[i].first - tsp.coords[j].first;
            double dy = tsp.coords[i].second - tsp.coords[j].second;
            double d = std::hypot(dx, dy);
            tsp.distances[static_cast<std::size_t>(i) * n + j] = d;
            tsp.distances[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    tsp.validate();
    return tsp;
}

double tour_length(const TspInstance& tsp, const std::vector<int>& order) {
    if (order.size() != static_cast<std::size_t>(tsp.n_cities))
        throw std::invalid_argument("tour length: order size mismatch");
    double len = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        int a = order[k];
        int b = order[(k + 1) % order.size()];
        len += tsp.dist(a, b);
    }
    return len;
}

Tour tsp_brute_force(const TspInstance& tsp) {
    tsp.validate();
    const int n = tsp.n_cities;
    if (n > 12) throw std::invalid_argument("tsp_brute_force: instance too large (N > 12)");

    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);

    Tour best;
    best.length = std::numeric_limits<double>::infinity();
    do {
        // Each undirected tour appears twice; keep the orientation with
        // rest.front() < rest.back() to halve the work.
        if (rest.front() > rest.back()) continue;
        std::vector<int> order;
        order.reserve(n);
        order.push_back(0);
        order.insert(order.end(), rest.begin(), rest.end());
        double len = tour_length(tsp, order);
        if (len < best.length) {
            best.length = len;
            best.order = std::move(order);
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

}  // namespace qdecomp
