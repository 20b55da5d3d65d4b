#pragma once

#include <cstdint>
#include <vector>

namespace qdecomp {

/// Complete weighted graph of cities. Distances are symmetric, positive off
/// the diagonal and zero on it.
struct TspInstance {
    int n_cities = 0;
    std::vector<double> distances;              // row-major n x n
    std::vector<std::pair<double, double>> coords;  // optional, empty if unknown
    std::uint64_t seed = 0;

    double dist(int i, int j) const { return distances[static_cast<std::size_t>(i) * n_cities + j]; }

    /// Throws std::invalid_argument if the distance matrix is not a valid
    /// TSP instance (asymmetry, nonpositive off-diagonal, nonzero diagonal).
    void validate() const;
};

/// Hamilton cycle. `order` starts at city 0 and visits every city once;
/// `length` includes the closing edge back to city 0.
struct Tour {
    std::vector<int> order;
    double length = 0.0;
};

/// Cities placed i.i.d. uniform in [0, box]^2 with Euclidean distances.
/// Deterministic per seed. Requires n >= 3.
TspInstance generate_euclidean_tsp(int n, std::uint64_t seed, double box = 1.0);

double tour_length(const TspInstance& tsp, const std::vector<int>& order);

/// Globally optimal tour by enumerating (N-1)!/2 undirected orders.
/// Guarded at N <= 12.
Tour tsp_brute_force(const TspInstance& tsp);

}  // namespace qdecomp
