#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdecomp/tsp.hpp"

namespace qdecomp {

/// Extra bookkeeping carried by TSP-derived QUBOs: the (city, time) -> index
/// bijection and the affine map between QUBO values and tour lengths.
struct QuboMetadata {
    int n_cities = 0;
    // variable index = (city - 1) * (n_cities - 1) + (time - 1),
    // city, time in 1..n_cities-1; city 0 is fixed at time 0.
    double tour_scale = 1.0;    // penalty B
    double tour_offset = 0.0;   // qubo_value + tour_offset = tour_scale * length

    int var_index(int city, int time) const { return (city - 1) * (n_cities - 1) + (time - 1); }
    std::pair<int, int> city_time(int var) const {
        return {var / (n_cities - 1) + 1, var % (n_cities - 1) + 1};
    }
};

/// min over binary x of sum_ij q_ij x_i x_j. The coefficient matrix is not
/// required to be symmetric.
struct QuboProblem {
    int n_vars = 0;
    std::vector<double> coeffs;  // row-major n x n
    std::optional<QuboMetadata> metadata;

    double q(int i, int j) const { return coeffs[static_cast<std::size_t>(i) * n_vars + j]; }
    double& q(int i, int j) { return coeffs[static_cast<std::size_t>(i) * n_vars + j]; }

    void validate() const;  // finite entries, square matrix
};

/// One-hot TSP encoding on (N-1)^2 variables; city 0 is fixed at time 0 and
/// the time index wraps so the cycle closes. Requires
/// penalty_a / penalty_b > N * max distance, otherwise throws
/// std::invalid_argument ("penalty too small").
QuboProblem tsp_to_qubo(const TspInstance& tsp, double penalty_a, double penalty_b);

/// Default penalties: B = 1, A = N * max d + 1.
QuboProblem tsp_to_qubo(const TspInstance& tsp);

double qubo_value(const QuboProblem& q, const std::vector<int>& x);

/// Diagnostic for assignments that fail the one-hot constraints.
struct InfeasibleAssignment {
    std::vector<int> bad_rows;  // cities whose time row is not one-hot
    std::vector<int> bad_cols;  // times whose city column is not one-hot
};

struct DecodeResult {
    std::optional<Tour> tour;
    InfeasibleAssignment diagnostic;  // populated when tour is absent

    bool feasible() const { return tour.has_value(); }
};

/// Interpret x as the (city, time) matrix of a TSP-derived QUBO. Returns the
/// tour when every row and column has exactly one 1, otherwise a diagnostic.
DecodeResult decode_tour(const std::vector<int>& x, const TspInstance& tsp, const QuboMetadata& meta);

}  // namespace qdecomp
