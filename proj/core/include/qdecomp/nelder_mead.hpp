#pragma once

#include <functional>
#include <vector>

namespace qdecomp {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    long evaluations = 0;
};

/// Standard Nelder-Mead downhill simplex (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5) minimizing f from x0 with an axis-aligned
/// initial simplex of the given step. Stops after max_evals evaluations or
/// when the simplex collapses.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, long max_evals);

}  // namespace qdecomp
