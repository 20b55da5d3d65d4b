#include "qdecomp/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

namespace qdecomp {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, long max_evals) {
    const std::size_t n = x0.size();
    NelderMeadResult res;

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 1; i <= n; ++i) pts[i][i - 1] += step;
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = f(pts[i]);
        ++res.evaluations;
    }

    auto centroid_excluding = [&](std::size_t worst) {
        std::vector<double> c(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k];
        }
        for (double& v : c) v /= static_cast<double>(n);
        return c;
    };
    auto blend = [&](const std::vector<double>& c, const std::vector<double>& x, double t) {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (c[k] - x[k]);
        return out;
    };

    while (res.evaluations < max_evals) {
        // Order: best first, worst last (stable for determinism).
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::size_t best = idx[0], worst = idx[n], second_worst = idx[n - 1];

        double spread = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            spread = std::max(spread, std::abs(pts[worst][k] - pts[best][k]));
        if (spread < 1e-10 && std::abs(vals[worst] - vals[best]) < 1e-12) break;

        auto c = centroid_excluding(worst);
        auto xr = blend(c, pts[worst], 1.0);
        double fr = f(xr);
        ++res.evaluations;

        if (fr < vals[best]) {
            auto xe = blend(c, pts[worst], 2.0);
            double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
        } else if (fr < vals[second_worst]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
        } else {
            bool outside = fr < vals[worst];
            auto xc = outside ? blend(c, pts[worst], 0.5) : blend(c, pts[worst], -0.5);
            double fc = f(xc);
            ++res.evaluations;
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = std::move(xc);
                vals[worst] = fc;
            } else {
                // Shrink toward the best point.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
                    vals[i] = f(pts[i]);
                    ++res.evaluations;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (vals[i] < vals[best]) best = i;
    res.x = pts[best];
    res.value = vals[best];
    return res;
}

}  // namespace qdecomp
