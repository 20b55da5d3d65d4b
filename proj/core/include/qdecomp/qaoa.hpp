#pragma once

#include <cstdint>
#include <vector>

#include "qdecomp/maxcut.hpp"
#include "qdecomp/statevector.hpp"

namespace qdecomp {

/// (gamma_1, beta_1, ..., gamma_p, beta_p).
struct QaoaParams {
    std::vector<double> values;

    int layers() const { return static_cast<int>(values.size()) / 2; }
    double gamma(int layer) const { return values[2 * layer]; }
    double beta(int layer) const { return values[2 * layer + 1]; }
};

/// Depth-p MaxCut QAOA circuit: |+> init, per layer ZZ(gamma_l * w_e) over
/// edge_order then RX(2 beta_l) on every qubit, final measurement of all
/// qubits (slot k = qubit k). The phase convention matches the objective
/// f(s) = sum_e w_e [s_u != s_v].
Circuit build_qaoa_circuit(const MaxCutInstance& g, const QaoaParams& params,
                           const std::vector<int>& edge_order);
Circuit build_qaoa_circuit(const MaxCutInstance& g, const QaoaParams& params);

/// sum_s p(s) f(s) with f the cut weight of s read bitwise (bit k = side of
/// vertex k).
double expectation_f(const MaxCutInstance& g, const Distribution& dist);

struct TrainConfig {
    int restarts = 10;
    int max_evals_per_restart = 250;
    std::uint64_t seed = 0;
};

struct TrainResult {
    QaoaParams params;
    double expectation = 0.0;
    long evaluations = 0;
};

/// Derivative-free maximization of the exact uncut expectation by multistart
/// Nelder-Mead. Deterministic per seed.
TrainResult train_qaoa(const MaxCutInstance& g, int layers, const TrainConfig& cfg = {});

}  // namespace qdecomp
