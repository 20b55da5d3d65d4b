#pragma once

#include <map>
#include <vector>

#include "qdecomp/circuit.hpp"

namespace qdecomp {

/// Complex amplitudes over 2^n_qubits basis states; bit k of the index is the
/// state of qubit k. Mid-branch states are deliberately unnormalized: the
/// squared norm is the probability of the branch that produced them.
struct Statevector {
    int n_qubits = 0;
    std::vector<Complex> amps;

    static Statevector from_init(const Circuit& c);
    double norm_squared() const;
};

/// Probabilities over classical bit strings; bit k of the index is slot k
/// (for measure-all circuits, slot k is qubit k).
struct Distribution {
    int n_bits = 0;
    std::vector<double> p;

    double& operator[](std::size_t s) { return p[s]; }
    double operator[](std::size_t s) const { return p[s]; }
    double sum() const;
};

/// Exact output distribution over all classical slots. Mid-circuit
/// measurements branch internally; final measurements are read from the
/// statevector. Throws above qubit_cap.
Distribution simulate(const Circuit& c, int qubit_cap = 20);

struct BranchResult {
    double probability = 0.0;   // joint probability of the forced outcomes
    Distribution conditional;   // over the remaining slots, in slot order
};

/// Projective branch: force the listed slots (slot -> bit) and return the
/// branch probability together with the conditional distribution of the
/// remaining measurements.
BranchResult simulate_branch(const Circuit& c, const std::map<int, int>& forced_slots,
                             int qubit_cap = 20);

}  // namespace qdecomp
