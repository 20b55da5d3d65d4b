#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "qdecomp/circuit.hpp"

namespace qdecomp {

/// Measure-and-prepare channel of a quasi-probability wire-cut decomposition:
/// measure in `basis`, re-prepare `prep[x]` (outcome-independent channels
/// store the same state twice), weight the result by coeff and the per-outcome
/// sign. Communication channels carry signs +1 only.
struct MeasurePrepareChannel {
    PauliBasis basis = PauliBasis::Z;
    bool outcome_dependent = false;
    std::array<PureState, 2> prep;
    double coeff = 0.0;
    std::array<int, 2> outcome_sign{+1, +1};

    const PureState& prep_for(int outcome) const {
        return prep[outcome_dependent ? outcome : 0];
    }
};

/// Identity-channel decomposition sum_i a_i F_i with kappa = sum |a_i|.
struct QpdDecomposition {
    std::vector<MeasurePrepareChannel> channels;
    bool communication = false;

    double kappa() const {
        double k = 0.0;
        for (const auto& ch : channels) k += std::abs(ch.coeff);
        return k;
    }
};

/// No-communication decomposition (kappa = 4): signed eigenstate preparations
/// for each Pauli basis plus two trace channels.
QpdDecomposition peng_decomposition();

/// One-way-communication decomposition (kappa = 3): re-prepare the observed
/// eigenstate (Z weight 1, X/Y weight 1/2) minus the flipped X/Y preparations
/// (weight 1/2 each).
QpdDecomposition harada_decomposition();

struct QpdVerification {
    bool pass = false;
    double max_deviation = 0.0;
};

/// Applies sum_i a_i F_i to the spanning set {|0><0|, |1><1|, |+><+|,
/// |+i><+i|} and checks the identity to 1e-12.
QpdVerification verify_qpd(const QpdDecomposition& d);

/// Expectation-estimation overhead kappa^(2K) for K cuts of one method.
double expectation_overhead(double kappa, int n_cuts);

}  // namespace qdecomp
