#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace qdecomp {

using Complex = std::complex<double>;

enum class PauliBasis { Z, X, Y };

/// Single-qubit pure state (amp0 |0> + amp1 |1>).
struct PureState {
    Complex amp0{1.0, 0.0};
    Complex amp1{0.0, 0.0};
};

PureState basis_eigenstate(PauliBasis basis, int eigenvalue_bit);  // bit 0 -> +1 eigenstate

struct GateZZ {
    int a = 0, b = 0;
    double theta = 0.0;  // exp(-i theta Z_a Z_b / 2)
};
struct GateRX {
    int target = 0;
    double theta = 0.0;  // exp(-i theta X / 2)
};
/// Rotates the given Pauli basis into the computational basis, so a
/// subsequent Z measurement realizes a measurement in that basis.
struct GateBasisRotation {
    int target = 0;
    PauliBasis basis = PauliBasis::Z;
};
struct OpMeasure {
    int qubit = 0;
    int slot = 0;  // classical slot receiving the outcome bit
};
struct OpReset {
    int qubit = 0;
    PureState state;
};

using CircuitOp = std::variant<GateZZ, GateRX, GateBasisRotation, OpMeasure, OpReset>;

/// Gate list over n qubits with per-qubit initial pure states (default |0>)
/// and classical slots filled by measurements.
struct Circuit {
    int n_qubits = 0;
    int n_slots = 0;
    std::vector<PureState> init;  // size n_qubits once finalized; empty means all |0>
    std::vector<CircuitOp> ops;

    void set_plus_init();
    void zz(int a, int b, double theta) { ops.push_back(GateZZ{a, b, theta}); }
    void rx(int target, double theta) { ops.push_back(GateRX{target, theta}); }
    void basis_rotation(int target, PauliBasis basis) {
        ops.push_back(GateBasisRotation{target, basis});
    }
    void measure(int qubit, int slot) { ops.push_back(OpMeasure{qubit, slot}); }
    void reset(int qubit, PureState state) { ops.push_back(OpReset{qubit, state}); }

    void validate() const;  // targets and slots in range
};

}  // namespace qdecomp
