#include "qdecomp/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdecomp {

PureState basis_eigenstate(PauliBasis basis, int bit) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (basis) {
        case PauliBasis::Z: return bit == 0 ? PureState{1.0, 0.0} : PureState{0.0, 1.0};
        case PauliBasis::X: return bit == 0 ? PureState{r, r} : PureState{r, -r};
        case PauliBasis::Y:
            return bit == 0 ? PureState{r, Complex(0.0, r)} : PureState{r, Complex(0.0, -r)};
    }
    throw std::logic_error("basis_eigenstate: bad basis");
}

void Circuit::set_plus_init() {
    const double r = 1.0 / std::sqrt(2.0);
    init.assign(n_qubits, PureState{r, r});
}

void Circuit::validate() const {
    auto check_qubit = [&](int q) {
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("circuit: qubit out of range");
    };
    if (!init.empty() && init.size() != static_cast<std::size_t>(n_qubits))
        throw std::invalid_argument("circuit: init size mismatch");
    for (const auto& op : ops) {
        std::visit(
            [&](const auto& g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, GateZZ>) {
                    check_qubit(g.a);
                    check_qubit(g.b);
                    if (g.a == g.b) throw std::invalid_argument("circuit: ZZ needs two qubits");
                } else if constexpr (std::is_same_v<T, GateRX>) {
                    check_qubit(g.target);
                } else if constexpr (std::is_same_v<T, GateBasisRotation>) {
                    check_qubit(g.target);
                } else if constexpr (std::is_same_v<T, OpMeasure>) {
                    check_qubit(g.qubit);
                    if (g.slot < 0 || g.slot >= n_slots)
                        throw std::invalid_argument("circuit: measurement slot out of range");
                } else if constexpr (std::is_same_v<T, OpReset>) {
                    check_qubit(g.qubit);
                }
            },
            op);
    }
}

Statevector Statevector::from_init(const Circuit& c) {
    Statevector sv;
    sv.n_qubits = c.n_qubits;
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    sv.amps.assign(dim, Complex{0.0, 0.0});
    if (c.init.empty()) {
        sv.amps[0] = 1.0;
        return sv;
    }
    // Product state: amplitude of basis state s is the product over qubits.
    for (std::size_t s = 0; s < dim; ++s) {
        Complex a{1.0, 0.0};
        for (int q = 0; q < c.n_qubits; ++q) {
            a *= (s >> q) & 1 ? c.init[q].amp1 : c.init[q].amp0;
            if (a == Complex{0.0, 0.0}) break;
        }
        sv.amps[s] = a;
    }
    return sv;
}

double Statevector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

double Distribution::sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

namespace {

void apply_zz(Statevector& sv, const GateZZ& g) {
    const Complex ph_eq = std::polar(1.0, -g.theta / 2.0);   // Z_a Z_b = +1
    const Complex ph_ne = std::polar(1.0, +g.theta / 2.0);   // Z_a Z_b = -1
    const std::size_t ma = std::size_t{1} << g.a;
    const std::size_t mb = std::size_t{1} << g.b;
    for (std::size_t s = 0; s < sv.amps.size(); ++s)
        sv.amps[s] *= ((s & ma) != 0) == ((s & mb) != 0) ? ph_eq : ph_ne;
}

void apply_single_qubit(Statevector& sv, int target, const Complex m[2][2]) {
    const std::size_t mask = std::size_t{1} << target;
    for (std::size_t s = 0; s < sv.amps.size(); ++s) {
        if (s & mask) continue;
        Complex a0 = sv.amps[s];
        Complex a1 = sv.amps[s | mask];
        sv.amps[s] = m[0][0] * a0 + m[0][1] * a1;
        sv.amps[s | mask] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void apply_rx(Statevector& sv, const GateRX& g) {
    const double c = std::cos(g.theta / 2.0);
    const double s = std::sin(g.theta / 2.0);
    const Complex m[2][2] = {{Complex(c, 0.0), Complex(0.0, -s)},
                             {Complex(0.0, -s), Complex(c, 0.0)}};
    apply_single_qubit(sv, g.target, m);
}

void apply_basis_rotation(Statevector& sv, const GateBasisRotation& g) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (g.basis) {
        case PauliBasis::Z:
            return;  // already computational
        case PauliBasis::X: {
            const Complex m[2][2] = {{Complex(r), Complex(r)}, {Complex(r), Complex(-r)}};
            apply_single_qubit(sv, g.target, m);
            return;
        }
        case PauliBasis::Y: {
            // H S^dagger maps the Y eigenstates onto |0>, |1>.
            const Complex m[2][2] = {{Complex(r), Complex(0.0, -r)}, {Complex(r), Complex(0.0, r)}};
            apply_single_qubit(sv, g.target, m);
            return;
        }
    }
}

void project(Statevector& sv, int qubit, int outcome) {
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t s = 0; s < sv.amps.size(); ++s)
        if (static_cast<int>((s & mask) != 0) != outcome) sv.amps[s] = Complex{0.0, 0.0};
}

void reset_qubit(Statevector& sv, int qubit, int known_outcome, const PureState& st) {
    // The qubit is in the computational state `known_outcome`; move that
    // amplitude slice into the requested pure state.
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t s = 0; s < sv.amps.size(); ++s) {
        if (s & mask) continue;
        Complex kept = known_outcome == 0 ? sv.amps[s] : sv.amps[s | mask];
        sv.amps[s] = st.amp0 * kept;
        sv.amps[s | mask] = st.amp1 * kept;
    }
}

struct SimPlan {
    // Measurements with later operations on the same qubit must branch;
    // trailing measurements are read off the final state.
    std::vector<bool> is_mid;     // parallel to ops (only meaningful for OpMeasure)
    std::vector<int> slot_qubit;  // slot -> qubit for terminal measurements, else -1
};

SimPlan plan_measurements(const Circuit& c) {
    SimPlan plan;
    plan.is_mid.assign(c.ops.size(), false);
    plan.slot_qubit.assign(c.n_slots, -1);
    for (std::size_t i = 0; i < c.ops.size(); ++i) {
        const auto* m = std::get_if<OpMeasure>(&c.ops[i]);
        if (!m) continue;
        bool mid = false;
        for (std::size_t j = i + 1; j < c.ops.size() && !mid; ++j) {
            std::visit(
                [&](const auto& g) {
                    using T = std::decay_t<decltype(g)>;
                    if constexpr (std::is_same_v<T, GateZZ>)
                        mid = g.a == m->qubit || g.b == m->qubit;
                    else if constexpr (std::is_same_v<T, GateRX>)
                        mid = g.target == m->qubit;
                    else if constexpr (std::is_same_v<T, GateBasisRotation>)
                        mid = g.target == m->qubit;
                    else if constexpr (std::is_same_v<T, OpMeasure>)
                        mid = g.qubit == m->qubit;
                    else if constexpr (std::is_same_v<T, OpReset>)
                        mid = g.qubit == m->qubit;
                },
                c.ops[j]);
        }
        plan.is_mid[i] = mid;
        if (!mid) plan.slot_qubit[m->slot] = m->qubit;
    }
    return plan;
}

// Depth-first branch execution accumulating unnormalized probabilities per
// classical bit string.
void run_branches(const Circuit& c, const SimPlan& plan, const std::map<int, int>& forced,
                  Statevector sv, std::size_t op_index, std::size_t classical_bits,
                  Distribution& acc) {
    for (std::size_t i = op_index; i < c.ops.size(); ++i) {
        const auto& op = c.ops[i];
        if (const auto* g = std::get_if<GateZZ>(&op)) {
            apply_zz(sv, *g);
        } else if (const auto* g = std::get_if<GateRX>(&op)) {
            apply_rx(sv, *g);
        } else if (const auto* g = std::get_if<GateBasisRotation>(&op)) {
            apply_basis_rotation(sv, *g);
        } else if (const auto* m = std::get_if<OpMeasure>(&op)) {
            auto forced_it = forced.find(m->slot);
            if (forced_it != forced.end()) {
                project(sv, m->qubit, forced_it->second);
                if (forced_it->second) classical_bits |= std::size_t{1} << m->slot;
                continue;
            }
            if (!plan.is_mid[i]) continue;  // read from the final state later
            for (int outcome = 0; outcome < 2; ++outcome) {
                Statevector branch = sv;
                project(branch, m->qubit, outcome);
                if (branch.norm_squared() < 1e-30) continue;
                std::size_t bits = classical_bits;
                if (outcome) bits |= std::size_t{1} << m->slot;
                run_branches(c, plan, forced, std::move(branch), i + 1, bits, acc);
            }
            return;
        } else if (const auto* r = std::get_if<OpReset>(&op)) {
            // Reset = (implicit) measurement plus re-preparation. Skip
            // zero-probability outcomes so measured qubits reset in place.
            const std::size_t mask = std::size_t{1} << r->qubit;
            double p1 = 0.0, p0 = 0.0;
            for (std::size_t s = 0; s < sv.amps.size(); ++s)
                (s & mask ? p1 : p0) += std::norm(sv.amps[s]);
            bool both = p0 >= 1e-30 && p1 >= 1e-30;
            if (!both) {
                reset_qubit(sv, r->qubit, p1 > p0 ? 1 : 0, r->state);
                continue;
            }
            for (int outcome = 0; outcome < 2; ++outcome) {
                Statevector branch = sv;
                project(branch, r->qubit, outcome);
                reset_qubit(branch, r->qubit, outcome, r->state);
                run_branches(c, plan, forced, std::move(branch), i + 1, classical_bits, acc);
            }
            return;
        }
    }

    // Terminal: accumulate joint probabilities of the trailing measurements.
    for (std::size_t s = 0; s < sv.amps.size(); ++s) {
        double pr = std::norm(sv.amps[s]);
        if (pr == 0.0) continue;
        std::size_t key = classical_bits;
        for (int slot = 0; slot < c.n_slots; ++slot) {
            int q = plan.slot_qubit[slot];
            if (q >= 0 && ((s >> q) & 1)) key |= std::size_t{1} << slot;
        }
        acc.p[key] += pr;
    }
}

Distribution simulate_impl(const Circuit& c, const std::map<int, int>& forced, int qubit_cap) {
    c.validate();
    if (c.n_qubits > qubit_cap)
        throw std::invalid_argument("simulate: qubit count exceeds cap");
    for (const auto& [slot, bit] : forced) {
        if (slot < 0 || slot >= c.n_slots)
            throw std::invalid_argument("simulate_branch: forced slot does not exist");
        if (bit != 0 && bit != 1)
            throw std::invalid_argument("simulate_branch: forced outcome must be 0 or 1");
    }

    Distribution acc;
    acc.n_bits = c.n_slots;
    acc.p.assign(std::size_t{1} << c.n_slots, 0.0);
    run_branches(c, plan_measurements(c), forced, Statevector::from_init(c), 0, 0, acc);
    return acc;
}

}  // namespace

Distribution simulate(const Circuit& c, int qubit_cap) {
    return simulate_impl(c, {}, qubit_cap);
}

BranchResult simulate_branch(const Circuit& c, const std::map<int, int>& forced_slots,
                             int qubit_cap) {
    Distribution full = simulate_impl(c, forced_slots, qubit_cap);

    // Collapse the forced slots out of the keys.
    std::vector<int> kept_slots;
    for (int slot = 0; slot < c.n_slots; ++slot)
        if (!forced_slots.count(slot)) kept_slots.push_back(slot);

    BranchResult out;
    out.conditional.n_bits = static_cast<int>(kept_slots.size());
    out.conditional.p.assign(std::size_t{1} << kept_slots.size(), 0.0);
    double total = 0.0;
    for (std::size_t s = 0; s < full.p.size(); ++s) {
        if (full.p[s] == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t k = 0; k < kept_slots.size(); ++k)
            if ((s >> kept_slots[k]) & 1) key |= std::size_t{1} << k;
        out.conditional.p[key] += full.p[s];
        total += full.p[s];
    }
    out.probability = total;
    if (total > 0.0)
        for (double& v : out.conditional.p) v /= total;
    return out;
}

}  // namespace qdecomp
