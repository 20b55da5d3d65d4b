#pragma once

#include <optional>
#include <vector>

#include "qdecomp/maxcut.hpp"
#include "qdecomp/qaoa.hpp"
#include "qdecomp/qpd.hpp"

namespace qdecomp {

/// The two sub-circuits obtained by wire-cutting the separator qubit of a
/// depth-2 QAOA circuit. Cut 1 (after the layer-1 phases on the A side) uses
/// the communication decomposition; cut 2 (after the layer-2 phases on the B
/// side) uses the no-communication one, so classical bits only flow A -> B.
///
/// Fragment A, qubits side_a + the separator wire (last index):
///   gamma_1 on A and A-c edges, rotate/measure c (x_h), reset c to the cut-2
///   preparation, beta_1 on A, gamma_2 on A and A-c edges, beta_2 on A and c,
///   measure everything.
/// Fragment B, qubits side_b + the separator wire (last index):
///   prepare c from the communicated (i_h, x_h), gamma_1 on B and B-c edges,
///   beta_1 on B and c, gamma_2 on B and B-c edges, rotate/measure c (x_p),
///   beta_2 on B, measure B.
struct FragmentPair {
    MaxCutInstance graph;  // the shrunk instance the fragments reconstruct
    int sep_vertex = 0;
    std::vector<int> side_a;  // sorted shrunk-graph vertex ids
    std::vector<int> side_b;
    QaoaParams params;
    QpdDecomposition cut1;  // communication (Harada-style), measured on A
    QpdDecomposition cut2;  // no communication (Peng-style), measured on B

    int n_qubits_a() const { return static_cast<int>(side_a.size()) + 1; }
    int n_qubits_b() const { return static_cast<int>(side_b.size()) + 1; }

    // Classical slot layout. Fragment A: slots [0, |A|) hold the A bits,
    // slot |A| the final separator bit, slot |A|+1 the cut-1 outcome x_h.
    // Fragment B: slots [0, |B|) hold the B bits, slot |B| the cut-2 outcome.
    int slot_xh() const { return static_cast<int>(side_a.size()) + 1; }
    int slot_xp() const { return static_cast<int>(side_b.size()); }

    /// Fragment-A circuit for channel choices (i_h, i_p). Independent of any
    /// fragment-B outcome by construction.
    Circuit fragment_a(int i_h, int i_p) const;

    /// Fragment-B circuit given the communicated cut-1 outcome x_h.
    Circuit fragment_b(int i_h, int x_h, int i_p) const;

    /// Assemble the shrunk-graph bit string from fragment outputs.
    std::size_t compose_bitstring(std::size_t a_bits, int c_bit, std::size_t b_bits) const;
};

/// Splits the shrunk graph at the cardinality-1 separator `sep_vertex` and
/// lays out the gate schedule above. The components of g minus the separator
/// are grouped into the two sides; pass `fixed_split` to pin the grouping
/// (e.g. to the A/B images of the original separator). Requires an even,
/// positive layer count.
FragmentPair build_fragments(const MaxCutInstance& g, int sep_vertex, const QaoaParams& params,
                             const std::optional<std::pair<std::vector<int>, std::vector<int>>>&
                                 fixed_split = std::nullopt);

}  // namespace qdecomp
