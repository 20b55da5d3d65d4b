#include "qdecomp/fragments.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qdecomp {

namespace {

// Qubit index of a shrunk-graph vertex inside a fragment, separator last.
int qubit_of(const std::vector<int>& side, int sep_vertex, int vertex) {
    if (vertex == sep_vertex) return static_cast<int>(side.size());
    auto it = std::lower_bound(side.begin(), side.end(), vertex);
    return static_cast<int>(it - side.begin());
}

}  // namespace

Circuit FragmentPair::fragment_a(int i_h, int i_p) const {
    const auto& ch_h = cut1.channels.at(i_h);
    const auto& ch_p = cut2.channels.at(i_p);
    const int n_a = static_cast<int>(side_a.size());
    const int c = n_a;  // separator wire

    std::set<int> in_a(side_a.begin(), side_a.end());
    Circuit circ;
    circ.n_qubits = n_a + 1;
    circ.n_slots = n_a + 2;
    circ.set_plus_init();

    // Layer 1 phases restricted to A and A-c edges.
    for (const auto& e : graph.edges) {
        bool u_in = in_a.count(e.u) || e.u == sep_vertex;
        bool v_in = in_a.count(e.v) || e.v == sep_vertex;
        if (!u_in || !v_in) continue;
        circ.zz(qubit_of(side_a, sep_vertex, e.u), qubit_of(side_a, sep_vertex, e.v),
                params.gamma(0) * e.w);
    }
    // Cut 1: measure the separator wire in the channel basis.
    circ.basis_rotation(c, ch_h.basis);
    circ.measure(c, slot_xh());
    // Cut 2 preparation (outcome-independent, so no B -> A communication).
    circ.reset(c, ch_p.prep_for(0));
    // Layer-1 mixer on A only; the separator's layer-1 mixer runs on B.
    for (int q = 0; q < n_a; ++q) circ.rx(q, 2.0 * params.beta(0));
    // Layer 2 phases on A and A-c edges.
    for (const auto& e : graph.edges) {
        bool u_in = in_a.count(e.u) || e.u == sep_vertex;
        bool v_in = in_a.count(e.v) || e.v == sep_vertex;
        if (!u_in || !v_in) continue;
        circ.zz(qubit_of(side_a, sep_vertex, e.u), qubit_of(side_a, sep_vertex, e.v),
                params.gamma(1) * e.w);
    }
    // Layer-2 mixer on A and the separator wire.
    for (int q = 0; q <= n_a; ++q) circ.rx(q, 2.0 * params.beta(1));
    for (int q = 0; q < n_a; ++q) circ.measure(q, q);
    circ.measure(c, n_a);
    return circ;
}

Circuit FragmentPair::fragment_b(int i_h, int x_h, int i_p) const {
    const auto& ch_h = cut1.channels.at(i_h);
    const auto& ch_p = cut2.channels.at(i_p);
    const int n_b = static_cast<int>(side_b.size());
    const int c = n_b;

    std::set<int> in_b(side_b.begin(), side_b.end());
    Circuit circ;
    circ.n_qubits = n_b + 1;
    circ.n_slots = n_b + 1;
    circ.set_plus_init();
    circ.init[c] = ch_h.prep_for(x_h);  // communicated preparation

    for (const auto& e : graph.edges) {
        bool u_in = in_b.count(e.u) || e.u == sep_vertex;
        bool v_in = in_b.count(e.v) || e.v == sep_vertex;
        if (!u_in || !v_in) continue;
        circ.zz(qubit_of(side_b, sep_vertex, e.u), qubit_of(side_b, sep_vertex, e.v),
                params.gamma(0) * e.w);
    }
    for (int q = 0; q <= n_b; ++q) circ.rx(q, 2.0 * params.beta(0));
    for (const auto& e : graph.edges) {
        bool u_in = in_b.count(e.u) || e.u == sep_vertex;
        bool v_in = in_b.count(e.v) || e.v == sep_vertex;
        if (!u_in || !v_in) continue;
        circ.zz(qubit_of(side_b, sep_vertex, e.u), qubit_of(side_b, sep_vertex, e.v),
                params.gamma(1) * e.w);
    }
    // Cut 2: measure the separator wire in the channel basis.
    circ.basis_rotation(c, ch_p.basis);
    circ.measure(c, slot_xp());
    // Layer-2 mixer on B only; the separator's layer-2 mixer runs on A.
    for (int q = 0; q < n_b; ++q) circ.rx(q, 2.0 * params.beta(1));
    for (int q = 0; q < n_b; ++q) circ.measure(q, q);
    return circ;
}

std::size_t FragmentPair::compose_bitstring(std::size_t a_bits, int c_bit,
                                            std::size_t b_bits) const {
    std::size_t s = 0;
    for (std::size_t k = 0; k < side_a.size(); ++k)
        if ((a_bits >> k) & 1) s |= std::size_t{1} << side_a[k];
    if (c_bit) s |= std::size_t{1} << sep_vertex;
    for (std::size_t k = 0; k < side_b.size(); ++k)
        if ((b_bits >> k) & 1) s |= std::size_t{1} << side_b[k];
    return s;
}

FragmentPair build_fragments(const MaxCutInstance& g, int sep_vertex, const QaoaParams& params,
                             const std::optional<std::pair<std::vector<int>, std::vector<int>>>&
                                 fixed_split) {
    g.validate();
    if (sep_vertex < 0 || sep_vertex >= g.n_vertices)
        throw std::invalid_argument("build_fragments: separator vertex out of range");
    if (params.layers() != 2 || params.values.size() % 2 != 0)
        throw std::invalid_argument("build_fragments: layer count must be 2");

    FragmentPair fp;
    fp.graph = g;
    fp.sep_vertex = sep_vertex;
    fp.params = params;
    fp.cut1 = harada_decomposition();
    fp.cut2 = peng_decomposition();

    if (fixed_split) {
        fp.side_a = fixed_split->first;
        fp.side_b = fixed_split->second;
    } else {
        // Group the components of g - sep_vertex into two balanced sides,
        // largest first. Any grouping is exact; balance minimizes the wider
        // fragment.
        MaxCutInstance reduced = g;
        reduced.edges.clear();
        for (const auto& e : g.edges)
            if (e.u != sep_vertex && e.v != sep_vertex) reduced.edges.push_back(e);
        auto comps = reduced.components();
        std::vector<std::vector<int>> groups;
        for (auto& comp : comps) {
            if (comp.size() == 1 && comp[0] == sep_vertex) continue;
            groups.push_back(std::move(comp));
        }
        if (groups.size() < 2)
            throw std::invalid_argument(
                "build_fragments: separator vertex does not disconnect the graph");
        std::stable_sort(groups.begin(), groups.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
        for (const auto& gset : groups) {
            auto& side = fp.side_a.size() <= fp.side_b.size() ? fp.side_a : fp.side_b;
            side.insert(side.end(), gset.begin(), gset.end());
        }
    }
    std::sort(fp.side_a.begin(), fp.side_a.end());
    std::sort(fp.side_b.begin(), fp.side_b.end());

    // The split must cover V minus the separator, and no edge may join the
    // two sides directly.
    std::vector<int> all = fp.side_a;
    all.insert(all.end(), fp.side_b.begin(), fp.side_b.end());
    all.push_back(sep_vertex);
    std::sort(all.begin(), all.end());
    for (int v = 0; v < g.n_vertices; ++v)
        if (all[v] != v)
            throw std::invalid_argument("build_fragments: sides do not partition the vertex set");
    std::set<int> in_a(fp.side_a.begin(), fp.side_a.end());
    std::set<int> in_b(fp.side_b.begin(), fp.side_b.end());
    for (const auto& e : g.edges) {
        bool cross = (in_a.count(e.u) && in_b.count(e.v)) || (in_b.count(e.u) && in_a.count(e.v));
        if (cross)
            throw std::invalid_argument(
                "build_fragments: vertex is not a separator for the given split");
    }
    return fp;
}

}  // namespace qdecomp
