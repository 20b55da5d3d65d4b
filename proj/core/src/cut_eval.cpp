#include "qdecomp/cut_eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "qdecomp/rng.hpp"

namespace qdecomp {

namespace {

// f(s) over the shrunk graph for every bit string, bit k = vertex k.
std::vector<double> f_table(const MaxCutInstance& g) {
    std::vector<double> f(std::size_t{1} << g.n_vertices, 0.0);
    for (std::size_t s = 0; s < f.size(); ++s)
        for (const auto& e : g.edges)
            if (((s >> e.u) & 1) != ((s >> e.v) & 1)) f[s] += e.w;
    return f;
}

int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

}  // namespace

double cut_expectation_exact(const FragmentPair& fp, int qubit_cap) {
    const auto f = f_table(fp.graph);
    const int n_a = static_cast<int>(fp.side_a.size());
    const int n_b = static_cast<int>(fp.side_b.size());

    long double total = 0.0L;
    for (int ih = 0; ih < static_cast<int>(fp.cut1.channels.size()); ++ih) {
        const double a_h = fp.cut1.channels[ih].coeff;
        for (int ip = 0; ip < static_cast<int>(fp.cut2.channels.size()); ++ip) {
            const double a_p = fp.cut2.channels[ip].coeff;
            const auto& signs = fp.cut2.channels[ip].outcome_sign;
            for (int xh = 0; xh < 2; ++xh) {
                BranchResult branch =
                    simulate_branch(fp.fragment_a(ih, ip), {{fp.slot_xh(), xh}}, qubit_cap);
                if (branch.probability == 0.0) continue;
                Distribution pb = simulate(fp.fragment_b(ih, xh, ip), qubit_cap);

                // conditional slots: a bits then the final separator bit.
                long double inner = 0.0L;
                for (std::size_t ac = 0; ac < branch.conditional.p.size(); ++ac) {
                    double pa = branch.conditional.p[ac];
                    if (pa == 0.0) continue;
                    std::size_t a_bits = ac & ((std::size_t{1} << n_a) - 1);
                    int c_bit = static_cast<int>((ac >> n_a) & 1);
                    for (std::size_t bx = 0; bx < pb.p.size(); ++bx) {
                        double pbv = pb.p[bx];
                        if (pbv == 0.0) continue;
                        std::size_t b_bits = bx & ((std::size_t{1} << n_b) - 1);
                        int xp = static_cast<int>((bx >> n_b) & 1);
                        std::size_t s = fp.compose_bitstring(a_bits, c_bit, b_bits);
                        inner += static_cast<long double>(pa) * pbv * signs[xp] * f[s];
                    }
                }
                total += static_cast<long double>(a_h) * a_p * branch.probability * inner;
            }
        }
    }
    return static_cast<double>(total);
}

Distribution cut_sampling_distribution(const FragmentPair& fp, int qubit_cap) {
    const int n_a = static_cast<int>(fp.side_a.size());
    const int n_b = static_cast<int>(fp.side_b.size());
    const double kappa = fp.cut1.kappa() * fp.cut2.kappa();

    Distribution out;
    out.n_bits = fp.graph.n_vertices;
    out.p.assign(std::size_t{1} << fp.graph.n_vertices, 0.0);

    for (int ih = 0; ih < static_cast<int>(fp.cut1.channels.size()); ++ih) {
        for (int ip = 0; ip < static_cast<int>(fp.cut2.channels.size()); ++ip) {
            const double weight = std::abs(fp.cut1.channels[ih].coeff *
                                           fp.cut2.channels[ip].coeff) /
                                  kappa;
            if (weight == 0.0) continue;
            for (int xh = 0; xh < 2; ++xh) {
                BranchResult branch =
                    simulate_branch(fp.fragment_a(ih, ip), {{fp.slot_xh(), xh}}, qubit_cap);
                if (branch.probability == 0.0) continue;
                Distribution pb = simulate(fp.fragment_b(ih, xh, ip), qubit_cap);
                for (std::size_t ac = 0; ac < branch.conditional.p.size(); ++ac) {
                    double pa = branch.conditional.p[ac] * branch.probability;
                    if (pa == 0.0) continue;
                    std::size_t a_bits = ac & ((std::size_t{1} << n_a) - 1);
                    int c_bit = static_cast<int>((ac >> n_a) & 1);
                    for (std::size_t bx = 0; bx < pb.p.size(); ++bx) {
                        if (pb.p[bx] == 0.0) continue;
                        std::size_t b_bits = bx & ((std::size_t{1} << n_b) - 1);
                        std::size_t s = fp.compose_bitstring(a_bits, c_bit, b_bits);
                        out.p[s] += weight * pa * pb.p[bx];
                    }
                }
            }
        }
    }
    return out;
}

namespace {

// Inverse-CDF draw from a distribution; cdf is the inclusive prefix sum.
std::size_t draw(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
    if (it == cdf.end()) --it;
    return static_cast<std::size_t>(it - cdf.begin());
}

std::vector<double> prefix_sum(const std::vector<double>& p) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    return cdf;
}

}  // namespace

SampleResult sample_cut(const FragmentPair& fp, long n_shots, std::uint64_t seed, int qubit_cap) {
    if (n_shots <= 0) throw std::invalid_argument("sample_cut: need at least one shot");
    if (!verify_qpd(fp.cut1).pass || !verify_qpd(fp.cut2).pass)
        throw std::runtime_error("sample_cut: decomposition failed verification");

    const int n_ch_h = static_cast<int>(fp.cut1.channels.size());
    const int n_ch_p = static_cast<int>(fp.cut2.channels.size());
    const int n_pairs = n_ch_h * n_ch_p;
    const int n_a = static_cast<int>(fp.side_a.size());
    const int n_b = static_cast<int>(fp.side_b.size());
    const double kappa = fp.cut1.kappa() * fp.cut2.kappa();
    const auto f = f_table(fp.graph);

    // Exact multinomial split of the shot budget over channel pairs.
    std::vector<double> pair_cdf(n_pairs);
    {
        double acc = 0.0;
        for (int k = 0; k < n_pairs; ++k) {
            int ih = k / n_ch_p, ip = k % n_ch_p;
            acc += std::abs(fp.cut1.channels[ih].coeff * fp.cut2.channels[ip].coeff) / kappa;
            pair_cdf[k] = acc;
        }
    }
    Rng channel_rng = Rng(seed).substream("channels");
    std::vector<long> batch(n_pairs, 0);
    for (long i = 0; i < n_shots; ++i) ++batch[draw(pair_cdf, channel_rng.uniform())];

    SampleResult result;
    result.shots.resize(n_shots);

    // Phase 1: all fragment-A shots, batched per channel pair.
    Rng rng_a = Rng(seed).substream("fragment-a");
    long shot_index = 0;
    std::map<std::tuple<int, int, int>, std::vector<long>> groups;  // (ih, ip, xh) -> shots
    for (int k = 0; k < n_pairs; ++k) {
        if (batch[k] == 0) continue;
        int ih = k / n_ch_p, ip = k % n_ch_p;
        Distribution pa = simulate(fp.fragment_a(ih, ip), qubit_cap);
        auto cdf = prefix_sum(pa.p);
        for (long r = 0; r < batch[k]; ++r) {
            std::size_t outcome = draw(cdf, rng_a.uniform());
            ShotRecord& rec = result.shots[shot_index];
            rec.shot = shot_index;
            rec.i_h = ih;
            rec.i_p = ip;
            rec.x_h = static_cast<int>((outcome >> (n_a + 1)) & 1);
            std::size_t a_bits = outcome & ((std::size_t{1} << n_a) - 1);
            int c_bit = static_cast<int>((outcome >> n_a) & 1);
            rec.bitstring = static_cast<std::uint32_t>(fp.compose_bitstring(a_bits, c_bit, 0));
            groups[{ih, ip, rec.x_h}].push_back(shot_index);
            ++shot_index;
        }
    }

    // Phase 2: fragment-B shots grouped by the communicated (i_h, i_p, x_h).
    Rng rng_b = Rng(seed).substream("fragment-b");
    long double mean_acc = 0.0L;
    for (const auto& [key, members] : groups) {
        auto [ih, ip, xh] = key;
        Distribution pb = simulate(fp.fragment_b(ih, xh, ip), qubit_cap);
        auto cdf = prefix_sum(pb.p);
        const auto& signs = fp.cut2.channels[ip].outcome_sign;
        double pair_sign = sign_of(fp.cut1.channels[ih].coeff * fp.cut2.channels[ip].coeff);
        for (long idx : members) {
            std::size_t outcome = draw(cdf, rng_b.uniform());
            ShotRecord& rec = result.shots[idx];
            rec.x_p = static_cast<int>((outcome >> n_b) & 1);
            std::size_t b_bits = outcome & ((std::size_t{1} << n_b) - 1);
            for (std::size_t k2 = 0; k2 < static_cast<std::size_t>(n_b); ++k2)
                if ((b_bits >> k2) & 1) rec.bitstring |= std::uint32_t{1} << fp.side_b[k2];
            rec.f_value = f[rec.bitstring];
            rec.weight = kappa * pair_sign * signs[rec.x_p] * rec.f_value;
            mean_acc += rec.weight;
        }
    }
    result.estimator_mean = static_cast<double>(mean_acc / n_shots);
    return result;
}

void write_sample_csv(const SampleResult& result, const FragmentPair& fp, std::ostream& os) {
    os << "shot_index,i_h,i_p,x_h,x_p,bitstring_s,f_value,signed_weight\n";
    os.precision(17);
    const int n = fp.graph.n_vertices;
    for (const auto& rec : result.shots) {
        os << rec.shot << ',' << rec.i_h << ',' << rec.i_p << ',' << rec.x_h << ',' << rec.x_p
           << ',';
        for (int k = 0; k < n; ++k) os << ((rec.bitstring >> k) & 1);
        os << ',' << rec.f_value << ',' << rec.weight << '\n';
    }
}

SamplingOverhead sampling_overhead(double delta, double p_target, double kappa) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("sampling_overhead: delta must be in (0,1)");
    if (!(p_target > 0.0 && p_target <= 1.0))
        throw std::invalid_argument("sampling_overhead: p_target must be in (0,1]");
    if (!(kappa >= 1.0)) throw std::invalid_argument("sampling_overhead: kappa must be >= 1");

    auto shots = [&](double p) -> long long {
        if (p >= 1.0) return 1;  // observed on the first shot
        double raw = std::log(delta) / std::log1p(-p);
        return static_cast<long long>(std::max(1.0, std::ceil(raw - 1e-12)));
    };
    SamplingOverhead out;
    out.n_uncut = shots(p_target);
    out.n_cut = shots(p_target / kappa);
    out.ratio = static_cast<double>(out.n_cut) / static_cast<double>(out.n_uncut);
    return out;
}

}  // namespace qdecomp
