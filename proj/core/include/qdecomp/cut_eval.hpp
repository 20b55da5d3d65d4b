#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qdecomp/fragments.hpp"
#include "qdecomp/statevector.hpp"

namespace qdecomp {

/// Exact <O> of the cut circuit by enumerating channel pairs and the
/// communicated outcome: sum over (i_h, i_p, x_h) of
/// a_{i_h} a_{i_p} c_{x_p,i_p} p^A(a,c,x_h) p^B(b,x_p) f(a,c,b).
/// Equals the uncut expectation to working precision.
double cut_expectation_exact(const FragmentPair& fp, int qubit_cap = 20);

/// Exact bit-string distribution of the sampling protocol, where channels are
/// drawn with probability |a_{i_h} a_{i_p}| / (kappa_h kappa_p) and signs are
/// dropped. Satisfies p_cut(s) >= p_uncut(s) / (kappa_h kappa_p).
Distribution cut_sampling_distribution(const FragmentPair& fp, int qubit_cap = 20);

struct ShotRecord {
    long shot = 0;
    int i_h = 0;
    int i_p = 0;
    int x_h = 0;
    int x_p = 0;
    std::uint32_t bitstring = 0;  // shrunk-graph vertex order, bit k = vertex k
    double f_value = 0.0;
    double weight = 0.0;  // kappa * sign(a a) * c_{x_p,i_p} * f
};

struct SampleResult {
    std::vector<ShotRecord> shots;
    double estimator_mean = 0.0;  // unbiased estimate of <O>
};

/// Quasi-probability Monte Carlo: channel batch sizes are split up front
/// (exact multinomial), all fragment-A shots run first, then fragment-B shots
/// grouped by (i_h, i_p, x_h) — one-way communication by construction.
SampleResult sample_cut(const FragmentPair& fp, long n_shots, std::uint64_t seed,
                        int qubit_cap = 20);

/// CSV columns: shot_index,i_h,i_p,x_h,x_p,bitstring_s,f_value,signed_weight.
void write_sample_csv(const SampleResult& result, const FragmentPair& fp, std::ostream& os);

struct SamplingOverhead {
    long long n_uncut = 0;  // ceil(ln d / ln(1-p))
    long long n_cut = 0;    // ceil(ln d / ln(1-p/kappa))
    double ratio = 0.0;
};

/// Shots needed to observe a probability-p bit string at least once with
/// confidence 1-delta, uncut versus cut; the ratio is approximately kappa.
SamplingOverhead sampling_overhead(double delta, double p_target, double kappa);

}  // namespace qdecomp
