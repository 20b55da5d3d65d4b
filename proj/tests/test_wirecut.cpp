#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qdecomp/cut_eval.hpp"
#include "qdecomp/rng.hpp"

using namespace qdecomp;

namespace {

struct SeparatedInstance {
    MaxCutInstance g;
    int c = 0;
    std::vector<int> side_a, side_b;
    QaoaParams params;
};

// A - c - B layout: vertices [0, ka) on side A, ka is the separator, the
// rest on side B. Edges only within A+c and B+c.
SeparatedInstance make_separated(int ka, int kb, std::uint64_t seed) {
    Rng rng(seed);
    SeparatedInstance inst;
    inst.c = ka;
    inst.g.n_vertices = ka + kb + 1;
    for (int v = 0; v < ka; ++v) inst.side_a.push_back(v);
    for (int v = ka + 1; v < ka + kb + 1; ++v) inst.side_b.push_back(v);

    auto add_random = [&](const std::vector<int>& verts) {
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                if (rng.uniform() > 0.6) continue;
                double w = rng.uniform(-1.5, 1.5);
                if (std::abs(w) < 0.1) w = 0.1;
                inst.g.add_edge(verts[i], verts[j], w);
            }
    };
    std::vector<int> ac = inst.side_a;
    ac.push_back(inst.c);
    std::vector<int> bc = inst.side_b;
    bc.push_back(inst.c);
    add_random(ac);
    add_random(bc);

    inst.params.values = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    return inst;
}

FragmentPair fragments_of(const SeparatedInstance& inst) {
    return build_fragments(inst.g, inst.c, inst.params,
                           std::make_pair(inst.side_a, inst.side_b));
}

double uncut_expectation(const SeparatedInstance& inst) {
    return expectation_f(inst.g, simulate(build_qaoa_circuit(inst.g, inst.params)));
}

}  // namespace

TEST_CASE("kappa constants and overhead formulas") {
    QpdDecomposition peng = peng_decomposition();
    QpdDecomposition harada = harada_decomposition();
    CHECK(peng.kappa() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(harada.kappa() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(peng.channels.size() == 8);
    CHECK(harada.channels.size() == 5);
    CHECK(!peng.communication);
    CHECK(harada.communication);
    CHECK(harada.kappa() * peng.kappa() == doctest::Approx(12.0));

    CHECK(expectation_overhead(4.0, 1) == doctest::Approx(16.0));
    CHECK(expectation_overhead(4.0, 3) == doctest::Approx(std::pow(16.0, 3)));
    CHECK(expectation_overhead(3.0, 2) == doctest::Approx(81.0));
    // Joint protocol: kappa 12 per layer pair, overhead 12^p for even p.
    CHECK(expectation_overhead(12.0, 1) == doctest::Approx(144.0));  // p = 2
}

TEST_CASE("qpd identities verify to 1e-12") {
    QpdVerification vp = verify_qpd(peng_decomposition());
    CHECK(vp.pass);
    CHECK(vp.max_deviation < 1e-12);
    QpdVerification vh = verify_qpd(harada_decomposition());
    CHECK(vh.pass);
    CHECK(vh.max_deviation < 1e-12);

    // Harada channels must carry their signs in the coefficients only.
    for (const auto& ch : harada_decomposition().channels) {
        CHECK(ch.outcome_sign[0] == +1);
        CHECK(ch.outcome_sign[1] == +1);
        CHECK(ch.outcome_dependent);
    }
}

TEST_CASE("a tampered decomposition fails verification") {
    QpdDecomposition broken = peng_decomposition();
    broken.channels[0].outcome_sign[1] = +1;  // flip one sign
    QpdVerification v = verify_qpd(broken);
    CHECK(!v.pass);
    CHECK(v.max_deviation >= 0.5);
}

TEST_CASE("fragment shapes and guards") {
    SeparatedInstance inst = make_separated(6, 6, 77);
    FragmentPair fp = fragments_of(inst);
    CHECK(fp.n_qubits_a() == 7);
    CHECK(fp.n_qubits_b() == 7);

    QaoaParams odd{{0.1, 0.2}};
    CHECK_THROWS_AS(build_fragments(inst.g, inst.c, odd), std::invalid_argument);

    // A vertex inside A is not a separator.
    CHECK_THROWS_AS(build_fragments(inst.g, 0, inst.params), std::invalid_argument);
}

TEST_CASE("automatic side split balances components") {
    SeparatedInstance inst = make_separated(4, 3, 11);
    FragmentPair fp = build_fragments(inst.g, inst.c, inst.params);
    CHECK(fp.side_a.size() + fp.side_b.size() == 7);
    // Exactness does not depend on the grouping.
    CHECK(cut_expectation_exact(fp) == doctest::Approx(uncut_expectation(inst)).epsilon(1e-9));
}

TEST_CASE("one-way schedule structure") {
    SeparatedInstance inst = make_separated(3, 3, 5);
    FragmentPair fp = fragments_of(inst);
    // Fragment A: the cut-1 measurement precedes the single reset, which
    // precedes the final separator measurement; nothing references x_p.
    Circuit a = fp.fragment_a(0, 0);
    int measure_xh = -1, reset_at = -1, final_c = -1;
    for (int i = 0; i < static_cast<int>(a.ops.size()); ++i) {
        if (const auto* m = std::get_if<OpMeasure>(&a.ops[i])) {
            if (m->slot == fp.slot_xh()) measure_xh = i;
            if (m->slot == static_cast<int>(fp.side_a.size())) final_c = i;
        }
        if (std::holds_alternative<OpReset>(a.ops[i])) reset_at = i;
    }
    REQUIRE(measure_xh >= 0);
    REQUIRE(reset_at >= 0);
    REQUIRE(final_c >= 0);
    CHECK(measure_xh < reset_at);
    CHECK(reset_at < final_c);

    // Fragment B honestly depends on the communicated bit.
    Circuit b0 = fp.fragment_b(1, 0, 0);
    Circuit b1 = fp.fragment_b(1, 1, 0);
    bool differs = false;
    for (int q = 0; q < b0.n_qubits; ++q)
        differs |= b0.init[q].amp0 != b1.init[q].amp0 || b0.init[q].amp1 != b1.init[q].amp1;
    CHECK(differs);
}

TEST_CASE("cut expectation reconstructs the uncut value") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        SeparatedInstance inst = make_separated(2 + seed % 4, 2 + (seed / 2) % 4, 1000 + seed);
        FragmentPair fp = fragments_of(inst);
        double cut_val = cut_expectation_exact(fp);
        double uncut = uncut_expectation(inst);
        CHECK(std::abs(cut_val - uncut) < 1e-9);
        ++checked;
    }
    CHECK(checked == 12);
}

TEST_CASE("zero angles give half the total weight and a uniform p_cut") {
    SeparatedInstance inst = make_separated(3, 4, 21);
    inst.params.values = {0.0, 0.0, 0.0, 0.0};
    FragmentPair fp = fragments_of(inst);
    CHECK(cut_expectation_exact(fp) ==
          doctest::Approx(inst.g.total_weight() / 2.0).epsilon(1e-9));

    Distribution pc = cut_sampling_distribution(fp);
    CHECK(pc.sum() == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : pc.p) CHECK(v == doctest::Approx(1.0 / pc.p.size()).epsilon(1e-9));
}

TEST_CASE("sampling distribution floor and normalization") {
    for (std::uint64_t seed : {31ull, 32ull, 33ull, 34ull}) {
        SeparatedInstance inst = make_separated(3, 3, seed);
        FragmentPair fp = fragments_of(inst);
        Distribution pc = cut_sampling_distribution(fp);
        Distribution pu = simulate(build_qaoa_circuit(inst.g, inst.params));
        REQUIRE(pc.p.size() == pu.p.size());
        CHECK(pc.sum() == doctest::Approx(1.0).epsilon(1e-10));
        const double kappa = fp.cut1.kappa() * fp.cut2.kappa();
        for (std::size_t s = 0; s < pc.p.size(); ++s) {
            CHECK(pc.p[s] >= pu.p[s] / kappa - 1e-12);
            CHECK(pc.p[s] >= -1e-12);
            CHECK(pc.p[s] <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("no c-B edges still reconstructs exactly") {
    SeparatedInstance inst;
    inst.c = 2;
    inst.g.n_vertices = 5;
    inst.side_a = {0, 1};
    inst.side_b = {3, 4};
    inst.g.add_edge(0, 1, 0.8);
    inst.g.add_edge(0, 2, -1.2);  // c coupled to A only
    inst.g.add_edge(1, 2, 0.5);
    inst.g.add_edge(3, 4, 1.4);
    inst.params.values = {0.7, -0.3, 0.45, 1.1};
    FragmentPair fp = fragments_of(inst);
    CHECK(cut_expectation_exact(fp) == doctest::Approx(uncut_expectation(inst)).epsilon(1e-9));
}

TEST_CASE("monte carlo estimator agrees with the exact cut expectation") {
    SeparatedInstance inst = make_separated(3, 3, 99);
    FragmentPair fp = fragments_of(inst);
    double exact = cut_expectation_exact(fp);

    const long n = 1'000'000;
    SampleResult res = sample_cut(fp, n, 4242);
    REQUIRE(res.shots.size() == n);

    // Standard error from the sample variance of the signed weights.
    long double var_acc = 0.0L;
    for (const auto& rec : res.shots) {
        long double d = rec.weight - res.estimator_mean;
        var_acc += d * d;
    }
    double se = std::sqrt(static_cast<double>(var_acc) / (n - 1) / n);
    CHECK(std::abs(res.estimator_mean - exact) <= 3.0 * se);
}

TEST_CASE("single shot carries the full kappa magnitude") {
    SeparatedInstance inst = make_separated(2, 2, 7);
    FragmentPair fp = fragments_of(inst);
    SampleResult res = sample_cut(fp, 1, 3);
    REQUIRE(res.shots.size() == 1);
    const auto& rec = res.shots[0];
    CHECK(std::abs(rec.weight) == doctest::Approx(12.0 * std::abs(rec.f_value)).epsilon(1e-12));
    // f matches the bit string it reports.
    std::vector<int> side(inst.g.n_vertices);
    for (int v = 0; v < inst.g.n_vertices; ++v) side[v] = (rec.bitstring >> v) & 1;
    CHECK(rec.f_value == doctest::Approx(cut_weight(inst.g, side)).epsilon(1e-12));
}

TEST_CASE("empirical frequencies approach the exact p_cut") {
    SeparatedInstance inst = make_separated(3, 3, 55);
    FragmentPair fp = fragments_of(inst);
    Distribution pc = cut_sampling_distribution(fp);

    auto tv_at = [&](long n, std::uint64_t seed) {
        SampleResult res = sample_cut(fp, n, seed);
        std::vector<double> freq(pc.p.size(), 0.0);
        for (const auto& rec : res.shots) freq[rec.bitstring] += 1.0 / n;
        double tv = 0.0;
        for (std::size_t s = 0; s < pc.p.size(); ++s) tv += std::abs(freq[s] - pc.p[s]);
        return tv / 2.0;
    };
    double tv4 = tv_at(10'000, 1);
    double tv6 = tv_at(1'000'000, 1);
    CHECK(tv6 < tv4);
    CHECK(tv6 < 0.02);
}

TEST_CASE("estimator stays inside the three-sigma band across repeats") {
    SeparatedInstance inst = make_separated(3, 3, 123);
    FragmentPair fp = fragments_of(inst);
    double exact = cut_expectation_exact(fp);

    const int runs = 50;
    const long n = 100'000;
    int inside = 0;
    for (int r = 0; r < runs; ++r) {
        SampleResult res = sample_cut(fp, n, 9000 + r);
        long double var_acc = 0.0L;
        for (const auto& rec : res.shots) {
            long double d = rec.weight - res.estimator_mean;
            var_acc += d * d;
        }
        double se = std::sqrt(static_cast<double>(var_acc) / (n - 1) / n);
        if (std::abs(res.estimator_mean - exact) <= 3.0 * se) ++inside;
    }
    CHECK(inside >= 45);
}

TEST_CASE("sample stream is deterministic and well-formed") {
    SeparatedInstance inst = make_separated(2, 3, 8);
    FragmentPair fp = fragments_of(inst);
    SampleResult a = sample_cut(fp, 500, 77);
    SampleResult b = sample_cut(fp, 500, 77);
    std::ostringstream ca, cb;
    write_sample_csv(a, fp, ca);
    write_sample_csv(b, fp, cb);
    CHECK(ca.str() == cb.str());
    CHECK(ca.str().substr(0, 60).find("shot_index,i_h,i_p,x_h,x_p,bitstring_s,f_value,signed_weight") == 0);
    CHECK(sample_cut(fp, 500, 78).shots[0].bitstring != a.shots[0].bitstring);

    CHECK_THROWS_AS(sample_cut(fp, 0, 1), std::invalid_argument);
}

TEST_CASE("sampling overhead ceilings") {
    SamplingOverhead triv = sampling_overhead(0.01, 0.5, 1.0);
    CHECK(triv.n_uncut == 7);
    CHECK(triv.n_cut == 7);
    CHECK(triv.ratio == doctest::Approx(1.0));

    SamplingOverhead mid = sampling_overhead(0.01, 0.01, 12.0);
    CHECK(std::abs(mid.ratio - 12.0) / 12.0 < 0.10);

    // p -> 1: one uncut shot suffices while the cut circuit needs about
    // kappa ln(1/delta) shots.
    SamplingOverhead edge = sampling_overhead(0.1, 1.0, 12.0);
    CHECK(edge.n_uncut == 1);
    double predicted = std::log(1.0 / 0.1) * 12.0;
    CHECK(std::abs(edge.n_cut - predicted) <= predicted * 0.05 + 1.0);

    CHECK(sampling_overhead(0.5, 1.0, 1.0).n_cut == 1);  // kappa = 1 limit
    CHECK_THROWS_AS(sampling_overhead(0.0, 0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(sampling_overhead(0.1, 1.5, 2.0), std::invalid_argument);
}
