#include "qdecomp/qpd.hpp"

#include <algorithm>

namespace qdecomp {

namespace {

MeasurePrepareChannel fixed_prep(PauliBasis basis, PureState prep, double coeff,
                                 std::array<int, 2> signs) {
    MeasurePrepareChannel ch;
    ch.basis = basis;
    ch.outcome_dependent = false;
    ch.prep = {prep, prep};
    ch.coeff = coeff;
    ch.outcome_sign = signs;
    return ch;
}

MeasurePrepareChannel outcome_prep(PauliBasis basis, PureState prep0, PureState prep1,
                                   double coeff) {
    MeasurePrepareChannel ch;
    ch.basis = basis;
    ch.outcome_dependent = true;
    ch.prep = {prep0, prep1};
    ch.coeff = coeff;
    ch.outcome_sign = {+1, +1};
    return ch;
}

}  // namespace

QpdDecomposition peng_decomposition() {
    QpdDecomposition d;
    d.communication = false;
    for (PauliBasis b : {PauliBasis::Z, PauliBasis::X, PauliBasis::Y}) {
        // +-1/2 Tr(P rho): prepare each eigenstate with signed readout.
        d.channels.push_back(fixed_prep(b, basis_eigenstate(b, 0), +0.5, {+1, -1}));
        d.channels.push_back(fixed_prep(b, basis_eigenstate(b, 1), -0.5, {+1, -1}));
    }
    // 1/2 Tr(rho) (|0><0| + |1><1|).
    d.channels.push_back(fixed_prep(PauliBasis::Z, basis_eigenstate(PauliBasis::Z, 0), 0.5, {+1, +1}));
    d.channels.push_back(fixed_prep(PauliBasis::Z, basis_eigenstate(PauliBasis::Z, 1), 0.5, {+1, +1}));
    return d;
}

QpdDecomposition harada_decomposition() {
    QpdDecomposition d;
    d.communication = true;
    auto eig = [](PauliBasis b, int x) { return basis_eigenstate(b, x); };
    d.channels.push_back(outcome_prep(PauliBasis::Z, eig(PauliBasis::Z, 0), eig(PauliBasis::Z, 1), 1.0));
    d.channels.push_back(outcome_prep(PauliBasis::X, eig(PauliBasis::X, 0), eig(PauliBasis::X, 1), 0.5));
    d.channels.push_back(outcome_prep(PauliBasis::X, eig(PauliBasis::X, 1), eig(PauliBasis::X, 0), -0.5));
    d.channels.push_back(outcome_prep(PauliBasis::Y, eig(PauliBasis::Y, 0), eig(PauliBasis::Y, 1), 0.5));
    d.channels.push_back(outcome_prep(PauliBasis::Y, eig(PauliBasis::Y, 1), eig(PauliBasis::Y, 0), -0.5));
    return d;
}

namespace {

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 outer(const PureState& s) {
    Mat2 m;
    const Complex a[2] = {s.amp0, s.amp1};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = a[i] * std::conj(a[j]);
    return m;
}

Complex overlap(const PureState& s, const Mat2& rho) {
    // <s| rho |s>
    const Complex a[2] = {s.amp0, s.amp1};
    Complex out{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out += std::conj(a[i]) * rho[i][j] * a[j];
    return out;
}

}  // namespace

QpdVerification verify_qpd(const QpdDecomposition& d) {
    const double r = 1.0 / std::sqrt(2.0);
    const PureState spanning[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, Complex(0.0, r)}};

    QpdVerification v;
    for (const auto& input : spanning) {
        Mat2 rho = outer(input);
        Mat2 acc{};
        for (const auto& ch : d.channels) {
            for (int x = 0; x < 2; ++x) {
                Complex weight = ch.coeff * static_cast<double>(ch.outcome_sign[x]) *
                                 overlap(basis_eigenstate(ch.basis, x), rho);
                Mat2 prep = outer(ch.prep_for(x));
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) acc[i][j] += weight * prep[i][j];
            }
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                v.max_deviation = std::max(v.max_deviation, std::abs(acc[i][j] - rho[i][j]));
    }
    v.pass = v.max_deviation < 1e-12;
    return v;
}

double expectation_overhead(double kappa, int n_cuts) {
    return std::pow(kappa * kappa, n_cuts);
}

}  // namespace qdecomp
