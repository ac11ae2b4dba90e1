// Copyright 2026 The transym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "test_util.hpp"
#include "transym/symmetry.hpp"

using namespace transym;
using std::numbers::pi;

namespace {

const SystemSpec qubit = SystemSpec::diagonal({0, 1});
Mat plus() { return Mat::Constant(2, 2, 0.5); }

Channel hadamard_conjugation() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return Channel::unitary(qubit, h / std::sqrt(2.0));
}

SystemSpec random_system(int d, Rng &rng) {
    std::vector<int> spec(d);
    for (auto &s : spec) s = rng.integer(-2, 2);
    return SystemSpec(spec, random_unitary(d, rng));
}

Channel random_channel(const SystemSpec &in, const SystemSpec &out, Rng &rng) {
    const int din = in.dim(), dout = out.dim();
    Mat g = ginibre(din * dout, din * dout, rng);
    Mat j0 = g * g.adjoint();
    Mat x = choi_input_marginal(j0, din, dout);
    Mat w = oracle::kron(Mat::Identity(dout, dout), oracle::sqrtm(x).inverse());
    return Channel(in, out, w * j0 * w, 1e-8);
}

}  // namespace

TEST(TimeTranslate, Examples) {
    Mat diag = Mat::Zero(2, 2);
    diag(0, 0) = 0.3;
    diag(1, 1) = 0.7;
    EXPECT_LT(oracle::max_abs(time_translate(diag, qubit, 1.234) - diag), 1e-15);
    Mat minus = Mat::Constant(2, 2, 0.5);
    minus(0, 1) = minus(1, 0) = -0.5;
    EXPECT_LT(oracle::max_abs(time_translate(plus(), qubit, pi) - minus), 1e-15);
    EXPECT_LT(oracle::max_abs(time_translate(plus(), qubit, 0.0) - plus()), 1e-15);
}

TEST(SymmetricState, Examples) {
    auto v = is_symmetric_state(Mat::Identity(2, 2) / 2.0, qubit);
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.witness, 0.0);
    v = is_symmetric_state(plus(), qubit);
    EXPECT_FALSE(v.holds);
    EXPECT_NEAR(v.witness, 0.5, 1e-15);
    EXPECT_TRUE(is_symmetric_state(DensityMatrix::basis_state(2, 1), qubit).holds);
}

TEST(DualSystem, Examples) {
    auto dual = dual_system(qubit);
    Mat expect = Mat::Zero(2, 2);
    expect(1, 1) = -1.0;
    EXPECT_LT(oracle::max_abs(dual.hamiltonian() - expect), 1e-15);

    Rng rng(1);
    auto sys = random_system(3, rng);
    auto d = dual_system(sys);
    EXPECT_LT(oracle::max_abs(d.hamiltonian() + sys.hamiltonian().transpose()), 1e-12);
    EXPECT_LT(oracle::max_abs(dual_system(d).hamiltonian() - sys.hamiltonian()), 1e-12);
    Vec psi = maximally_entangled_state(3).vec();
    for (int i = 0; i < 20; ++i) {
        double t = rng.uniform(-10, 10);
        Vec moved = oracle::kron(sys.translation(t), d.translation(t)) * psi;
        EXPECT_LT((moved - psi).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Covariance, Examples) {
    EXPECT_TRUE(is_covariant_channel(Channel::unitary(qubit, qubit.translation(0.77))).holds);
    EXPECT_TRUE(is_covariant_channel(Channel::dephasing(SystemSpec::diagonal({0, 1, 1, 2}))).holds);
    auto v = is_covariant_channel(hadamard_conjugation());
    EXPECT_FALSE(v.holds);
    EXPECT_GT(v.witness, 0.4);
}

TEST(Covariance, SectorsAreCompleteAndOrthogonal) {
    Rng rng(2);
    CovarianceSector cs(random_system(2, rng), random_system(3, rng));
    Mat sum = Mat::Zero(6, 6);
    for (const auto &[label, p] : cs.sectors) {
        EXPECT_LT(oracle::max_abs(p * p - p), 1e-12);
        sum += p;
        for (const auto &[l2, q] : cs.sectors)
            if (l2 != label) EXPECT_LT(oracle::max_abs(p * q), 1e-12);
    }
    EXPECT_LT(oracle::max_abs(sum - Mat::Identity(6, 6)), 1e-10);
}

// Group average over n equally spaced translations; exact once n exceeds the
// largest |label| spread on the Choi space.
Mat averaged_action(const Channel &ch, const Mat &x, int n) {
    Mat acc = Mat::Zero(ch.dout(), ch.dout());
    for (int j = 0; j < n; ++j) {
        double t = 2 * pi * j / n;
        Mat ui = oracle::translation(ch.input().hamiltonian(), t);
        Mat uo = oracle::translation(ch.output().hamiltonian(), t);
        acc += uo.adjoint() * ch.apply(ui * x * ui.adjoint()) * uo;
    }
    return acc / static_cast<double>(n);
}

TEST(Twirl, HadamardMatchesGroupAverage) {
    auto tw = twirl_channel(hadamard_conjugation());
    EXPECT_TRUE(is_covariant_channel(tw, 1e-10).holds);
    Mat out = tw.apply(plus());
    Mat expect(2, 2);
    expect << 0.5, -0.25, -0.25, 0.5;
    EXPECT_LT(oracle::max_abs(out - expect), 1e-12);
    EXPECT_LT(oracle::max_abs(out - averaged_action(hadamard_conjugation(), plus(), 8)), 1e-12);
}

TEST(Twirl, MatchesGroupAverage) {
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        auto in = random_system(rng.integer(1, 3), rng), out = random_system(rng.integer(1, 3), rng);
        auto ch = random_channel(in, out, rng);
        Mat x = oracle::random_state(in.dim(), rng);
        EXPECT_LT(oracle::max_abs(twirl_channel(ch).apply(x) - averaged_action(ch, x, 17)), 1e-10);
    }
}

TEST(Twirl, CovariantIdempotentAndFixesCovariant) {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        auto in = random_system(rng.integer(1, 3), rng), out = random_system(rng.integer(1, 3), rng);
        auto ch = random_channel(in, out, rng);
        auto tw = twirl_channel(ch);
        ASSERT_TRUE(is_covariant_channel(tw, 1e-9).holds) << "trial " << trial;
        EXPECT_LT(oracle::max_abs(twirl_channel(tw).choi() - tw.choi()), 1e-12);
    }
    auto cov = random_covariant_channel(qubit, SystemSpec::diagonal({0, 1, 2}), rng);
    EXPECT_LT(oracle::max_abs(twirl_channel(cov).choi() - cov.choi()), 1e-10);
}

TEST(Twirl, States) {
    EXPECT_LT(oracle::max_abs(twirl_state(DensityMatrix(plus()), qubit).mat() - Mat::Identity(2, 2) / 2.0), 1e-15);
    Rng rng(4);
    auto sys = random_system(3, rng);
    for (int trial = 0; trial < 200; ++trial) {
        DensityMatrix r(oracle::random_state(3, rng));
        auto tw = twirl_state(r, sys);
        EXPECT_NEAR(tw.mat().trace().real(), 1.0, 1e-12);
        EXPECT_TRUE(is_symmetric_state(tw, sys, 1e-12).holds);
        EXPECT_LT(oracle::max_abs(twirl_state(tw, sys).mat() - tw.mat()), 1e-12);
    }
}

TEST(RandomCovariantChannel, ContractAndSymmetryPreservation) {
    Rng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        auto in = random_system(rng.integer(1, 3), rng), out = random_system(rng.integer(1, 3), rng);
        auto ch = random_covariant_channel(in, out, rng);
        ASSERT_LT(channel_violation(ch.choi(), ch.din(), ch.dout()), 1e-9);
        ASSERT_TRUE(is_covariant_channel(ch, 1e-9).holds);
        auto sym = twirl_state(DensityMatrix(oracle::random_state(in.dim(), rng)), in);
        EXPECT_LT(is_symmetric_state(ch.apply(sym.mat()), out).witness, 1e-8);
    }
    Rng a(9), b(9);
    EXPECT_EQ(random_covariant_channel(qubit, qubit, a).choi(), random_covariant_channel(qubit, qubit, b).choi());
}

TEST(MeasureFt, Examples) {
    Mat diag = Mat::Identity(2, 2) / 2.0;
    EXPECT_NEAR(measure_ft(diag, qubit, 0.9), 0.0, 1e-12);
    EXPECT_NEAR(measure_ft(plus(), qubit, pi / 2), 1.0 - std::cos(pi / 4), 1e-9);
    EXPECT_NEAR(measure_ft(plus(), qubit, pi), 1.0, 1e-9);
}

TEST(MeasureFt, MatchesReferenceAndIsEvenInT) {
    Rng rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        int d = rng.integer(2, 4);
        auto sys = random_system(d, rng);
        Mat r = oracle::random_state(d, rng);
        double t = rng.uniform(-4, 4);
        double f = measure_ft(r, sys, t);
        EXPECT_NEAR(f, measure_ft(r, sys, -t), 1e-9);
        if (trial < 50) EXPECT_NEAR(f, oracle::ft(r, sys.hamiltonian(), t), 1e-8);
    }
}

TEST(Skew, Examples) {
    EXPECT_NEAR(skew_information(DensityMatrix::basis_state(2, 0), qubit), 0.0, 1e-12);
    EXPECT_NEAR(skew_information(plus(), qubit), 0.25, 1e-12);
    for (double c : {0.1, 0.5, 0.9, 0.999}) {
        Mat r = c * plus() + (1 - c) * Mat::Identity(2, 2) / 2.0;
        EXPECT_NEAR(skew_information(r, qubit), 0.25 * (1 - std::sqrt(1 - c * c)), 1e-12);
    }
}

TEST(Skew, MatchesSpectralFormulaAndPureVariance) {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int d = rng.integer(2, 4);
        auto sys = random_system(d, rng);
        Mat r = oracle::random_state(d, rng);
        EXPECT_NEAR(skew_information(r, sys), oracle::skew(r, sys.hamiltonian()), 1e-10);
        Mat p = oracle::random_pure(d, rng);
        const Mat &h = sys.hamiltonian();
        double var = (p * h * h).trace().real() - std::pow((p * h).trace().real(), 2);
        EXPECT_NEAR(skew_information(p, sys), var, 1e-9);
    }
}

TEST(Monotonicity, RandomCovariantChannels) {
    Rng rng(8);
    int violations = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto in = random_system(rng.integer(2, 3), rng);
        auto out = trial % 2 ? in : random_system(rng.integer(2, 3), rng);
        auto ch = random_covariant_channel(in, out, rng);
        Mat r = oracle::random_state(in.dim(), rng);
        Mat s = ch.apply(r);
        double t = rng.uniform(0, 2 * pi);
        if (measure_ft(s, out, t) > measure_ft(r, in, t) + 1e-9) ++violations;
        if (trial % 2 && skew_information(s, out) > skew_information(r, in) + 1e-9) ++violations;
    }
    EXPECT_EQ(violations, 0);
}

TEST(ProductIdentity, Examples) {
    DensityMatrix p(plus());
    DensityMatrix inc = DensityMatrix::basis_state(2, 1);
    Rng rng(9);
    DensityMatrix s(oracle::random_state(2, rng));
    EXPECT_LE(product_ft_identity_check(inc, s, qubit, qubit, 0.7), 1e-9);
    EXPECT_LE(product_ft_identity_check(p, p, qubit, qubit, pi / 2), 1e-9);
    EXPECT_LE(product_ft_identity_check(p, s, qubit, qubit, 0.0), 1e-12);
}

TEST(AsymmetryMeasureId, EvaluateAndName) {
    EXPECT_EQ(AsymmetryMeasureId::skew().name(), "skew_information");
    EXPECT_NEAR(AsymmetryMeasureId::skew().evaluate(plus(), qubit), 0.25, 1e-12);
    EXPECT_NEAR(AsymmetryMeasureId::fidelity_shift(pi).evaluate(plus(), qubit), 1.0, 1e-9);
}
