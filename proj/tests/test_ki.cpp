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

#include "ki_oracle.hpp"
#include "oracles.hpp"
#include "test_util.hpp"
#include "transym/ki.hpp"
#include "transym/symmetry.hpp"

using namespace transym;
using std::numbers::pi;

namespace {

const SystemSpec qubit = SystemSpec::diagonal({0, 1});

StateFamily family_of(const std::vector<Mat> &ms) {
    std::vector<DensityMatrix> s;
    for (const auto &m : ms) s.emplace_back(m, 1e-8);
    return StateFamily(std::move(s));
}

std::vector<oracle::BlockShape> shapes_of(const KIDecomposition &dec) {
    std::vector<oracle::BlockShape> s;
    for (const auto &b : dec.blocks) s.push_back({b.m, b.k});
    std::sort(s.begin(), s.end());
    return s;
}

Mat diag_state(std::vector<double> p) {
    Mat m = Mat::Zero(static_cast<Index>(p.size()), static_cast<Index>(p.size()));
    for (size_t i = 0; i < p.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = p[i];
    return m;
}

/// Blocks of `b` matched to `a` by projector distance; returns the worst match.
double projector_mismatch(const KIDecomposition &a, const KIDecomposition &b) {
    if (a.blocks.size() != b.blocks.size()) return 1e9;
    double worst = 0;
    for (const auto &ba : a.blocks) {
        double best = 1e9;
        for (const auto &bb : b.blocks) best = std::min(best, oracle::max_abs(ba.projector - bb.projector));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST(KI, SingleStateKeepsEverythingInOmega) {
    Rng rng(1);
    Mat r = oracle::random_state(3, rng);
    auto fam = family_of({r});
    auto dec = ki_decompose(fam);
    ASSERT_EQ(dec.blocks.size(), 1u);
    const auto &b = dec.blocks[0];
    EXPECT_EQ(b.m, 1);
    EXPECT_EQ(b.k, 3);
    EXPECT_NEAR(dec.probs[0][0], 1.0, 1e-12);
    EXPECT_LT(oracle::max_abs(b.isometry * b.omega * b.isometry.adjoint() - r), 1e-10);
    EXPECT_TRUE(check_ki_invariants(dec, fam).hold());
}

TEST(KI, CommutingQubitPairGivesTwoClassicalBlocks) {
    Mat a = diag_state({0.7, 0.3}), b = diag_state({0.2, 0.8});
    auto fam = family_of({a, b});
    auto dec = ki_decompose(fam);
    ASSERT_EQ(dec.blocks.size(), 2u);
    for (size_t mu = 0; mu < 2; ++mu) {
        EXPECT_EQ(dec.blocks[mu].m, 1);
        EXPECT_EQ(dec.blocks[mu].k, 1);
        int level = std::abs(dec.blocks[mu].projector(0, 0)) > 0.5 ? 0 : 1;
        EXPECT_NEAR(dec.probs[0][mu], a(level, level).real(), 1e-9);
        EXPECT_NEAR(dec.probs[1][mu], b(level, level).real(), 1e-9);
    }
    EXPECT_TRUE(check_ki_invariants(dec, fam).hold());
}

TEST(KI, CoherentOrbitIsOneQubitBlock) {
    auto fam = orbit_family(DensityMatrix(Mat::Constant(2, 2, 0.5)), qubit, 4);
    auto dec = ki_decompose(fam);
    ASSERT_EQ(dec.blocks.size(), 1u);
    EXPECT_EQ(dec.blocks[0].m, 2);
    EXPECT_EQ(dec.blocks[0].k, 1);
    auto inv = check_ki_invariants(dec, fam);
    EXPECT_TRUE(inv.hold());
    EXPECT_TRUE(inv.maximal);
}

TEST(KI, CommutingFamiliesMatchJointDiagonalization) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        int d = rng.integer(2, 5);
        Mat u = random_unitary(d, rng);
        std::vector<std::vector<double>> weights;
        std::vector<Mat> states;
        for (int x = 0; x < 3; ++x) {
            std::vector<double> w(d);
            double tot = 0;
            for (auto &v : w) tot += (v = 0.1 + rng.uniform());
            for (auto &v : w) v /= tot;
            weights.push_back(w);
            states.push_back(u * diag_state(w) * u.adjoint());
        }
        auto dec = ki_decompose(family_of(states));
        ASSERT_EQ(static_cast<int>(dec.blocks.size()), d);
        for (size_t mu = 0; mu < dec.blocks.size(); ++mu) {
            EXPECT_EQ(dec.blocks[mu].m, 1);
            int level = 0;
            double best = 0;
            for (int i = 0; i < d; ++i) {
                double overlap = std::abs(u.col(i).dot(dec.blocks[mu].projector * u.col(i)));
                if (overlap > best) best = overlap, level = i;
            }
            for (int x = 0; x < 3; ++x) EXPECT_NEAR(dec.probs[x][mu], weights[x][level], 1e-9);
        }
    }
}

TEST(KI, PlantedFamiliesMatchFallbackOracle) {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        int d = rng.integer(2, 6);
        auto shapes = oracle::random_shapes(d, rng);
        auto planted = oracle::planted_family(d, shapes, rng.integer(2, 4), rng);
        auto fam = family_of(planted.states);
        Rng r1(100 + trial);
        auto dec = ki_decompose(fam, r1);
        Rng r2(200 + trial);
        auto oracle_shapes = oracle::ki_block_shapes(planted.states, r2);
        EXPECT_EQ(oracle_shapes, planted.shapes) << "trial " << trial;
        EXPECT_EQ(shapes_of(dec), oracle_shapes) << "trial " << trial;
        auto inv = check_ki_invariants(dec, fam);
        EXPECT_TRUE(inv.hold()) << "trial " << trial << " recon " << inv.reconstruction;
    }
}

TEST(KI, PermutationInvariance) {
    Rng rng(4);
    auto planted = oracle::planted_family(5, {{2, 1}, {1, 2}, {1, 1}}, 3, rng);
    auto dec = ki_decompose(family_of(planted.states));
    std::vector<Mat> rev(planted.states.rbegin(), planted.states.rend());
    auto dec_rev = ki_decompose(family_of(rev));
    EXPECT_LT(projector_mismatch(dec, dec_rev), 1e-7);
}

TEST(KI, UnitaryEquivariance) {
    Rng rng(5);
    auto planted = oracle::planted_family(3, {{1, 2}, {1, 1}}, 2, rng);
    auto dec = ki_decompose(family_of(planted.states));
    for (int trial = 0; trial < 50; ++trial) {
        Mat w = random_unitary(3, rng);
        std::vector<Mat> moved;
        for (const auto &s : planted.states) moved.push_back(w * s * w.adjoint());
        auto dw = ki_decompose(family_of(moved));
        KIDecomposition back = dw;
        for (auto &b : back.blocks) b.projector = w.adjoint() * b.projector * w;
        EXPECT_LT(projector_mismatch(dec, back), 1e-7);
    }
}

TEST(OrbitFamily, Examples) {
    auto sym = orbit_family(DensityMatrix(diag_state({0.6, 0.4})), qubit, 4);
    for (const auto &s : sym.states) EXPECT_LT(oracle::max_abs(s.mat() - diag_state({0.6, 0.4})), 1e-15);

    auto fam = orbit_family(DensityMatrix(Mat::Constant(2, 2, 0.5)), qubit, 4);
    ASSERT_EQ(fam.size(), 4);
    for (int j = 0; j < 4; ++j) {
        cplx phase = std::exp(cplx(0, -pi / 2 * j));
        EXPECT_LT(std::abs(fam.states[j].mat()(1, 0) - 0.5 * phase), 1e-15);
        for (int i = 0; i < j; ++i) EXPECT_GT(oracle::max_abs(fam.states[i].mat() - fam.states[j].mat()), 0.3);
    }
    EXPECT_EQ(fam.labels[1], "t1/4");
    EXPECT_EQ(code_of([] { orbit_family(DensityMatrix::maximally_mixed(2), qubit, 1); }), ErrorCode::SizeCap);
}

TEST(OrbitFamily, AlgebraStableUnderDoubling) {
    DensityMatrix plus(Mat::Constant(2, 2, 0.5));
    auto f4 = orbit_family(plus, qubit, 4);
    auto f8 = orbit_family(plus, qubit, 8);
    EXPECT_EQ(ki_algebra(f4).dim(), ki_algebra(f8).dim());
    EXPECT_EQ(ki_algebra(f4).dim(), 4);
}

TEST(Ehrenfest, Examples) {
    std::vector<double> grid;
    for (int j = 0; j < 23; ++j) grid.push_back(0.37 * j);
    DensityMatrix sym(diag_state({0.6, 0.4}));
    auto dsym = ki_decompose(orbit_family(sym, qubit, 4));
    EXPECT_LE(ehrenfest_constancy_check(dsym, sym, qubit, grid), 1e-15);

    DensityMatrix plus(Mat::Constant(2, 2, 0.5));
    EXPECT_LE(ehrenfest_constancy_check(ki_decompose(orbit_family(plus, qubit, 4)), plus, qubit, grid), 1e-7);

    // Two qutrits: coherent superposition inside one energy level pair, plus a classical mixture.
    auto q3 = SystemSpec::diagonal({0, 1, 4});
    auto joint = SystemSpec::joint(q3, q3);
    Mat a = Mat::Zero(3, 3);
    a.topLeftCorner(2, 2) = Mat::Constant(2, 2, 0.25);
    a(2, 2) = 0.5;
    Mat b = diag_state({0.2, 0.3, 0.5});
    DensityMatrix r(oracle::kron(a, b));
    auto dec = ki_decompose(orbit_family(r, joint, 4));
    EXPECT_GT(dec.blocks.size(), 1u);
    EXPECT_LE(ehrenfest_constancy_check(dec, r, joint, grid), 1e-7);
}

TEST(ReducedForm, IdentityTimesPreparation) {
    Rng rng(6);
    DensityMatrix tau(oracle::random_state(2, rng));
    auto qs = SystemSpec::joint(qubit, qubit);
    auto bc = Channel::from_map(qubit, qs, [&](const Mat &x) { return oracle::kron(x, tau.mat()); });
    DensityMatrix plus(Mat::Constant(2, 2, 0.5));
    auto fam = orbit_family(plus, qubit, 4);
    auto dec = ki_decompose(fam);
    auto res = lemma4_reduced_form_check(bc, fam, dec, 1e-9);
    EXPECT_LE(res.residual, 1e-9);
    for (const auto &s : res.block_states) EXPECT_LT(oracle::max_abs(s - tau.mat()), 1e-9);
}

TEST(ReducedForm, ClassicalMeasureAndReprepare) {
    Rng rng(7);
    auto q3 = SystemSpec::diagonal({0, 1, 2});
    auto qs = SystemSpec::joint(q3, qubit);
    std::vector<Mat> taus;
    for (int i = 0; i < 3; ++i) taus.push_back(oracle::random_state(2, rng));
    auto bc = Channel::from_map(q3, qs, [&](const Mat &x) {
        Mat out = Mat::Zero(6, 6);
        for (int i = 0; i < 3; ++i) {
            Mat p = Mat::Zero(3, 3);
            p(i, i) = 1.0;
            out += x(i, i) * oracle::kron(p, taus[i]);
        }
        return out;
    });
    auto fam = family_of({diag_state({0.5, 0.3, 0.2}), diag_state({0.1, 0.6, 0.3}), diag_state({0.3, 0.3, 0.4})});
    auto dec = ki_decompose(fam);
    auto res = lemma4_reduced_form_check(bc, fam, dec, 1e-9);
    EXPECT_LE(res.residual, 1e-8);
    for (size_t mu = 0; mu < dec.blocks.size(); ++mu) {
        int level = 0;
        for (int i = 0; i < 3; ++i)
            if (std::abs(dec.blocks[mu].projector(i, i)) > 0.5) level = i;
        EXPECT_LT(oracle::max_abs(res.block_states[mu] - taus[level]), 1e-8);
    }
}

TEST(ReducedForm, CovariantBroadcastOfCoherentOrbitGivesSymmetricBlockStates) {
    auto qs = SystemSpec::joint(qubit, qubit);
    Mat tau = diag_state({0.9, 0.1});
    auto bc = Channel::from_map(qubit, qs, [&](const Mat &x) { return oracle::kron(x, tau); });
    ASSERT_TRUE(is_covariant_channel(bc).holds);
    auto fam = orbit_family(DensityMatrix(Mat::Constant(2, 2, 0.5)), qubit, 4);
    auto res = lemma4_reduced_form_check(bc, fam, ki_decompose(fam), 1e-9);
    for (const auto &s : res.block_states) EXPECT_TRUE(is_symmetric_state(s, qubit, 1e-9).holds);
}

TEST(ReducedForm, RejectsDisturbingMap) {
    auto qs = SystemSpec::joint(qubit, qubit);
    auto bc = Channel::from_map(qubit, qs, [&](const Mat &x) {
        return oracle::kron(Mat::Identity(2, 2) / 2.0, x);
    });
    auto fam = orbit_family(DensityMatrix(Mat::Constant(2, 2, 0.5)), qubit, 4);
    EXPECT_EQ(code_of([&] { lemma4_reduced_form_check(bc, fam, ki_decompose(fam), 1e-6); }),
              ErrorCode::PreconditionFailed);
}
