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

#include "transym/ki.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "transym/errors.hpp"
#include "transym/symmetry.hpp"

namespace transym {

namespace {

constexpr std::uint64_t kDefaultKISeed = 0x4b492d6465636f6dULL;

/// Average state restricted to its support.
struct Support {
    Mat basis;   // d x s, eigenvectors of rho_bar
    RVec values;  // s retained eigenvalues
};

Support support_of(const StateFamily &fam) {
    auto es = hermitian_eig(fam.average());
    std::vector<Index> keep;
    for (Index i = 0; i < es.values.size(); ++i) {
        if (es.values(i) > kTolRank) {
            keep.push_back(i);
        }
    }
    if (keep.empty()) {
        fail(ErrorCode::RankCollapse, "average state has empty support");
    }
    Support s;
    s.basis.resize(es.vectors.rows(), static_cast<Index>(keep.size()));
    s.values.resize(static_cast<Index>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c) {
        s.basis.col(static_cast<Index>(c)) = es.vectors.col(keep[c]);
        s.values(static_cast<Index>(c)) = es.values(keep[c]);
    }
    double cond = s.values.maxCoeff() / s.values.minCoeff();
    if (cond > 1e12) {
        fail(ErrorCode::RankCollapse, "support of the average state is ill-conditioned", cond);
    }
    return s;
}

/// Components of each transition operator between eigenspaces of rho_bar
/// grouped by eigenvalue ratio, in support coordinates.
std::vector<Mat> modular_generators(const StateFamily &fam, const Support &sup, double tol) {
    const Index s = sup.values.size();
    RVec inv_sqrt = sup.values.cwiseSqrt().cwiseInverse();
    RVec logs = sup.values.array().log();

    struct Pair {
        double key;
        Index a, b;
    };
    std::vector<Pair> pairs;
    for (Index a = 0; a < s; ++a) {
        for (Index b = 0; b < s; ++b) {
            pairs.push_back({logs(a) - logs(b), a, b});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair &x, const Pair &y) { return x.key < y.key; });
    std::vector<std::vector<Pair>> classes;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (i == 0 || pairs[i].key - pairs[i - 1].key > 1e-9) {
            classes.emplace_back();
        }
        classes.back().push_back(pairs[i]);
    }

    std::vector<Mat> gens;
    for (const auto &rho : fam.states) {
        Mat t = inv_sqrt.cast<cplx>().asDiagonal() * (sup.basis.adjoint() * rho.mat() * sup.basis) *
                inv_sqrt.cast<cplx>().asDiagonal();
        double scale = t.norm();
        for (const auto &cls : classes) {
            Mat c = Mat::Zero(s, s);
            for (const auto &p : cls) {
                c(p.a, p.b) = t(p.a, p.b);
            }
            if (c.norm() > tol * scale) {
                gens.push_back(std::move(c));
            }
        }
    }
    if (gens.empty()) {
        gens.push_back(Mat::Identity(s, s));
    }
    return gens;
}

}  // namespace

StateFamily::StateFamily(std::vector<DensityMatrix> states_in, std::vector<std::string> labels_in)
    : states(std::move(states_in)), labels(std::move(labels_in)) {
    if (states.empty()) {
        fail(ErrorCode::DimensionMismatch, "state family is empty");
    }
    for (const auto &s : states) {
        if (s.dim() != states.front().dim()) {
            fail(ErrorCode::DimensionMismatch, "family members have different dimensions");
        }
    }
    if (labels.empty()) {
        for (size_t x = 0; x < states.size(); ++x) {
            labels.push_back("x" + std::to_string(x));
        }
    }
    if (labels.size() != states.size()) {
        fail(ErrorCode::DimensionMismatch, "label count does not match state count");
    }
}

Mat StateFamily::average() const {
    Mat avg = Mat::Zero(dim(), dim());
    for (const auto &s : states) {
        avg += s.mat();
    }
    return hermitian_part(avg / static_cast<double>(states.size()));
}

Mat KIDecomposition::reconstruct(int x) const {
    const Index d = blocks.front().projector.rows();
    Mat out = Mat::Zero(d, d);
    for (size_t mu = 0; mu < blocks.size(); ++mu) {
        const auto &b = blocks[mu];
        out += probs[x][mu] * b.isometry * tensor_product(rho_l[x][mu], b.omega) * b.isometry.adjoint();
    }
    return out;
}

OperatorAlgebra ki_algebra(const StateFamily &fam, double tol) {
    if (fam.dim() > 32) {
        fail(ErrorCode::SizeCap, "ki_decompose limited to d <= 32", fam.dim());
    }
    Support sup = support_of(fam);
    return generate_algebra(modular_generators(fam, sup, tol), 1e-9);
}

KIDecomposition ki_decompose(const StateFamily &fam, double tol) {
    Rng rng(kDefaultKISeed);
    return ki_decompose(fam, rng, tol);
}

KIDecomposition ki_decompose(const StateFamily &fam, Rng &rng, double tol) {
    if (fam.dim() > 32) {
        fail(ErrorCode::SizeCap, "ki_decompose limited to d <= 32", fam.dim());
    }
    Support sup = support_of(fam);
    auto alg = generate_algebra(modular_generators(fam, sup, tol), 1e-9);
    auto wblocks = wedderburn_decompose(alg, rng, tol);

    const Mat bar = sup.values.cast<cplx>().asDiagonal();
    KIDecomposition dec;
    dec.labels = fam.labels;
    dec.probs.assign(fam.size(), {});
    dec.rho_l.assign(fam.size(), {});
    for (const auto &wb : wblocks) {
        KIBlock blk;
        blk.m = wb.m;
        blk.k = wb.k;
        blk.projector = hermitian_part(sup.basis * wb.projector * sup.basis.adjoint());
        blk.isometry = sup.basis * wb.isometry;
        Mat local = wb.isometry.adjoint() * bar * wb.isometry;
        Mat omega = partial_trace(local, {wb.m, wb.k}, {1});
        blk.omega = hermitian_part(omega / omega.trace().real());

        for (int x = 0; x < fam.size(); ++x) {
            Mat y = blk.isometry.adjoint() * fam.states[x].mat() * blk.isometry;
            double p = std::max(0.0, y.trace().real());
            Mat rl = Mat::Identity(wb.m, wb.m) / static_cast<double>(wb.m);
            if (p > kTolRank) {
                rl = hermitian_part(partial_trace(y, {wb.m, wb.k}, {0}) / p);
            }
            dec.probs[x].push_back(p);
            dec.rho_l[x].push_back(std::move(rl));
        }
        dec.blocks.push_back(std::move(blk));
    }
    return dec;
}

KIInvariants check_ki_invariants(const KIDecomposition &dec, const StateFamily &fam) {
    KIInvariants inv{0.0, 0.0, 0.0, true};
    for (int x = 0; x < fam.size(); ++x) {
        inv.reconstruction = std::max(inv.reconstruction, trace_distance(dec.reconstruct(x), fam.states[x].mat()));
    }
    const Index d = fam.dim();
    Mat total = Mat::Zero(d, d);
    for (size_t mu = 0; mu < dec.blocks.size(); ++mu) {
        const auto &b = dec.blocks[mu];
        const Index n = b.isometry.cols();
        inv.isometry = std::max(inv.isometry, max_abs(b.isometry.adjoint() * b.isometry - Mat::Identity(n, n)));
        total += b.projector;
        for (size_t nu = mu + 1; nu < dec.blocks.size(); ++nu) {
            inv.projectors = std::max(inv.projectors, max_abs(b.projector * dec.blocks[nu].projector));
        }
        if (b.m >= 2) {
            std::vector<Mat> left;
            for (int x = 0; x < fam.size(); ++x) {
                if (dec.probs[x][mu] > kTolRank) {
                    left.push_back(dec.rho_l[x][mu]);
                }
            }
            inv.maximal = inv.maximal && !left.empty() && generate_algebra(left, 1e-9).dim() == b.m * b.m;
        }
    }
    inv.projectors = std::max(inv.projectors, max_abs(total - support_projector(fam.average(), kTolRank)));
    return inv;
}

StateFamily orbit_family(const DensityMatrix &rho, const SystemSpec &sys, int n_samples) {
    if (n_samples < 2) {
        fail(ErrorCode::SizeCap, "orbit family needs at least two samples", n_samples);
    }
    auto build = [&](int n) {
        std::vector<DensityMatrix> states;
        std::vector<std::string> labels;
        for (int j = 0; j < n; ++j) {
            double t = 2.0 * std::numbers::pi * j / n;
            states.push_back(time_translate(rho, sys, t));
            labels.push_back("t" + std::to_string(j) + "/" + std::to_string(n));
        }
        return StateFamily(std::move(states), std::move(labels));
    };
    int n = n_samples;
    int dim_n = ki_algebra(build(n)).dim();
    while (2 * n <= 64) {
        int dim_2n = ki_algebra(build(2 * n)).dim();
        if (dim_2n == dim_n) {
            return build(n);
        }
        n *= 2;
        dim_n = dim_2n;
    }
    fail(ErrorCode::SizeCap, "orbit algebra did not stabilize within 64 samples", n);
}

double ehrenfest_constancy_check(const KIDecomposition &dec, const DensityMatrix &rho, const SystemSpec &sys,
                                 const std::vector<double> &t_grid) {
    double worst = 0.0;
    for (const auto &b : dec.blocks) {
        double base = (b.projector * rho.mat()).trace().real();
        for (double t : t_grid) {
            double p = (b.projector * time_translate(rho.mat(), sys, t)).trace().real();
            worst = std::max(worst, std::abs(p - base));
        }
    }
    return worst;
}

ReducedFormCheck lemma4_reduced_form_check(const Channel &broadcast, const StateFamily &fam,
                                           const KIDecomposition &dec, double tol) {
    const auto &out = broadcast.output();
    if (out.parts().size() != 2 || out.parts()[0].dim() != fam.dim() || broadcast.din() != fam.dim()) {
        fail(ErrorCode::DimensionMismatch, "broadcast must map Q to Q S' with Q matching the family");
    }
    const int dq = out.parts()[0].dim();
    const int ds = out.parts()[1].dim();
    const int nx = fam.size();
    const int nmu = static_cast<int>(dec.blocks.size());

    ReducedFormCheck res{0.0, 0.0, {}};
    std::vector<Mat> sigma_s;
    for (int x = 0; x < nx; ++x) {
        Mat joint = broadcast.apply(fam.states[x].mat());
        res.disturbance = std::max(res.disturbance, trace_distance(partial_trace(joint, {dq, ds}, {0}), fam.states[x].mat()));
        sigma_s.push_back(partial_trace(joint, {dq, ds}, {1}));
    }
    if (res.disturbance > tol) {
        fail(ErrorCode::PreconditionFailed, "broadcast does not fix the family on Q", res.disturbance);
    }

    Eigen::MatrixXd p(nx, nmu);
    for (int x = 0; x < nx; ++x) {
        for (int mu = 0; mu < nmu; ++mu) {
            p(x, mu) = dec.probs[x][mu];
        }
    }
    Eigen::MatrixXd pinv = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(p).pseudoInverse();
    for (int mu = 0; mu < nmu; ++mu) {
        Mat s = Mat::Zero(ds, ds);
        for (int x = 0; x < nx; ++x) {
            s += pinv(mu, x) * sigma_s[x];
        }
        res.block_states.push_back(hermitian_part(s));
    }
    for (int x = 0; x < nx; ++x) {
        Mat fit = Mat::Zero(ds, ds);
        for (int mu = 0; mu < nmu; ++mu) {
            fit += p(x, mu) * res.block_states[mu];
        }
        res.residual = std::max(res.residual, trace_distance(fit, sigma_s[x]));
    }
    return res;
}

}  // namespace transym
