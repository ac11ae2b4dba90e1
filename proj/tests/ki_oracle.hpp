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

#pragma once

// Iterative commutant/bicommutant computation of the Koashi-Imoto block
// structure, used as an independent check on ki_decompose for small d.
//
// On the support of the average state, C_0 is the commutant of the transition
// operators T_x. C_{n+1} keeps the elements of C_n whose images under
// X -> s X s^{-1} and its inverse (s the average state) stay in C_n. The fixed
// point is the commutant of the KI algebra; its commutant is the algebra
// itself, and a generic Hermitian central element splits it into blocks.

#include <algorithm>
#include <utility>
#include <vector>

#include "oracles.hpp"

namespace oracle {

struct BlockShape {
    int m;
    int k;
    bool operator==(const BlockShape &o) const { return m == o.m && k == o.k; }
    bool operator<(const BlockShape &o) const { return m != o.m ? m < o.m : k < o.k; }
};

/// Stacked (I kron a - a^T kron I) over `ops`: kernel = common commutant.
inline Mat commutator_system(const std::vector<Mat> &ops, Index r) {
    Mat sys(static_cast<Index>(ops.size()) * r * r, r * r);
    Mat id = Mat::Identity(r, r);
    for (size_t i = 0; i < ops.size(); ++i) {
        sys.middleRows(static_cast<Index>(i) * r * r, r * r) = kron(id, ops[i]) - kron(ops[i].transpose(), id);
    }
    return sys;
}

inline std::vector<Mat> columns_as_matrices(const Mat &basis, Index r) {
    std::vector<Mat> out;
    for (Index c = 0; c < basis.cols(); ++c) out.push_back(unvec(basis.col(c), r));
    return out;
}

inline std::vector<BlockShape> ki_block_shapes(const std::vector<Mat> &states, transym::Rng &rng) {
    const Index d = states.front().rows();
    Mat avg = Mat::Zero(d, d);
    for (const auto &s : states) avg += s;
    avg /= static_cast<double>(states.size());
    Eigen::SelfAdjointEigenSolver<Mat> es(avg);
    std::vector<Index> keep;
    for (Index i = 0; i < d; ++i)
        if (es.eigenvalues()(i) > 1e-12 * es.eigenvalues()(d - 1)) keep.push_back(i);
    const Index r = static_cast<Index>(keep.size());
    Mat sup(d, r);
    Eigen::VectorXd lam(r);
    for (Index i = 0; i < r; ++i) {
        sup.col(i) = es.eigenvectors().col(keep[i]);
        lam(i) = es.eigenvalues()(keep[i]);
    }
    Mat s_half_inv = Mat::Zero(r, r), s = Mat::Zero(r, r), s_inv = Mat::Zero(r, r);
    for (Index i = 0; i < r; ++i) {
        s_half_inv(i, i) = 1.0 / std::sqrt(lam(i));
        s(i, i) = lam(i);
        s_inv(i, i) = 1.0 / lam(i);
    }
    std::vector<Mat> t;
    for (const auto &st : states) t.push_back(s_half_inv * sup.adjoint() * st * sup * s_half_inv);

    Mat basis = kernel(commutator_system(t, r), 1e-8);
    Mat delta = kron(s_inv.transpose(), s);
    Mat delta_inv = kron(s.transpose(), s_inv);
    for (;;) {
        Mat proj_out = Mat::Identity(r * r, r * r) - basis * basis.adjoint();
        Mat cond(2 * r * r, basis.cols());
        cond.topRows(r * r) = proj_out * delta * basis;
        cond.bottomRows(r * r) = proj_out * delta_inv * basis;
        Mat c = kernel(cond, 1e-8);
        if (c.cols() == basis.cols()) break;
        basis = basis * c;
        Eigen::HouseholderQR<Mat> qr(basis);
        basis = qr.householderQ() * Mat::Identity(r * r, basis.cols());
    }
    auto commutant_ops = columns_as_matrices(basis, r);
    Mat alg = kernel(commutator_system(commutant_ops, r), 1e-8);
    auto alg_ops = columns_as_matrices(alg, r);

    // Center: coefficient vectors whose element commutes with every element of the algebra.
    Mat csys(static_cast<Index>(alg_ops.size()) * r * r, alg.cols());
    for (size_t j = 0; j < alg_ops.size(); ++j) {
        for (Index i = 0; i < alg.cols(); ++i) {
            csys.block(static_cast<Index>(j) * r * r, i, r * r, 1) = vec(alg_ops[i] * alg_ops[j] - alg_ops[j] * alg_ops[i]);
        }
    }
    Mat zc = kernel(csys, 1e-8);
    Mat z = Mat::Zero(r, r);
    for (Index i = 0; i < zc.cols(); ++i) {
        Mat zi = unvec(alg * zc.col(i), r);
        z += rng.normal() * (zi + zi.adjoint()) + rng.normal() * cplx(0, 1) * (zi - zi.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Mat> zes(z);
    const auto &zl = zes.eigenvalues();
    double scale = std::max(1.0, zl.cwiseAbs().maxCoeff());
    std::vector<BlockShape> shapes;
    Index start = 0;
    for (Index i = 1; i <= r; ++i) {
        if (i == r || zl(i) - zl(i - 1) > 1e-6 * scale) {
            Mat v = zes.eigenvectors().middleCols(start, i - start);
            Mat pi = v * v.adjoint();
            Mat compressed(r * r, alg.cols());
            for (Index c = 0; c < alg.cols(); ++c) compressed.col(c) = vec(pi * alg_ops[c] * pi);
            Eigen::JacobiSVD<Mat> svd(compressed);
            int rank = 0;
            for (Index q = 0; q < svd.singularValues().size(); ++q)
                if (svd.singularValues()(q) > 1e-8 * std::max(1.0, svd.singularValues()(0))) ++rank;
            int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rank))));
            shapes.push_back({m, static_cast<int>(i - start) / m});
            start = i;
        }
    }
    std::sort(shapes.begin(), shapes.end());
    return shapes;
}

/// Family with a planted block structure: V (sum_mu p^x_mu rho^x_mu (x) omega_mu) V^dag,
/// padded with zeros up to `d`.
struct PlantedFamily {
    std::vector<Mat> states;
    std::vector<BlockShape> shapes;
};

inline PlantedFamily planted_family(int d, const std::vector<BlockShape> &shapes, int members, transym::Rng &rng) {
    PlantedFamily f;
    f.shapes = shapes;
    std::sort(f.shapes.begin(), f.shapes.end());
    std::vector<Mat> omegas;
    for (const auto &b : shapes) omegas.push_back(random_state(b.k, rng));
    Mat u = transym::random_unitary(d, rng);
    for (int x = 0; x < members; ++x) {
        std::vector<double> p;
        double tot = 0;
        for (size_t b = 0; b < shapes.size(); ++b) {
            p.push_back(0.2 + rng.uniform());
            tot += p.back();
        }
        Mat st = Mat::Zero(d, d);
        Index off = 0;
        for (size_t b = 0; b < shapes.size(); ++b) {
            const int n = shapes[b].m * shapes[b].k;
            st.block(off, off, n, n) = (p[b] / tot) * kron(random_state(shapes[b].m, rng), omegas[b]);
            off += n;
        }
        st = u * st * u.adjoint();
        f.states.push_back((st + st.adjoint()) / 2.0);
    }
    return f;
}

/// Random partition of at most d dimensions into blocks m x k.
inline std::vector<BlockShape> random_shapes(int d, transym::Rng &rng) {
    std::vector<BlockShape> shapes;
    int left = d;
    while (left > 0) {
        int m = rng.integer(1, std::min(3, left));
        int k = rng.integer(1, std::max(1, std::min(3, left / m)));
        if (m * k > left) k = 1;
        shapes.push_back({m, k});
        left -= m * k;
        if (left > 0 && rng.uniform() < 0.2) break;
    }
    return shapes;
}

}  // namespace oracle
