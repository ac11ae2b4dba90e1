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

#include "transym/algebra.hpp"

#include <cmath>

#include "transym/errors.hpp"

namespace transym {

namespace {

Vec flatten(const Mat &m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unflatten(const Vec &v, Index d) { return Eigen::Map<const Mat>(v.data(), d, d); }

/// Incremental HS-orthonormal basis in a space of flattened d x d operators.
class SpanBuilder {
   public:
    SpanBuilder(Index dim, double tol) : cols_(dim, dim), tol_(tol) {}

    bool add(const Vec &x) {
        double norm = x.norm();
        if (!(norm > 0.0) || n_ == cols_.cols()) {
            return false;
        }
        Vec v = x;
        for (int pass = 0; pass < 2; ++pass) {
            if (n_ > 0) {
                v -= cols_.leftCols(n_) * (cols_.leftCols(n_).adjoint() * v);
            }
        }
        double rest = v.norm();
        if (rest <= tol_ * norm) {
            return false;
        }
        cols_.col(n_++) = v / rest;
        return true;
    }

    Index size() const { return n_; }
    Vec col(Index i) const { return cols_.col(i); }

   private:
    Mat cols_;
    Index n_ = 0;
    double tol_;
};

std::vector<std::vector<Index>> cluster_sorted(const RVec &values, double gap) {
    std::vector<std::vector<Index>> groups;
    for (Index i = 0; i < values.size(); ++i) {
        if (i == 0 || values(i) - values(i - 1) > gap) {
            groups.emplace_back();
        }
        groups.back().push_back(i);
    }
    return groups;
}

Mat columns(const Mat &vectors, const std::vector<Index> &idx) {
    Mat out(vectors.rows(), static_cast<Index>(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c) {
        out.col(static_cast<Index>(c)) = vectors.col(idx[c]);
    }
    return out;
}

Mat random_hermitian_in(const std::vector<Mat> &basis, Rng &rng) {
    const Index d = basis.front().rows();
    Mat h = Mat::Zero(d, d);
    const cplx i(0.0, 1.0);
    for (const auto &b : basis) {
        h += rng.normal() * (b + b.adjoint()) + rng.normal() * i * (b - b.adjoint());
    }
    return hermitian_part(h);
}

}  // namespace

Mat nullspace(const Mat &a, double tol) {
    const Index n = a.cols();
    Mat r = a;
    if (a.rows() > n) {
        Eigen::HouseholderQR<Mat> qr(a);
        r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    }
    Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeFullV);
    const RVec &s = svd.singularValues();
    double cutoff = tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff) {
        ++rank;
    }
    return svd.matrixV().rightCols(n - rank);
}

Mat OperatorAlgebra::project(const Mat &x) const {
    Mat out = Mat::Zero(d, d);
    for (const auto &b : basis) {
        out += b * flatten(b).dot(flatten(x));
    }
    return out;
}

std::vector<Mat> OperatorAlgebra::center(double tol) const {
    const Index dd = static_cast<Index>(d) * d;
    const Index n = dim();
    Mat eqs(dd * static_cast<Index>(generators.size()), n);
    for (Index k = 0; k < n; ++k) {
        for (size_t g = 0; g < generators.size(); ++g) {
            eqs.block(static_cast<Index>(g) * dd, k, dd, 1) = flatten(commutator(basis[k], generators[g]));
        }
    }
    Mat null = generators.empty() ? Mat(Mat::Identity(n, n)) : nullspace(eqs, tol);

    SpanBuilder span(dd, 1e-6);
    std::vector<Mat> out;
    const cplx i(0.0, 1.0);
    for (Index c = 0; c < null.cols(); ++c) {
        Mat z = Mat::Zero(d, d);
        for (Index k = 0; k < n; ++k) {
            z += null(k, c) * basis[k];
        }
        const double zn = z.norm();
        for (const Mat &h : {Mat(z + z.adjoint()), Mat(i * (z - z.adjoint()))}) {
            if (h.norm() > 1e-6 * zn && span.add(flatten(h))) {
                out.push_back(hermitian_part(unflatten(span.col(span.size() - 1), d)));
            }
        }
    }
    return out;
}

OperatorAlgebra generate_algebra(const std::vector<Mat> &gens, double tol) {
    if (gens.empty()) {
        fail(ErrorCode::DimensionMismatch, "generate_algebra needs at least one generator");
    }
    const Index d = gens.front().rows();
    if (d > 64) {
        fail(ErrorCode::SizeCap, "generate_algebra limited to d <= 64", static_cast<double>(d));
    }
    OperatorAlgebra alg;
    alg.d = static_cast<int>(d);
    for (const auto &g : gens) {
        if (g.rows() != d || g.cols() != d) {
            fail(ErrorCode::DimensionMismatch, "generators must be square with a common dimension");
        }
        double norm = g.norm();
        if (norm == 0.0) {
            continue;
        }
        Mat scaled = g / norm;
        alg.generators.push_back(scaled);
        if (max_abs(scaled - scaled.adjoint()) > tol) {
            alg.generators.push_back(scaled.adjoint());
        }
    }

    SpanBuilder span(d * d, tol);
    span.add(flatten(Mat::Identity(d, d)));
    for (const auto &g : alg.generators) {
        span.add(flatten(g));
    }
    for (Index done = 0; done < span.size(); ++done) {
        Mat e = unflatten(span.col(done), d);
        for (const auto &g : alg.generators) {
            span.add(flatten(g * e));
        }
    }
    for (Index k = 0; k < span.size(); ++k) {
        alg.basis.push_back(unflatten(span.col(k), d));
    }
    return alg;
}

std::vector<WedderburnBlock> wedderburn_decompose(const OperatorAlgebra &alg, Rng &rng, double tol) {
    if (alg.basis.empty()) {
        fail(ErrorCode::DimensionMismatch, "empty algebra basis");
    }
    const int n = alg.dim();
    for (int trial = 0; trial < 20; ++trial) {
        const Mat &a = alg.basis[rng.integer(0, n - 1)];
        const Mat &b = alg.basis[rng.integer(0, n - 1)];
        Mat ab = a * b;
        double miss = (ab - alg.project(ab)).norm();
        if (miss > 1e-6 * std::max(1.0, ab.norm())) {
            fail(ErrorCode::PreconditionFailed, "basis does not span a closed algebra", miss);
        }
    }

    const double gap = 100.0 * tol;
    auto center = alg.center(tol);
    const size_t ncenter = center.size();

    std::vector<std::vector<Index>> groups;
    EigenSystem central;
    bool separated = false;
    for (int attempt = 0; attempt < 5 && !separated; ++attempt) {
        central = hermitian_eig(random_hermitian_in(center, rng));
        groups = cluster_sorted(central.values, gap);
        separated = groups.size() == ncenter;
    }
    if (!separated) {
        fail(ErrorCode::CenterDegenerate, "generic central element did not separate the blocks",
             static_cast<double>(ncenter));
    }

    std::vector<WedderburnBlock> blocks;
    for (const auto &group : groups) {
        Mat q = columns(central.vectors, group);
        const Index r = q.cols();

        SpanBuilder span(r * r, 1e-6);
        std::vector<Mat> local;
        for (const auto &b : alg.basis) {
            Mat c = q.adjoint() * b * q;
            if (c.norm() > 1e-6 * b.norm() && span.add(flatten(c))) {
                local.push_back(unflatten(span.col(span.size() - 1), r));
            }
        }
        const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(local.size()))));
        if (static_cast<size_t>(m) * m != local.size() || r % m != 0) {
            fail(ErrorCode::CenterDegenerate, "block algebra is not a full matrix factor",
                 static_cast<double>(local.size()));
        }
        const int k = static_cast<int>(r / m);

        bool done = false;
        for (int attempt = 0; attempt < 5 && !done; ++attempt) {
            auto es = hermitian_eig(random_hermitian_in(local, rng));
            auto parts = cluster_sorted(es.values, gap);
            if (parts.size() != static_cast<size_t>(m)) {
                continue;
            }
            bool even = true;
            for (const auto &p : parts) {
                even = even && p.size() == static_cast<size_t>(k);
            }
            if (!even) {
                continue;
            }
            Mat generic = Mat::Zero(r, r);
            for (const auto &b : local) {
                generic += cplx(rng.normal(), rng.normal()) * b;
            }
            Mat f = columns(es.vectors, parts[0]);
            Mat p1 = f * f.adjoint();
            Mat v(r, r);
            bool units_ok = true;
            for (int j = 0; j < m; ++j) {
                Mat w = p1;
                if (j > 0) {
                    Mat ej = columns(es.vectors, parts[j]);
                    w = ej * ej.adjoint() * generic * p1;
                    double scale = std::sqrt((w.adjoint() * w).trace().real() / k);
                    if (scale < 1e-6) {
                        units_ok = false;
                        break;
                    }
                    w /= scale;
                }
                v.middleCols(static_cast<Index>(j) * k, k) = w * f;
            }
            if (!units_ok) {
                continue;
            }
            WedderburnBlock blk;
            blk.projector = q * q.adjoint();
            blk.isometry = q * v;
            blk.m = m;
            blk.k = k;
            blocks.push_back(std::move(blk));
            done = true;
        }
        if (!done) {
            fail(ErrorCode::CenterDegenerate, "could not split a block into matrix units", static_cast<double>(m));
        }
    }
    return blocks;
}

}  // namespace transym
