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

#include "transym/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#include "transym/errors.hpp"
#include "transym/tolerances.hpp"

namespace transym {

double max_abs(const Mat &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Mat &m) { return m.allFinite(); }

Mat dagger(const Mat &m) { return m.adjoint(); }

Mat commutator(const Mat &a, const Mat &b) { return a * b - b * a; }

Mat hermitian_part(const Mat &m) { return 0.5 * (m + m.adjoint()); }

EigenSystem hermitian_eig(const Mat &m) {
    if (m.rows() != m.cols()) {
        fail(ErrorCode::DimensionMismatch, "hermitian_eig needs a square matrix");
    }
    if (!all_finite(m)) {
        fail(ErrorCode::NonFinite, "hermitian_eig input has NaN/Inf entries");
    }
    double asym = max_abs(m - m.adjoint());
    if (asym > kTolStruct * (1.0 + max_abs(m))) {
        fail(ErrorCode::NonHermitian, "matrix is not Hermitian", asym);
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(hermitian_part(m));
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat hermitian_function(const Mat &m, const std::function<double(double)> &f) {
    auto es = hermitian_eig(m);
    RVec fv = es.values.unaryExpr(f);
    return es.vectors * fv.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

Mat psd_sqrt(const Mat &m) {
    auto es = hermitian_eig(m);
    if (es.values.size() > 0 && es.values(0) < -kTolStruct) {
        fail(ErrorCode::NotPSD, "psd_sqrt of a matrix with negative eigenvalue", es.values(0));
    }
    RVec root = es.values.unaryExpr([](double x) { return x <= kTolRank ? 0.0 : std::sqrt(x); });
    return es.vectors * root.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

Mat psd_inv_sqrt(const Mat &m, double cutoff) {
    auto es = hermitian_eig(m);
    RVec inv = es.values.unaryExpr([cutoff](double x) { return x <= cutoff ? 0.0 : 1.0 / std::sqrt(x); });
    return es.vectors * inv.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

Mat support_projector(const Mat &m, double cutoff) {
    auto es = hermitian_eig(m);
    RVec keep = es.values.unaryExpr([cutoff](double x) { return x > cutoff ? 1.0 : 0.0; });
    return es.vectors * keep.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

RVec singular_values(const Mat &m) {
    if (!all_finite(m)) {
        fail(ErrorCode::NonFinite, "singular values of a matrix with NaN/Inf entries");
    }
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues();
}

double trace_norm(const Mat &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return singular_values(m).sum();
}

Mat tensor_product(const Mat &a, const Mat &b) { return Eigen::kroneckerProduct(a, b).eval(); }

Vec tensor_product(const Vec &a, const Vec &b) { return Eigen::kroneckerProduct(a, b).eval(); }

Mat tensor_product(std::span<const Mat> factors) {
    Mat out = Mat::Identity(1, 1);
    for (const auto &f : factors) {
        out = tensor_product(out, f);
    }
    return out;
}

Mat partial_trace(const Mat &m, std::span<const int> dims, std::span<const int> keep) {
    const int n = static_cast<int>(dims.size());
    Index total = 1;
    for (int d : dims) {
        if (d <= 0) {
            fail(ErrorCode::DimensionMismatch, "factor dimensions must be positive");
        }
        total *= d;
    }
    if (m.rows() != total || m.cols() != total) {
        fail(ErrorCode::DimensionMismatch, "product of factor dimensions does not match matrix size");
    }
    if (keep.empty()) {
        fail(ErrorCode::BadIndex, "keep set is empty");
    }
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n || kept[k]) {
            fail(ErrorCode::BadIndex, "keep index out of range or repeated");
        }
        kept[k] = true;
    }

    // Split every full index into (kept index, traced index).
    std::vector<Index> kept_idx(total), traced_idx(total);
    Index kept_dim = 1;
    for (int f = 0; f < n; ++f) {
        if (kept[f]) {
            kept_dim *= dims[f];
        }
    }
    for (Index full = 0; full < total; ++full) {
        Index rem = full;
        Index k = 0, t = 0, kstride = 1, tstride = 1;
        for (int f = n - 1; f >= 0; --f) {
            Index digit = rem % dims[f];
            rem /= dims[f];
            if (kept[f]) {
                k += digit * kstride;
                kstride *= dims[f];
            } else {
                t += digit * tstride;
                tstride *= dims[f];
            }
        }
        kept_idx[full] = k;
        traced_idx[full] = t;
    }

    Mat out = Mat::Zero(kept_dim, kept_dim);
    for (Index j = 0; j < total; ++j) {
        for (Index i = 0; i < total; ++i) {
            if (traced_idx[i] == traced_idx[j]) {
                out(kept_idx[i], kept_idx[j]) += m(i, j);
            }
        }
    }
    return out;
}

Mat partial_trace(const Mat &m, std::initializer_list<int> dims, std::initializer_list<int> keep) {
    return partial_trace(m, std::span<const int>(dims.begin(), dims.size()),
                         std::span<const int>(keep.begin(), keep.size()));
}

Mat permutation_operator(int d, std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    Index total = 1;
    for (int k = 0; k < n; ++k) {
        total *= d;
    }
    std::vector<int> digits(n), moved(n);
    Mat out = Mat::Zero(total, total);
    for (Index x = 0; x < total; ++x) {
        Index rem = x;
        for (int k = n - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rem % d);
            rem /= d;
        }
        for (int k = 0; k < n; ++k) {
            moved[perm[k]] = digits[k];
        }
        Index y = 0;
        for (int k = 0; k < n; ++k) {
            y = y * d + moved[k];
        }
        out(y, x) = 1.0;
    }
    return out;
}

Mat symmetric_subspace_projector(int d, int n) {
    if (d < 1 || n < 1) {
        fail(ErrorCode::DimensionMismatch, "symmetric subspace needs d >= 1 and n >= 1");
    }
    double total_d = std::pow(static_cast<double>(d), n);
    if (n > 5 || total_d > 4096.0) {
        fail(ErrorCode::SizeCap, "symmetric subspace projector limited to n <= 5 and d^n <= 4096", total_d);
    }
    const Index total = static_cast<Index>(total_d);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double count = 0.0;
    std::vector<int> digits(n), moved(n);
    Mat out = Mat::Zero(total, total);
    do {
        count += 1.0;
        for (Index x = 0; x < total; ++x) {
            Index rem = x;
            for (int k = n - 1; k >= 0; --k) {
                digits[k] = static_cast<int>(rem % d);
                rem /= d;
            }
            for (int k = 0; k < n; ++k) {
                moved[perm[k]] = digits[k];
            }
            Index y = 0;
            for (int k = 0; k < n; ++k) {
                y = y * d + moved[k];
            }
            out(y, x) += 1.0;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out / count;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

Mat ginibre(Index rows, Index cols, Rng &rng) {
    Mat g(rows, cols);
    const double s = std::sqrt(0.5);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = cplx(s * re, s * im);
        }
    }
    return g;
}

Mat random_unitary(Index d, Rng &rng) {
    Mat g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < d; ++i) {
        cplx diag = r(i, i);
        double mag = std::abs(diag);
        cplx phase = mag > 0 ? diag / mag : cplx(1.0);
        q.col(i) *= phase;
    }
    return q;
}

Mat random_hermitian(Index d, Rng &rng) {
    Mat g = ginibre(d, d, rng);
    return hermitian_part(g);
}

}  // namespace transym
