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

#include "transym/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "transym/errors.hpp"

namespace transym {

// ---------------------------------------------------------------------------
// SystemSpec

SystemSpec::SystemSpec(std::vector<int> spectrum, Mat eigenbasis)
    : spectrum_(std::move(spectrum)), eigenbasis_(std::move(eigenbasis)) {
    const Index d = static_cast<Index>(spectrum_.size());
    if (d < 1) {
        fail(ErrorCode::DimensionMismatch, "system dimension must be positive");
    }
    if (eigenbasis_.rows() != d || eigenbasis_.cols() != d) {
        fail(ErrorCode::DimensionMismatch, "eigenbasis must be dim x dim");
    }
    double unitarity = max_abs(eigenbasis_.adjoint() * eigenbasis_ - Mat::Identity(d, d));
    if (unitarity > kTolStruct) {
        fail(ErrorCode::DimensionMismatch, "eigenbasis is not unitary", unitarity);
    }
    RVec lam(d);
    for (Index k = 0; k < d; ++k) {
        lam(k) = spectrum_[k];
    }
    hamiltonian_ = eigenbasis_ * lam.cast<cplx>().asDiagonal() * eigenbasis_.adjoint();
    hamiltonian_ = hermitian_part(hamiltonian_);
}

SystemSpec SystemSpec::diagonal(std::vector<int> spectrum) {
    const Index d = static_cast<Index>(spectrum.size());
    return SystemSpec(std::move(spectrum), Mat::Identity(d, d));
}

SystemSpec SystemSpec::trivial(int dim) { return diagonal(std::vector<int>(dim, 0)); }

SystemSpec SystemSpec::joint(const SystemSpec &a, const SystemSpec &b) {
    std::vector<int> spec;
    spec.reserve(a.spectrum_.size() * b.spectrum_.size());
    for (int x : a.spectrum_) {
        for (int y : b.spectrum_) {
            spec.push_back(x + y);
        }
    }
    SystemSpec out(std::move(spec), tensor_product(a.eigenbasis_, b.eigenbasis_));
    out.parts_ = {a, b};
    return out;
}

std::vector<int> SystemSpec::part_dims() const {
    std::vector<int> dims;
    for (const auto &p : parts_) {
        dims.push_back(p.dim());
    }
    return dims;
}

int SystemSpec::spectral_diameter() const {
    auto [lo, hi] = std::minmax_element(spectrum_.begin(), spectrum_.end());
    return *hi - *lo;
}

Mat SystemSpec::translation(double t) const {
    Vec phases(dim());
    for (int k = 0; k < dim(); ++k) {
        phases(k) = std::polar(1.0, -spectrum_[k] * t);
    }
    return eigenbasis_ * phases.asDiagonal() * eigenbasis_.adjoint();
}

// ---------------------------------------------------------------------------
// States

DensityMatrix::DensityMatrix(Mat m, TrustedTag) : m_(std::move(m)) {}

DensityMatrix::DensityMatrix(Mat m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail(ErrorCode::DimensionMismatch, "density matrix must be square and nonempty");
    }
    if (!all_finite(m)) {
        fail(ErrorCode::NonFinite, "density matrix has NaN/Inf entries");
    }
    double asym = max_abs(m - m.adjoint());
    if (asym > tol) {
        fail(ErrorCode::NonHermitian, "density matrix is not Hermitian", asym);
    }
    m = hermitian_part(m);
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        fail(ErrorCode::NotPSD, "density matrix trace is not 1", tr);
    }
    double min_eig = hermitian_eig(m).values(0);
    if (min_eig < -tol) {
        fail(ErrorCode::NotPSD, "density matrix has a negative eigenvalue", min_eig);
    }
    m_ = std::move(m);
}

DensityMatrix DensityMatrix::trusted(Mat m) { return DensityMatrix(hermitian_part(m), TrustedTag{}); }

DensityMatrix DensityMatrix::pure(const Vec &v) {
    Vec u = v / v.norm();
    return DensityMatrix(u * u.adjoint(), TrustedTag{});
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
    return DensityMatrix(Mat::Identity(d, d) / static_cast<double>(d), TrustedTag{});
}

DensityMatrix DensityMatrix::basis_state(Index d, Index k) {
    Mat m = Mat::Zero(d, d);
    m(k, k) = 1.0;
    return DensityMatrix(std::move(m), TrustedTag{});
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

PureState::PureState(Vec v) : v_(std::move(v)) {
    double n = v_.norm();
    if (std::abs(n - 1.0) > 1e-12) {
        fail(ErrorCode::DimensionMismatch, "pure state vector is not normalized", n);
    }
}

PureState PureState::normalized(Vec v) {
    double n = v.norm();
    if (!(n > 0.0)) {
        fail(ErrorCode::NonFinite, "cannot normalize a zero vector");
    }
    return PureState(v / n);
}

PureState maximally_entangled_state(int d) {
    if (d < 1) {
        fail(ErrorCode::DimensionMismatch, "maximally entangled state needs d >= 1");
    }
    Vec v = Vec::Zero(static_cast<Index>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        v(static_cast<Index>(i) * d + i) = amp;
    }
    return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// Choi-level primitives

Mat choi_apply(const Mat &choi, Index din, Index dout, const Mat &x) {
    Mat out = Mat::Zero(dout, dout);
    for (Index j = 0; j < din; ++j) {
        for (Index i = 0; i < din; ++i) {
            cplx xij = x(i, j);
            if (xij == cplx(0.0)) {
                continue;
            }
            for (Index b = 0; b < dout; ++b) {
                for (Index a = 0; a < dout; ++a) {
                    out(a, b) += choi(a * din + i, b * din + j) * xij;
                }
            }
        }
    }
    return out;
}

Mat choi_input_marginal(const Mat &choi, Index din, Index dout) {
    Mat out = Mat::Zero(din, din);
    for (Index a = 0; a < dout; ++a) {
        out += choi.block(a * din, a * din, din, din);
    }
    return out;
}

double channel_violation(const Mat &choi, Index din, Index dout) {
    double tp = max_abs(choi_input_marginal(choi, din, dout) - Mat::Identity(din, din));
    double min_eig = hermitian_eig(hermitian_part(choi)).values(0);
    return std::max(tp, -min_eig);
}

// ---------------------------------------------------------------------------
// Channel

Channel::Channel(SystemSpec input, SystemSpec output, Mat choi, double tol)
    : input_(std::move(input)), output_(std::move(output)) {
    const Index n = input_.dim() * output_.dim();
    if (choi.rows() != n || choi.cols() != n) {
        fail(ErrorCode::InvalidChannel, "Choi matrix size does not match dout * din");
    }
    if (!all_finite(choi)) {
        fail(ErrorCode::InvalidChannel, "Choi matrix has NaN/Inf entries");
    }
    double asym = max_abs(choi - choi.adjoint());
    if (asym > tol * (1.0 + max_abs(choi))) {
        fail(ErrorCode::InvalidChannel, "Choi matrix is not Hermitian", asym);
    }
    choi_ = hermitian_part(choi);
    double min_eig = hermitian_eig(choi_).values(0);
    if (min_eig < -tol) {
        fail(ErrorCode::InvalidChannel, "Choi matrix is not positive semidefinite", min_eig);
    }
    double tp = max_abs(choi_input_marginal(choi_, din(), dout()) - Mat::Identity(din(), din()));
    if (tp > tol) {
        fail(ErrorCode::InvalidChannel, "map is not trace preserving", tp);
    }
}

Channel Channel::from_map(SystemSpec input, SystemSpec output, const std::function<Mat(const Mat &)> &map) {
    const Index din = input.dim();
    const Index dout = output.dim();
    Mat choi = Mat::Zero(din * dout, din * dout);
    Mat e = Mat::Zero(din, din);
    for (Index j = 0; j < din; ++j) {
        for (Index i = 0; i < din; ++i) {
            e(i, j) = 1.0;
            Mat img = map(e);
            e(i, j) = 0.0;
            if (img.rows() != dout || img.cols() != dout) {
                fail(ErrorCode::DimensionMismatch, "map output does not match output dimension");
            }
            for (Index b = 0; b < dout; ++b) {
                for (Index a = 0; a < dout; ++a) {
                    choi(a * din + i, b * din + j) = img(a, b);
                }
            }
        }
    }
    return Channel(std::move(input), std::move(output), std::move(choi));
}

Channel Channel::from_kraus(SystemSpec input, SystemSpec output, const std::vector<Mat> &kraus) {
    return from_map(std::move(input), std::move(output), [&kraus](const Mat &x) {
        Mat y = Mat::Zero(kraus.front().rows(), kraus.front().rows());
        for (const auto &k : kraus) {
            y += k * x * k.adjoint();
        }
        return y;
    });
}

Channel Channel::identity(const SystemSpec &sys) {
    return from_map(sys, sys, [](const Mat &x) { return x; });
}

Channel Channel::unitary(const SystemSpec &sys, const Mat &u) {
    return from_map(sys, sys, [&u](const Mat &x) { return Mat(u * x * u.adjoint()); });
}

Channel Channel::constant(SystemSpec input, SystemSpec output, const DensityMatrix &tau) {
    if (tau.dim() != output.dim()) {
        fail(ErrorCode::DimensionMismatch, "prepared state does not match output dimension");
    }
    return from_map(std::move(input), std::move(output), [&tau](const Mat &x) { return Mat(x.trace() * tau.mat()); });
}

Channel Channel::depolarizing(SystemSpec input, SystemSpec output) {
    auto tau = DensityMatrix::maximally_mixed(output.dim());
    return constant(std::move(input), std::move(output), tau);
}

Channel Channel::dephasing(const SystemSpec &sys) {
    const Mat &v = sys.eigenbasis();
    const auto &spec = sys.spectrum();
    return from_map(sys, sys, [&](const Mat &x) {
        Mat y = v.adjoint() * x * v;
        for (Index j = 0; j < y.cols(); ++j) {
            for (Index i = 0; i < y.rows(); ++i) {
                if (spec[i] != spec[j]) {
                    y(i, j) = 0.0;
                }
            }
        }
        return Mat(v * y * v.adjoint());
    });
}

Mat Channel::apply(const Mat &x) const {
    if (x.rows() != din() || x.cols() != din()) {
        fail(ErrorCode::DimensionMismatch, "operator does not match channel input dimension");
    }
    return choi_apply(choi_, din(), dout(), x);
}

Mat Channel::apply_adjoint(const Mat &y) const {
    if (y.rows() != dout() || y.cols() != dout()) {
        fail(ErrorCode::DimensionMismatch, "operator does not match channel output dimension");
    }
    const Index ni = din();
    const Index no = dout();
    Mat out = Mat::Zero(ni, ni);
    for (Index b = 0; b < no; ++b) {
        for (Index a = 0; a < no; ++a) {
            cplx yba = y(b, a);
            if (yba == cplx(0.0)) {
                continue;
            }
            for (Index j = 0; j < ni; ++j) {
                for (Index i = 0; i < ni; ++i) {
                    out(j, i) += yba * choi_(a * ni + i, b * ni + j);
                }
            }
        }
    }
    return out;
}

Channel tensor(const Channel &a, const Channel &b) {
    auto in = SystemSpec::joint(a.input(), b.input());
    auto out = SystemSpec::joint(a.output(), b.output());
    const Index ia = a.din(), ib = b.din();
    return Channel::from_map(in, out, [&](const Mat &x) {
        Mat y = Mat::Zero(a.dout() * b.dout(), a.dout() * b.dout());
        Mat ea = Mat::Zero(ia, ia), eb = Mat::Zero(ib, ib);
        for (Index i1 = 0; i1 < ia; ++i1) {
            for (Index j1 = 0; j1 < ia; ++j1) {
                ea(i1, j1) = 1.0;
                Mat block = Mat::Zero(ib, ib);
                bool any = false;
                for (Index i2 = 0; i2 < ib; ++i2) {
                    for (Index j2 = 0; j2 < ib; ++j2) {
                        block(i2, j2) = x(i1 * ib + i2, j1 * ib + j2);
                        any = any || block(i2, j2) != cplx(0.0);
                    }
                }
                if (any) {
                    y += tensor_product(a.apply(ea), b.apply(block));
                }
                ea(i1, j1) = 0.0;
            }
        }
        return y;
    });
}

Channel compose(const Channel &second, const Channel &first) {
    if (first.dout() != second.din()) {
        fail(ErrorCode::DimensionMismatch, "cannot compose channels with mismatched dimensions");
    }
    return Channel::from_map(first.input(), second.output(),
                             [&](const Mat &x) { return second.apply(first.apply(x)); });
}

Channel reduce_output(const Channel &ch, int keep) {
    if (!ch.output().is_composite()) {
        fail(ErrorCode::DimensionMismatch, "channel output is not a composite system");
    }
    const auto dims = ch.output().part_dims();
    if (keep < 0 || keep >= static_cast<int>(dims.size())) {
        fail(ErrorCode::BadIndex, "output factor index out of range");
    }
    const int keep_arr[1] = {keep};
    return Channel::from_map(ch.input(), ch.output().parts()[keep],
                             [&](const Mat &x) { return partial_trace(ch.apply(x), dims, keep_arr); });
}

// ---------------------------------------------------------------------------
// Fidelity and channel application

double fidelity(const Mat &a, const Mat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::DimensionMismatch, "fidelity of states with different dimensions");
    }
    double f = trace_norm(psd_sqrt(a) * psd_sqrt(b));
    return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix &a, const DensityMatrix &b) { return fidelity(a.mat(), b.mat()); }

double trace_distance(const Mat &a, const Mat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::DimensionMismatch, "trace distance of operators with different dimensions");
    }
    return 0.5 * trace_norm(a - b);
}

DensityMatrix apply_channel(const Channel &ch, const DensityMatrix &rho) {
    if (rho.dim() != ch.din()) {
        fail(ErrorCode::DimensionMismatch, "state does not match channel input dimension");
    }
    return DensityMatrix(ch.apply(rho.mat()));
}

Channel induce_channel(const Channel &joint, const DensityMatrix &rho_q) {
    const auto &in = joint.input();
    const auto &out = joint.output();
    if (in.parts().size() != 2 || out.parts().size() != 2) {
        fail(ErrorCode::DimensionMismatch, "induced channel needs a bipartite Q S -> Q' S' map");
    }
    if (rho_q.dim() != in.parts()[0].dim()) {
        fail(ErrorCode::DimensionMismatch, "rho_Q does not match the Q factor of the joint map");
    }
    const auto dims = out.part_dims();
    const int keep[1] = {1};
    return Channel::from_map(in.parts()[1], out.parts()[1], [&](const Mat &sigma) {
        return partial_trace(joint.apply(tensor_product(rho_q.mat(), sigma)), dims, keep);
    });
}

DensityMatrix random_density_matrix(int d, int rank, Rng &rng) {
    if (d < 1 || rank < 1 || rank > d) {
        fail(ErrorCode::DimensionMismatch, "random_density_matrix needs 1 <= rank <= d");
    }
    Mat g = ginibre(d, rank, rng);
    Mat m = g * g.adjoint();
    return DensityMatrix::trusted(m / m.trace().real());
}

DensityMatrix partial_state(const DensityMatrix &rho, std::span<const int> dims, std::span<const int> keep) {
    return DensityMatrix::trusted(partial_trace(rho.mat(), dims, keep));
}

DensityMatrix tensor_state(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::trusted(tensor_product(a.mat(), b.mat()));
}

}  // namespace transym
