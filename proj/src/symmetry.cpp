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

#include "transym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "transym/errors.hpp"

namespace transym {

namespace {

void check_dim(Index d, const SystemSpec &sys) {
    if (d != sys.dim()) {
        fail(ErrorCode::DimensionMismatch, "state dimension does not match the system");
    }
}

}  // namespace

Mat time_translate(const Mat &rho, const SystemSpec &sys, double t) {
    check_dim(rho.rows(), sys);
    Mat u = sys.translation(t);
    return u * rho * u.adjoint();
}

DensityMatrix time_translate(const DensityMatrix &rho, const SystemSpec &sys, double t) {
    return DensityMatrix::trusted(time_translate(rho.mat(), sys, t));
}

Verdict is_symmetric_state(const Mat &rho, const SystemSpec &sys, double tol) {
    check_dim(rho.rows(), sys);
    double w = max_abs(commutator(rho, sys.hamiltonian()));
    return {w <= tol, w};
}

Verdict is_symmetric_state(const DensityMatrix &rho, const SystemSpec &sys, double tol) {
    return is_symmetric_state(rho.mat(), sys, tol);
}

SystemSpec dual_system(const SystemSpec &sys) {
    std::vector<int> spec = sys.spectrum();
    for (int &x : spec) {
        x = -x;
    }
    return SystemSpec(std::move(spec), sys.eigenbasis().conjugate());
}

CovarianceSector::CovarianceSector(const SystemSpec &in, const SystemSpec &out) {
    const Index din = in.dim();
    const Index dout = out.dim();
    generator = tensor_product(out.hamiltonian(), Mat::Identity(din, din)) -
                tensor_product(Mat::Identity(dout, dout), Mat(in.hamiltonian().transpose()));
    basis = tensor_product(out.eigenbasis(), Mat(in.eigenbasis().conjugate()));
    labels.resize(din * dout);
    for (Index a = 0; a < dout; ++a) {
        for (Index i = 0; i < din; ++i) {
            labels[a * din + i] = out.spectrum()[a] - in.spectrum()[i];
        }
    }
    for (Index k = 0; k < din * dout; ++k) {
        auto it = sectors.find(labels[k]);
        if (it == sectors.end()) {
            it = sectors.emplace(labels[k], Mat::Zero(din * dout, din * dout)).first;
        }
        it->second += basis.col(k) * basis.col(k).adjoint();
    }
}

Mat CovarianceSector::dephase(const Mat &choi) const {
    Mat y = basis.adjoint() * choi * basis;
    for (Index j = 0; j < y.cols(); ++j) {
        for (Index i = 0; i < y.rows(); ++i) {
            if (labels[i] != labels[j]) {
                y(i, j) = 0.0;
            }
        }
    }
    return basis * y * basis.adjoint();
}

Verdict is_covariant_choi(const Mat &choi, const SystemSpec &in, const SystemSpec &out, double tol) {
    const Index n = in.dim() * out.dim();
    if (choi.rows() != n || choi.cols() != n) {
        fail(ErrorCode::InvalidChannel, "Choi matrix size does not match the systems");
    }
    Mat k = tensor_product(out.hamiltonian(), Mat::Identity(in.dim(), in.dim())) -
            tensor_product(Mat::Identity(out.dim(), out.dim()), Mat(in.hamiltonian().transpose()));
    double w = max_abs(commutator(choi, k));
    return {w <= tol, w};
}

Verdict is_covariant_channel(const Channel &ch, double tol) {
    return is_covariant_choi(ch.choi(), ch.input(), ch.output(), tol);
}

Channel twirl_channel(const Channel &ch) {
    CovarianceSector cs(ch.input(), ch.output());
    Mat j = hermitian_part(cs.dephase(ch.choi()));
    return Channel(ch.input(), ch.output(), std::move(j));
}

DensityMatrix twirl_state(const DensityMatrix &rho, const SystemSpec &sys) {
    check_dim(rho.dim(), sys);
    const Mat &v = sys.eigenbasis();
    Mat y = v.adjoint() * rho.mat() * v;
    for (Index j = 0; j < y.cols(); ++j) {
        for (Index i = 0; i < y.rows(); ++i) {
            if (sys.spectrum()[i] != sys.spectrum()[j]) {
                y(i, j) = 0.0;
            }
        }
    }
    return DensityMatrix::trusted(v * y * v.adjoint());
}

Channel random_covariant_channel(const SystemSpec &in, const SystemSpec &out, Rng &rng) {
    const Index din = in.dim();
    const Index dout = out.dim();
    const Index n = din * dout;
    CovarianceSector cs(in, out);
    double last_min = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
        Mat g = ginibre(n, n, rng);
        Mat j0 = hermitian_part(cs.dephase(g * g.adjoint()));
        Mat x = choi_input_marginal(j0, din, dout);
        auto es = hermitian_eig(hermitian_part(x));
        last_min = es.values(0);
        if (last_min < 1e-8) {
            continue;
        }
        RVec inv = es.values.cwiseSqrt().cwiseInverse();
        Mat y = es.vectors * inv.cast<cplx>().asDiagonal() * es.vectors.adjoint();
        Mat s = tensor_product(Mat::Identity(dout, dout), y);
        Mat j = hermitian_part(s * j0 * s);
        return Channel(in, out, std::move(j));
    }
    fail(ErrorCode::Singular, "random covariant channel: input marginal stayed singular", last_min);
}

double measure_ft(const Mat &rho, const SystemSpec &sys, double t) {
    check_dim(rho.rows(), sys);
    double f = fidelity(rho, time_translate(rho, sys, t));
    return std::clamp(1.0 - f, 0.0, 1.0);
}

double measure_ft(const DensityMatrix &rho, const SystemSpec &sys, double t) { return measure_ft(rho.mat(), sys, t); }

double skew_information(const Mat &rho, const SystemSpec &sys) {
    check_dim(rho.rows(), sys);
    Mat c = commutator(psd_sqrt(rho), sys.hamiltonian());
    double v = -0.5 * (c * c).trace().real();
    return std::max(v, 0.0);
}

double skew_information(const DensityMatrix &rho, const SystemSpec &sys) { return skew_information(rho.mat(), sys); }

double AsymmetryMeasureId::evaluate(const Mat &rho, const SystemSpec &sys) const {
    if (kind == Kind::FidelityShift) {
        return measure_ft(rho, sys, t);
    }
    return skew_information(rho, sys);
}

std::string AsymmetryMeasureId::name() const {
    if (kind == Kind::SkewInformation) {
        return "skew_information";
    }
    std::ostringstream os;
    os.precision(17);
    os << "fidelity_shift(t=" << t << ")";
    return os.str();
}

double product_ft_identity_check(const DensityMatrix &psi, const DensityMatrix &sigma, const SystemSpec &sys_a,
                                 const SystemSpec &sys_b, double t) {
    auto joint = SystemSpec::joint(sys_a, sys_b);
    double f_joint = measure_ft(tensor_state(psi, sigma), joint, t);
    double f_a = measure_ft(psi, sys_a, t);
    double f_b = measure_ft(sigma, sys_b, t);
    return std::abs(f_joint - (1.0 - (1.0 - f_a) * (1.0 - f_b)));
}

}  // namespace transym
