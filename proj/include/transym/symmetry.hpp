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

#include <map>
#include <string>

#include "transym/quantum.hpp"

namespace transym {

/// Outcome of a tolerance-based predicate. The witness norm is reported even
/// when the predicate holds.
struct Verdict {
    bool holds;
    double witness;
};

/// e^{-iHt} rho e^{iHt}.
DensityMatrix time_translate(const DensityMatrix &rho, const SystemSpec &sys, double t);
Mat time_translate(const Mat &rho, const SystemSpec &sys, double t);

/// max-entry norm of [rho, H] against `tol`.
Verdict is_symmetric_state(const DensityMatrix &rho, const SystemSpec &sys, double tol = kTolStruct);
Verdict is_symmetric_state(const Mat &rho, const SystemSpec &sys, double tol = kTolStruct);

/// System with generator -H^T; its maximally entangled state with `sys` is
/// invariant under the joint translation.
SystemSpec dual_system(const SystemSpec &sys);

/// Eigen-structure of K = H_out (x) I - I (x) H_in^T on the Choi space.
///
/// A Choi operator commutes with K exactly when the channel is covariant.
/// K is diagonal in the basis V_out (x) conj(V_in) with integer labels
/// spec_out(a) - spec_in(i), so the commutant of K is reached by zeroing the
/// entries that connect different labels in that basis.
struct CovarianceSector {
    CovarianceSector(const SystemSpec &in, const SystemSpec &out);

    Mat generator;
    Mat basis;
    std::vector<int> labels;
    std::map<int, Mat> sectors;

    /// Pinching of an operator on the Choi space onto the K sectors.
    Mat dephase(const Mat &choi) const;
};

Verdict is_covariant_channel(const Channel &ch, double tol = kTolStruct);
Verdict is_covariant_choi(const Mat &choi, const SystemSpec &in, const SystemSpec &out, double tol = kTolStruct);

Channel twirl_channel(const Channel &ch);
DensityMatrix twirl_state(const DensityMatrix &rho, const SystemSpec &sys);

/// Covariant channel drawn by sector-dephasing a Ginibre Choi operator J0 and
/// renormalizing to J = (I (x) X^{-1/2}) J0 (I (x) X^{-1/2}), X = Tr_out J0.
///
/// Normalization keeps covariance: Tr_out[H_out (x) I, J0] vanishes by
/// cyclicity on the output factor, so Tr_out[J0, K] = [X, -H_in^T] = 0 and X,
/// hence X^{-1/2}, commutes with H_in^T. Draws with min eig X < 1e-8 are
/// rejected; Singular after 100 rejections.
Channel random_covariant_channel(const SystemSpec &in, const SystemSpec &out, Rng &rng);

/// 1 - Fid(rho, e^{-iHt} rho e^{iHt}).
double measure_ft(const DensityMatrix &rho, const SystemSpec &sys, double t);
double measure_ft(const Mat &rho, const SystemSpec &sys, double t);

/// Wigner-Yanase skew information -Tr([sqrt(rho), H]^2) / 2.
double skew_information(const DensityMatrix &rho, const SystemSpec &sys);
double skew_information(const Mat &rho, const SystemSpec &sys);

struct AsymmetryMeasureId {
    enum class Kind { FidelityShift, SkewInformation };
    Kind kind = Kind::SkewInformation;
    double t = 0.0;

    static AsymmetryMeasureId fidelity_shift(double t) { return {Kind::FidelityShift, t}; }
    static AsymmetryMeasureId skew() { return {Kind::SkewInformation, 0.0}; }

    double evaluate(const Mat &rho, const SystemSpec &sys) const;
    std::string name() const;
};

/// |f_t(psi (x) sigma) - [1 - (1 - f_t(psi))(1 - f_t(sigma))]| under the
/// non-interacting joint generator.
double product_ft_identity_check(const DensityMatrix &psi, const DensityMatrix &sigma, const SystemSpec &sys_a,
                                 const SystemSpec &sys_b, double t);

}  // namespace transym
