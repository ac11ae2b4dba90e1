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

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "transym/rng.hpp"

namespace transym {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

struct EigenSystem {
    RVec values;  // ascending
    Mat vectors;  // columns are orthonormal eigenvectors
};

double max_abs(const Mat &m);
bool all_finite(const Mat &m);
Mat dagger(const Mat &m);
Mat commutator(const Mat &a, const Mat &b);
Mat hermitian_part(const Mat &m);

/// Eigendecomposition of a Hermitian matrix. Throws NonHermitian when
/// max|m - m^dag| exceeds 1e-9 (1 + max|m|), NonFinite on NaN/Inf entries and
/// NoConvergence if the tridiagonal QR iteration fails.
EigenSystem hermitian_eig(const Mat &m);

/// f applied to the spectrum of a Hermitian matrix.
Mat hermitian_function(const Mat &m, const std::function<double(double)> &f);

/// Principal square root of a PSD matrix. Eigenvalues at or below kTolRank
/// are clipped to zero; NotPSD if the smallest eigenvalue is below -1e-9.
Mat psd_sqrt(const Mat &m);

/// Pseudo-inverse square root: eigenvalues at or below `cutoff` are excluded.
Mat psd_inv_sqrt(const Mat &m, double cutoff);

/// Projector onto the span of eigenvectors with eigenvalue above `cutoff`.
Mat support_projector(const Mat &m, double cutoff);

/// Sum of singular values.
double trace_norm(const Mat &m);
RVec singular_values(const Mat &m);

/// Kronecker product, first factor slow-varying.
Mat tensor_product(const Mat &a, const Mat &b);
Mat tensor_product(std::span<const Mat> factors);
Vec tensor_product(const Vec &a, const Vec &b);

/// Partial trace over every factor not listed in `keep`.
Mat partial_trace(const Mat &m, std::span<const int> dims, std::span<const int> keep);
Mat partial_trace(const Mat &m, std::initializer_list<int> dims, std::initializer_list<int> keep);

/// Operator permuting n tensor factors of dimension d: maps |i_0 ... i_{n-1}>
/// to the basis state whose slot perm[k] holds i_k.
Mat permutation_operator(int d, std::span<const int> perm);

/// (1/n!) sum over all permutation operators. SizeCap when n > 5 or d^n > 4096.
Mat symmetric_subspace_projector(int d, int n);

double binomial(int n, int k);

/// d1 x d2 matrix of independent standard complex Gaussians (re, im ~ N(0, 1/2)).
Mat ginibre(Index rows, Index cols, Rng &rng);
/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
Mat random_unitary(Index d, Rng &rng);
/// Random Hermitian matrix from the Gaussian unitary ensemble.
Mat random_hermitian(Index d, Rng &rng);

}  // namespace transym
