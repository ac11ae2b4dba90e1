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

#include <vector>

#include "transym/linalg.hpp"

namespace transym {

/// Orthonormal basis (columns) of the null space of `a`; singular values at or
/// below `tol * max(1, largest singular value)` count as zero.
Mat nullspace(const Mat &a, double tol);

/// Unital *-subalgebra of M_d described by a Hilbert-Schmidt orthonormal basis.
struct OperatorAlgebra {
    int d = 0;
    std::vector<Mat> basis;
    /// Generators (and their adjoints) the basis was closed under; the center
    /// is computed as the part of the algebra commuting with these.
    std::vector<Mat> generators;

    int dim() const { return static_cast<int>(basis.size()); }
    /// Orthonormal basis of the center.
    std::vector<Mat> center(double tol) const;
    /// Hilbert-Schmidt orthogonal projection of `x` onto the algebra.
    Mat project(const Mat &x) const;
};

/// Smallest unital *-algebra containing `gens`. Elements are added to the
/// basis by two-pass Gram-Schmidt when their residual exceeds `tol` times
/// their norm; closure is by left multiplication with generators and
/// adjoints until one full pass adds nothing.
OperatorAlgebra generate_algebra(const std::vector<Mat> &gens, double tol = 1e-9);

/// One simple summand: Pi A Pi ~= M_m (x) I_k realized by `isometry`
/// (d x mk, column j*k + l <-> |j>_L |l>_R).
struct WedderburnBlock {
    Mat projector;
    Mat isometry;
    int m = 0;
    int k = 0;
};

/// Block structure of a unital *-algebra. Central projectors come from a
/// generic Hermitian central element; inside each block a generic Hermitian
/// element splits the space into m eigenspaces of multiplicity k, and matrix
/// units P_j a P_1 carry the first eigenspace onto the others.
///
/// CenterDegenerate when five generic draws all fail to separate the blocks.
std::vector<WedderburnBlock> wedderburn_decompose(const OperatorAlgebra &alg, Rng &rng, double tol = 1e-8);

}  // namespace transym
