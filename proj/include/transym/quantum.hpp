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

#include <functional>
#include <vector>

#include "transym/linalg.hpp"
#include "transym/tolerances.hpp"

namespace transym {

/// A quantum system carrying a translation generator with integer spectrum.
///
/// The generator is stored through its eigendecomposition so translations
/// e^{-iHt} are exact phase multiplications in the stored eigenbasis. Joint
/// systems built with `joint` remember their factors, which is how partial
/// traces and induced maps find their subsystem dimensions.
class SystemSpec {
   public:
    SystemSpec(std::vector<int> spectrum, Mat eigenbasis);

    /// Generator diagonal in the computational basis.
    static SystemSpec diagonal(std::vector<int> spectrum);
    /// Generator H_a (x) I + I (x) H_b; factors recorded as parts {a, b}.
    static SystemSpec joint(const SystemSpec &a, const SystemSpec &b);
    /// Zero generator: every state is symmetric.
    static SystemSpec trivial(int dim);

    int dim() const { return static_cast<int>(spectrum_.size()); }
    const std::vector<int> &spectrum() const { return spectrum_; }
    const Mat &eigenbasis() const { return eigenbasis_; }
    const Mat &hamiltonian() const { return hamiltonian_; }
    const std::vector<SystemSpec> &parts() const { return parts_; }
    bool is_composite() const { return !parts_.empty(); }
    std::vector<int> part_dims() const;
    int spectral_diameter() const;

    /// e^{-iHt}.
    Mat translation(double t) const;

   private:
    std::vector<int> spectrum_;
    Mat eigenbasis_;
    Mat hamiltonian_;
    std::vector<SystemSpec> parts_;
};

class DensityMatrix {
   public:
    /// Validates Hermiticity, positivity and unit trace within `tol`.
    explicit DensityMatrix(Mat m, double tol = kTolStruct);

    /// Hermitian part of `m`, no other checks. For states produced by exact
    /// constructions inside the library.
    static DensityMatrix trusted(Mat m);
    static DensityMatrix pure(const Vec &v);
    static DensityMatrix maximally_mixed(Index d);
    static DensityMatrix basis_state(Index d, Index k);

    const Mat &mat() const { return m_; }
    Index dim() const { return m_.rows(); }
    double purity() const;

   private:
    struct TrustedTag {};
    DensityMatrix(Mat m, TrustedTag);
    Mat m_;
};

class PureState {
   public:
    /// Norm must be 1 within 1e-12.
    explicit PureState(Vec v);
    static PureState normalized(Vec v);

    const Vec &vec() const { return v_; }
    Index dim() const { return v_.size(); }
    DensityMatrix projector() const { return DensityMatrix::pure(v_); }

   private:
    Vec v_;
};

/// (1/sqrt d) sum_i |ii>.
PureState maximally_entangled_state(int d);

/// Completely positive trace-preserving map stored as its Choi operator
/// J = sum_ij E(|i><j|) (x) |i><j|, output factor first, trace = input dim.
class Channel {
   public:
    /// Validates PSD and Tr_out J = I within `tol`; InvalidChannel otherwise.
    Channel(SystemSpec input, SystemSpec output, Mat choi, double tol = kTolStruct);

    static Channel from_map(SystemSpec input, SystemSpec output, const std::function<Mat(const Mat &)> &map);
    static Channel from_kraus(SystemSpec input, SystemSpec output, const std::vector<Mat> &kraus);
    static Channel identity(const SystemSpec &sys);
    static Channel unitary(const SystemSpec &sys, const Mat &u);
    /// X -> Tr(X) tau.
    static Channel constant(SystemSpec input, SystemSpec output, const DensityMatrix &tau);
    /// X -> Tr(X) I/d_out.
    static Channel depolarizing(SystemSpec input, SystemSpec output);
    /// Pinching onto the eigenspaces of the generator.
    static Channel dephasing(const SystemSpec &sys);

    const SystemSpec &input() const { return input_; }
    const SystemSpec &output() const { return output_; }
    const Mat &choi() const { return choi_; }
    Index din() const { return input_.dim(); }
    Index dout() const { return output_.dim(); }

    /// Linear action on an arbitrary operator on the input space.
    Mat apply(const Mat &x) const;
    /// Heisenberg-picture adjoint: Tr[Y E(X)] = Tr[E^dag(Y) X].
    Mat apply_adjoint(const Mat &y) const;

   private:
    SystemSpec input_;
    SystemSpec output_;
    Mat choi_;
};

/// Tr_in[choi (I (x) x^T)].
Mat choi_apply(const Mat &choi, Index din, Index dout, const Mat &x);
/// Tr_out over the first factor of a Choi operator.
Mat choi_input_marginal(const Mat &choi, Index din, Index dout);
/// Residual of the Channel invariants: max(-min eigenvalue, max|Tr_out J - I|).
double channel_violation(const Mat &choi, Index din, Index dout);

Channel tensor(const Channel &a, const Channel &b);
/// second o first.
Channel compose(const Channel &second, const Channel &first);
/// Partial trace of a channel's composite output, keeping factor `keep`.
Channel reduce_output(const Channel &ch, int keep);

double fidelity(const DensityMatrix &a, const DensityMatrix &b);
double fidelity(const Mat &a, const Mat &b);
double trace_distance(const Mat &a, const Mat &b);

DensityMatrix apply_channel(const Channel &ch, const DensityMatrix &rho);

/// sigma -> Tr_{Q'}[Lambda(rho_Q (x) sigma)] for Lambda: Q S -> Q' S'.
Channel induce_channel(const Channel &joint, const DensityMatrix &rho_q);

/// G G^dag / Tr(G G^dag) with G a d x rank Ginibre matrix.
DensityMatrix random_density_matrix(int d, int rank, Rng &rng);

DensityMatrix partial_state(const DensityMatrix &rho, std::span<const int> dims, std::span<const int> keep);
DensityMatrix tensor_state(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace transym
