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

#include <string>
#include <vector>

#include "transym/algebra.hpp"
#include "transym/quantum.hpp"

namespace transym {

struct StateFamily {
    std::vector<DensityMatrix> states;
    std::vector<std::string> labels;

    StateFamily(std::vector<DensityMatrix> states, std::vector<std::string> labels = {});
    int dim() const { return static_cast<int>(states.front().dim()); }
    int size() const { return static_cast<int>(states.size()); }
    Mat average() const;
};

struct KIBlock {
    Mat projector;
    /// d x (m k), column j*k + l <-> |j>_L |l>_R.
    Mat isometry;
    int m = 0;
    int k = 0;
    Mat omega;
};

/// Each family member decomposes as
///   rho^x = sum_mu p^x_mu V_mu (rho^x_{L,mu} (x) omega_mu) V_mu^dag.
struct KIDecomposition {
    std::vector<KIBlock> blocks;
    std::vector<std::string> labels;
    /// probs[x][mu].
    std::vector<std::vector<double>> probs;
    /// rho_l[x][mu], m_mu x m_mu; maximally mixed when p^x_mu vanishes.
    std::vector<std::vector<Mat>> rho_l;

    /// The state rebuilt from its block data.
    Mat reconstruct(int x) const;
};

/// Koashi-Imoto decomposition of a finite family of states.
///
/// Works on the support of the average state rho_bar. The transition
/// operators T_x = rho_bar^{-1/2} rho^x rho_bar^{-1/2} alone can generate too
/// small an algebra when the fixed parts omega_mu are not maximally mixed, so
/// the generators are the components of each T_x between eigenspaces of
/// rho_bar grouped by eigenvalue ratio. These span the smallest algebra that
/// contains every T_x and is invariant under rho_bar^{is} (.) rho_bar^{-is},
/// which is exactly the algebra whose Wedderburn blocks carry the KI structure.
///
/// RankCollapse if the retained spectrum of rho_bar has condition number
/// above 1e12; CenterDegenerate propagates from the block split.
KIDecomposition ki_decompose(const StateFamily &fam, Rng &rng, double tol = 1e-8);
KIDecomposition ki_decompose(const StateFamily &fam, double tol = 1e-8);

struct KIInvariants {
    /// max_x trace distance between rho^x and its block reconstruction.
    double reconstruction;
    /// max_mu max|V_mu^dag V_mu - I|.
    double isometry;
    /// max of |sum Pi_mu - supp(rho_bar)| and |Pi_mu Pi_nu| for mu != nu.
    double projectors;
    /// Every block with m >= 2 has its left states generating all of M_m.
    bool maximal;

    bool hold(double recon_tol = 1e-7, double struct_tol = 1e-8) const {
        return reconstruction <= recon_tol && isometry <= struct_tol && projectors <= struct_tol && maximal;
    }
};

KIInvariants check_ki_invariants(const KIDecomposition &dec, const StateFamily &fam);

/// Unital *-algebra generated by the modular components of the transition
/// operators, on the support of the average (basis in support coordinates).
OperatorAlgebra ki_algebra(const StateFamily &fam, double tol = 1e-8);

/// Translates of rho at t_j = 2 pi j / n. n doubles from n_samples until the
/// algebra generated by the transition operators has the same dimension for
/// n and 2n; SizeCap if that needs n > 64.
StateFamily orbit_family(const DensityMatrix &rho, const SystemSpec &sys, int n_samples);

/// max over blocks and t of |Tr(Pi_mu U(t) rho U(t)^dag) - Tr(Pi_mu rho)|.
double ehrenfest_constancy_check(const KIDecomposition &dec, const DensityMatrix &rho, const SystemSpec &sys,
                                 const std::vector<double> &t_grid);

struct ReducedFormCheck {
    double residual;
    double disturbance;
    std::vector<Mat> block_states;
};

/// Least-squares fit sigma^x_{S'} ~ sum_mu p^x_mu sigma^mu_{S'} for a map
/// Q -> Q S' whose Q marginal fixes the family. `residual` is the worst trace
/// distance of the fit. PreconditionFailed when the Q marginal moves some
/// member by more than `tol` in trace distance.
ReducedFormCheck lemma4_reduced_form_check(const Channel &broadcast, const StateFamily &fam,
                                           const KIDecomposition &dec, double tol);

}  // namespace transym
