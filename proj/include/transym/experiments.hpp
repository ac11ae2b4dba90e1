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

#include <optional>
#include <string>
#include <vector>

#include "transym/ki.hpp"
#include "transym/optimize.hpp"
#include "transym/symmetry.hpp"

namespace transym {

/// A named check evaluated by an experiment. Experiments never throw on a
/// failed check; they record it here and callers decide (the CLI exits 2).
struct Assertion {
    std::string name;
    bool pass;
    double witness;
};

bool all_pass(const std::vector<Assertion> &assertions);

// ---------------------------------------------------------------------------
// No broadcasting

struct NoBroadcastConfig {
    OptimizerConfig optimizer;
    double coherence_tol = 1e-4;
    std::vector<double> buckets{1e-2, 1e-3, 1e-4, 1e-5};
    int orbit_samples = 4;
};

struct BucketRow {
    double threshold;
    int attempts;
    double max_coherence;
};

struct ClassicalControl {
    double disturbance;
    double output_coherence;
    double unconstrained_max;
};

struct NoBroadcastResult {
    std::vector<BroadcastAttempt> frontier;
    std::vector<BucketRow> buckets;
    /// Index into `buckets` of the smallest threshold reached by some attempt.
    std::optional<size_t> smallest_bucket;
    KIDecomposition ki;
    int orbit_size;
    double ehrenfest_deviation;
    /// Worst fit residual and block-state asymmetry over attempts whose
    /// disturbance is at most 1e-6.
    double lemma4_residual;
    double block_state_asymmetry;
    std::vector<Assertion> assertions;
};

/// Broadcast frontier for an asymmetric rho_Q plus the KI cross-check on its
/// translation orbit. PreconditionFailed if rho_Q is symmetric.
NoBroadcastResult run_no_broadcast_sweep(const DensityMatrix &rho, const SystemSpec &sys_q, const SystemSpec &sys_s,
                                         const NoBroadcastConfig &cfg);

/// Commuting control: rho_Q = (|+><+|_{01} + |2><2|)/2 on a qutrit with
/// H = diag(0, 0, 1), broadcast by measuring in the basis {|+>, |->, |2>}
/// (energy eigenstates) and writing the outcome on a copy of Q. The map is
/// covariant, leaves rho_Q untouched and copies its distribution to S'.
/// `unconstrained_max` is the best output coherence the optimizer finds with
/// no marginal penalty.
ClassicalControl run_classical_control(const OptimizerConfig &cfg);

// ---------------------------------------------------------------------------
// Tradeoff

struct TradeoffRecord {
    double t;
    double ft_input;
    double ft_output;
    double irrev;
    double lhs;
    double rhs;
    double slack;
    bool converged;
};

struct TradeoffResult {
    std::vector<TradeoffRecord> records;
    std::vector<double> skipped_t;
    std::vector<Assertion> assertions;
};

/// Record for one fixed broadcast map: lhs = f_t(sigma_S'),
/// rhs = 4 sqrt(irrev) / (1 - f_t(psi)), irrev from recovering psi out of
/// sigma_Q.
TradeoffRecord tradeoff_record(const PureState &psi, const Channel &broadcast, const SystemSpec &sys_q,
                               const SystemSpec &sys_s, double t, const OptimizerConfig &cfg);

/// One record per (t, lambda). Times with f_t(psi) = 1 (within 1e-12) are
/// skipped and listed.
TradeoffResult run_tradeoff_sweep(const PureState &psi, const SystemSpec &sys_q, const SystemSpec &sys_s,
                                  const std::vector<double> &t_grid, const OptimizerConfig &cfg);

// ---------------------------------------------------------------------------
// Degradation

/// Joint system Q S with the partial swap U = cos(theta) I + i sin(theta) SWAP,
/// twirled. Q and S must have equal dimension.
Channel twirled_partial_swap(const SystemSpec &sys_q, const SystemSpec &sys_s, double theta);

struct DegradationConfig {
    OptimizerConfig optimizer;
    double degradation_tol = 1e-6;
    /// State of S fed to the induced map; maximally mixed when empty.
    std::optional<DensityMatrix> probe;
};

struct DegradationResult {
    bool induced_covariant;
    double covariance_witness;
    DensityMatrix output_q;
    double irrev;
    double fidelity;
    bool converged;
    std::vector<Assertion> assertions;
};

/// NotCovariant if `joint` is not covariant for its joint generators.
DegradationResult run_degradation_demo(const Channel &joint, const DensityMatrix &rho_q, const DegradationConfig &cfg);

// ---------------------------------------------------------------------------
// Cloning and non-additivity

/// (d + n) / (n (d + 1)).
double cloner_coefficient(int d, int n);

struct ClonerResult {
    Mat output;
    Mat marginal;
    double c_n;
    double trace_error;
    double permutation_error;
    double marginal_error;
};

/// Explicit universal cloner (d / d(n)) Pi_sym (rho (x) I^{n-1}) Pi_sym,
/// d(n) = binomial(d + n - 1, n), compared with c_n rho + (1 - c_n) I/d.
/// SizeCap when n > 4 or d^n > 1024.
ClonerResult universal_cloner(const DensityMatrix &rho, int d, int n);

/// Cloner as a channel A -> S A (first output factor S, second A).
Channel cloner_channel(const SystemSpec &sys, int n);

struct NonadditivityRecord {
    enum class Construction { EntangledSubadditivity, ClassicalRegisterSubadditivity, ClonerSuperadditivity };
    Construction construction;
    AsymmetryMeasureId measure;
    double f_joint;
    double f_marg_a;
    double f_marg_b_or_n_scaled;
    bool violated;
};

std::string construction_name(NonadditivityRecord::Construction c);

struct NonadditivityConfig {
    int n_max = 64;
    double t = std::numbers::pi / 2;
};

struct NonadditivityResult {
    std::vector<NonadditivityRecord> records;
    /// Smallest cloner copy number with n f(marginal) > f(rho), 0 if none.
    int cloner_n;
    double register_b_witness;
    double register_a_witness;
    std::vector<Assertion> assertions;
};

NonadditivityResult run_nonadditivity(const NonadditivityConfig &cfg);

// ---------------------------------------------------------------------------
// Fidelity perturbation lemma

struct PerturbationLemmaResult {
    int trials;
    double max_violation;
    std::vector<std::pair<int, double>> per_dim;
};

/// max over random (tau1, tau2, U = e^{-iHs}) of
///   |Fid(U tau1 U^dag, tau1) - Fid(U tau2 U^dag, tau2)| - 4 sqrt(1 - Fid(tau1, tau2)).
/// Pairs cycle through independent states, near pairs and tau2 = I/d.
PerturbationLemmaResult check_fidelity_perturbation_lemma(Rng &rng, int trials, const std::vector<int> &dims);

// ---------------------------------------------------------------------------
// Broadcast complementarity

struct ComplementarityVerdict {
    bool identity_marginal;
    double marginal_error;
    double erasure_residual;
    Mat fitted_state;
    bool pass;
};

/// For ch: A -> S A (output parts {S, A}), tests whether the A marginal is the
/// identity within `tol`; the S marginal is fitted by a constant channel in
/// any case, and when the A marginal is the identity the fit must be within
/// 10 tol.
ComplementarityVerdict check_broadcast_complementarity(const Channel &ch, double tol);

}  // namespace transym
