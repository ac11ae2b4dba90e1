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

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "transym/quantum.hpp"

namespace transym {

struct OptimizerConfig {
    int max_iter = 2000;
    double tol = 1e-8;
    int restarts = 5;
    std::uint64_t seed = 0;
    std::vector<double> lambda_schedule{0.0, 1.0, 4.0, 16.0, 64.0, 256.0};
    double t = std::numbers::pi / 2;
};

struct ProjectionResult {
    Mat choi;
    double residual;
    int iterations;
    bool converged;
};

/// Dykstra iteration between the PSD cone and the affine set of covariant
/// trace-preserving Hermitian operators, followed by mixing with the
/// depolarizing Choi just enough to clear any negative eigenvalue left at
/// the stopping point, so the result is always an exact channel.
ProjectionResult covariant_projection(const Mat &j, const SystemSpec &in, const SystemSpec &out, int max_iter = 5000,
                                      double tol = 1e-10);

/// As covariant_projection, but NoConvergence (carrying the residual) when
/// max_iter is exhausted.
Mat project_covariant_tp_psd(const Mat &j, const SystemSpec &in, const SystemSpec &out, int max_iter = 5000,
                             double tol = 1e-10);

/// Hermitian G with Fid(rho, X + delta) = Fid(rho, X) + Tr(G delta) + o(delta):
/// G = (1/2) sqrt(rho) (sqrt(rho) X sqrt(rho))^{-1/2} sqrt(rho), inverse taken
/// on the support. X is shifted by 1e-10 I when not full rank.
Mat fidelity_gradient(const Mat &rho, const Mat &x);
Mat fidelity_gradient(const DensityMatrix &rho, const DensityMatrix &x);

struct IrrevResult {
    double value;
    double fidelity;
    Channel best_recovery;
    std::vector<std::pair<int, double>> fidelity_trace;
    bool converged;
    std::vector<double> restart_fidelities;
};

/// 1 - max_R Fid(rho, R(sigma))^2 over covariant R: from -> to, by projected
/// gradient ascent with backtracking. Restart 0 starts at the depolarizing
/// channel, the others at random covariant channels. `converged` requires
/// every restart to stop on the tolerance and all to agree within 1e-4; when
/// false the value is still an upper bound on the irreversibility.
IrrevResult max_recovery_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, const SystemSpec &from,
                                  const SystemSpec &to, const OptimizerConfig &cfg = {});

/// Transpose channel X -> sqrt(p) ch^dag(N X N) sqrt(p), N = ch(p)^{-1/2} on
/// its support, plus Tr[(I - Pi) X] p on the complement of that support so
/// the map stays trace preserving. SingularPrior when p or ch(p) has
/// eigenvalues too close to zero to decide the support.
Channel petz_recovery(const Channel &ch, const DensityMatrix &prior);

struct BroadcastAttempt {
    double lambda;
    Channel map;
    double marginal_disturbance;
    double output_coherence;
    double objective;
    bool converged;
};

/// One attempt per penalty in `lambda_schedule`, each maximizing
/// f_t(sigma_S') - lambda * ||sigma_Q - rho_Q||_1 (smoothed, mu = 1e-6) over
/// covariant maps Q -> Q S'. Each penalty is started from the previous best
/// and from the two structured maps (move rho to S' and re-prepare Q in I/d;
/// keep Q and prepare I/d on S'); the first penalty also starts from
/// cfg.restarts random covariant maps. The best objective wins, ties going to
/// the earliest start.
std::vector<BroadcastAttempt> optimize_broadcast(const DensityMatrix &rho, const SystemSpec &sys_q,
                                                 const SystemSpec &sys_s, double t,
                                                 const std::vector<double> &lambda_schedule,
                                                 const OptimizerConfig &cfg = {});

}  // namespace transym
