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

#include "transym/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "transym/errors.hpp"
#include "transym/symmetry.hpp"
#include "transym/tolerances.hpp"

namespace transym {

namespace {

class CovariantProjector {
   public:
    CovariantProjector(const SystemSpec &in, const SystemSpec &out)
        : sector_(in, out), din_(in.dim()), dout_(out.dim()) {}

    Mat affine(const Mat &j) const {
        Mat y = hermitian_part(sector_.dephase(j));
        Mat delta = Mat::Identity(din_, din_) - choi_input_marginal(y, din_, dout_);
        y += tensor_product(Mat::Identity(dout_, dout_), delta) / static_cast<double>(dout_);
        return y;
    }

    static Mat psd(const Mat &j) {
        Eigen::SelfAdjointEigenSolver<Mat> es(j);
        RVec v = es.eigenvalues().cwiseMax(0.0);
        return es.eigenvectors() * v.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    }

    ProjectionResult project(const Mat &j, int max_iter, double tol) const {
        if (!all_finite(j)) {
            fail(ErrorCode::NonFinite, "projection input has NaN/Inf entries");
        }
        Mat x = hermitian_part(j);
        Mat p = Mat::Zero(x.rows(), x.cols());
        ProjectionResult res{x, 0.0, 0, false};
        Mat y = affine(x);
        for (int it = 1; it <= max_iter; ++it) {
            Mat z = psd(y + p);
            p = y + p - z;
            y = affine(z);
            res.iterations = it;
            res.residual = max_abs(y - z);
            if (res.residual <= tol) {
                res.converged = true;
                break;
            }
        }
        double min_eig = Eigen::SelfAdjointEigenSolver<Mat>(y, Eigen::EigenvaluesOnly).eigenvalues()(0);
        if (min_eig < 0.0) {
            double delta = -min_eig * static_cast<double>(dout_);
            double s = delta / (1.0 + delta);
            y = (1.0 - s) * y + s * Mat::Identity(y.rows(), y.cols()) / static_cast<double>(dout_);
        }
        res.choi = hermitian_part(y);
        return res;
    }

   private:
    CovarianceSector sector_;
    Index din_;
    Index dout_;
};

struct AscentResult {
    Mat choi;
    double value;
    std::vector<std::pair<int, double>> trace;
    bool converged;
};

/// Projected gradient ascent with backtracking: a step is accepted only when
/// it does not lower the objective, so the recorded trace is monotone.
AscentResult projected_ascent(const Mat &start, const std::function<double(const Mat &)> &objective,
                              const std::function<Mat(const Mat &)> &gradient, const CovariantProjector &proj,
                              int max_iter, double tol) {
    AscentResult res{proj.project(start, 5000, 1e-10).choi, 0.0, {}, false};
    res.value = objective(res.choi);
    res.trace.emplace_back(0, res.value);
    double eta = 1.0;
    int small = 0;
    Mat grad = gradient(res.choi);
    for (int iter = 1; iter <= max_iter; ++iter) {
        bool accepted = false;
        Mat cand;
        double cand_value = 0.0;
        while (eta > 1e-14) {
            cand = proj.project(res.choi + eta * grad, 5000, 1e-10).choi;
            cand_value = objective(cand);
            if (cand_value >= res.value) {
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) {
            res.converged = true;
            break;
        }
        double gain = cand_value - res.value;
        res.choi = std::move(cand);
        res.value = cand_value;
        res.trace.emplace_back(iter, res.value);
        small = gain <= tol * std::max(std::abs(res.value), 1e-12) ? small + 1 : 0;
        if (small >= 3) {
            res.converged = true;
            break;
        }
        eta = std::min(2.0 * eta, 1e3);
        grad = gradient(res.choi);
    }
    return res;
}

Mat depolarizing_choi(Index din, Index dout) {
    return Mat::Identity(din * dout, din * dout) / static_cast<double>(dout);
}

/// Smoothed trace norm sum_i sqrt(l_i^2 + mu^2) and its gradient.
std::pair<double, Mat> smoothed_trace_norm(const Mat &a, double mu) {
    auto es = hermitian_eig(hermitian_part(a));
    double val = 0.0;
    RVec w(es.values.size());
    for (Index i = 0; i < es.values.size(); ++i) {
        double r = std::sqrt(es.values(i) * es.values(i) + mu * mu);
        val += r;
        w(i) = es.values(i) / r;
    }
    return {val, es.vectors * w.cast<cplx>().asDiagonal() * es.vectors.adjoint()};
}

constexpr double kSmoothing = 1e-6;

}  // namespace

ProjectionResult covariant_projection(const Mat &j, const SystemSpec &in, const SystemSpec &out, int max_iter,
                                      double tol) {
    const Index n = in.dim() * out.dim();
    if (j.rows() != n || j.cols() != n) {
        fail(ErrorCode::DimensionMismatch, "Choi matrix size does not match the systems");
    }
    return CovariantProjector(in, out).project(j, max_iter, tol);
}

Mat project_covariant_tp_psd(const Mat &j, const SystemSpec &in, const SystemSpec &out, int max_iter, double tol) {
    auto res = covariant_projection(j, in, out, max_iter, tol);
    if (!res.converged) {
        fail(ErrorCode::NoConvergence, "covariant projection did not converge", res.residual);
    }
    return res.choi;
}

Mat fidelity_gradient(const Mat &rho, const Mat &x) {
    if (rho.rows() != x.rows() || rho.cols() != x.cols()) {
        fail(ErrorCode::DimensionMismatch, "fidelity gradient of operators with different dimensions");
    }
    const Index d = x.rows();
    Mat xr = hermitian_part(x);
    if (hermitian_eig(xr).values(0) <= kRegularization) {
        xr += kRegularization * Mat::Identity(d, d);
    }
    Mat sr = psd_sqrt(hermitian_part(rho));
    auto es = hermitian_eig(hermitian_part(sr * xr * sr));
    double top = es.values.maxCoeff();
    if (!(top > kTolRank)) {
        fail(ErrorCode::SingularTarget, "target and argument have orthogonal supports", top);
    }
    double cutoff = kTolRank * top;
    double low = top;
    RVec inv(es.values.size());
    for (Index i = 0; i < es.values.size(); ++i) {
        if (es.values(i) > cutoff) {
            inv(i) = 1.0 / std::sqrt(es.values(i));
            low = std::min(low, es.values(i));
        } else {
            inv(i) = 0.0;
        }
    }
    if (top / low > 1e14) {
        fail(ErrorCode::SingularTarget, "sqrt(rho) X sqrt(rho) is too ill-conditioned", top / low);
    }
    Mat m = es.vectors * inv.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    return hermitian_part(0.5 * sr * m * sr);
}

Mat fidelity_gradient(const DensityMatrix &rho, const DensityMatrix &x) { return fidelity_gradient(rho.mat(), x.mat()); }

IrrevResult max_recovery_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, const SystemSpec &from,
                                  const SystemSpec &to, const OptimizerConfig &cfg) {
    if (sigma.dim() != from.dim() || rho.dim() != to.dim()) {
        fail(ErrorCode::DimensionMismatch, "states do not match the recovery systems");
    }
    const Index din = from.dim();
    const Index dout = to.dim();
    CovariantProjector proj(from, to);
    const Mat &target = rho.mat();
    const Mat sig_t = sigma.mat().transpose();
    auto objective = [&](const Mat &j) { return fidelity(target, hermitian_part(choi_apply(j, din, dout, sigma.mat()))); };
    auto gradient = [&](const Mat &j) {
        Mat g = fidelity_gradient(target, hermitian_part(choi_apply(j, din, dout, sigma.mat())));
        return Mat(tensor_product(g, sig_t));
    };

    const int restarts = std::max(1, cfg.restarts);
    std::vector<AscentResult> runs;
    for (int r = 0; r < restarts; ++r) {
        Mat start = depolarizing_choi(din, dout);
        if (r > 0) {
            Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(r));
            start = random_covariant_channel(from, to, rng).choi();
        }
        runs.push_back(projected_ascent(start, objective, gradient, proj, cfg.max_iter, cfg.tol));
    }
    size_t best = 0;
    bool all_converged = true;
    double lo = runs[0].value, hi = runs[0].value;
    std::vector<double> values;
    for (size_t r = 0; r < runs.size(); ++r) {
        values.push_back(runs[r].value);
        all_converged = all_converged && runs[r].converged;
        lo = std::min(lo, runs[r].value);
        hi = std::max(hi, runs[r].value);
        if (runs[r].value > runs[best].value) {
            best = r;
        }
    }
    double f = runs[best].value;
    return IrrevResult{std::clamp(1.0 - f * f, 0.0, 1.0),
                       f,
                       Channel(from, to, runs[best].choi),
                       runs[best].trace,
                       all_converged && (hi - lo) <= 1e-4,
                       std::move(values)};
}

Channel petz_recovery(const Channel &ch, const DensityMatrix &prior) {
    if (prior.dim() != ch.din()) {
        fail(ErrorCode::DimensionMismatch, "prior does not match the channel input");
    }
    auto ill_posed = [](const Mat &m) {
        auto v = hermitian_eig(hermitian_part(m)).values;
        for (Index i = 0; i < v.size(); ++i) {
            if (v(i) > kTolRank && v(i) < kRegularization) {
                return v(i);
            }
        }
        return 0.0;
    };
    Mat out_prior = hermitian_part(ch.apply(prior.mat()));
    double bad = std::max(ill_posed(prior.mat()), ill_posed(out_prior));
    if (bad > 0.0) {
        fail(ErrorCode::SingularPrior, "prior support is numerically ambiguous", bad);
    }
    Mat sp = psd_sqrt(prior.mat());
    Mat n = psd_inv_sqrt(out_prior, kTolRank);
    Mat pi = support_projector(out_prior, kTolRank);
    const Index dn = out_prior.rows();
    Mat comp = Mat::Identity(dn, dn) - pi;
    return Channel::from_map(ch.output(), ch.input(), [&](const Mat &x) {
        return Mat(sp * ch.apply_adjoint(n * x * n) * sp + (comp * x).trace() * prior.mat());
    });
}

std::vector<BroadcastAttempt> optimize_broadcast(const DensityMatrix &rho, const SystemSpec &sys_q,
                                                 const SystemSpec &sys_s, double t,
                                                 const std::vector<double> &lambda_schedule,
                                                 const OptimizerConfig &cfg) {
    if (rho.dim() != sys_q.dim()) {
        fail(ErrorCode::DimensionMismatch, "rho_Q does not match the Q system");
    }
    for (size_t i = 1; i < lambda_schedule.size(); ++i) {
        if (lambda_schedule[i] < lambda_schedule[i - 1]) {
            fail(ErrorCode::PreconditionFailed, "lambda schedule must be nondecreasing");
        }
    }
    const SystemSpec joint = SystemSpec::joint(sys_q, sys_s);
    const Index dq = sys_q.dim();
    const Index ds = sys_s.dim();
    const Index dout = dq * ds;
    CovariantProjector proj(sys_q, joint);
    const Mat &rq = rho.mat();
    const Mat rq_t = rq.transpose();
    const Mat u = sys_s.translation(t);

    auto marginals = [&](const Mat &j) {
        Mat sigma = hermitian_part(choi_apply(j, dq, dout, rq));
        return std::pair<Mat, Mat>{partial_trace(sigma, {static_cast<int>(dq), static_cast<int>(ds)}, {0}),
                                   partial_trace(sigma, {static_cast<int>(dq), static_cast<int>(ds)}, {1})};
    };

    std::vector<BroadcastAttempt> attempts;
    std::vector<Mat> structured;
    structured.push_back(Channel::from_map(sys_q, joint, [&](const Mat &x) {
                             return tensor_product(x, Mat(Mat::Identity(ds, ds) / static_cast<double>(ds)));
                         }).choi());
    if (ds == dq) {
        structured.push_back(Channel::from_map(sys_q, joint, [&](const Mat &x) {
                                 return tensor_product(Mat(Mat::Identity(dq, dq) / static_cast<double>(dq)), x);
                             }).choi());
    }

    Mat warm;
    for (size_t li = 0; li < lambda_schedule.size(); ++li) {
        const double lambda = lambda_schedule[li];
        auto objective = [&](const Mat &j) {
            auto [sq, ss] = marginals(j);
            return measure_ft(ss, sys_s, t) - lambda * smoothed_trace_norm(sq - rq, kSmoothing).first;
        };
        auto gradient = [&](const Mat &j) {
            auto [sq, ss] = marginals(j);
            Mat shifted = u * ss * u.adjoint();
            Mat g1 = fidelity_gradient(shifted, ss);
            Mat g2 = fidelity_gradient(ss, shifted);
            Mat dft = -(g1 + u.adjoint() * g2 * u);
            Mat gs = tensor_product(Mat::Identity(dq, dq), dft);
            if (lambda != 0.0) {
                gs -= lambda * tensor_product(smoothed_trace_norm(sq - rq, kSmoothing).second, Mat::Identity(ds, ds));
            }
            return Mat(tensor_product(hermitian_part(gs), rq_t));
        };

        std::vector<Mat> starts;
        if (li > 0) {
            starts.push_back(warm);
        }
        for (const auto &s : structured) {
            starts.push_back(s);
        }
        if (li == 0) {
            for (int r = 0; r < cfg.restarts; ++r) {
                Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(r) + 1000);
                starts.push_back(random_covariant_channel(sys_q, joint, rng).choi());
            }
        }

        AscentResult best{Mat(), -1e300, {}, false};
        for (const auto &s : starts) {
            auto run = projected_ascent(s, objective, gradient, proj, cfg.max_iter, cfg.tol);
            if (run.value > best.value) {
                best = std::move(run);
            }
        }
        warm = best.choi;
        auto [sq, ss] = marginals(best.choi);
        Channel map(sys_q, joint, best.choi);
        attempts.push_back(BroadcastAttempt{lambda, std::move(map), trace_distance(sq, rq), measure_ft(ss, sys_s, t),
                                            best.value, best.converged});
    }
    return attempts;
}

}  // namespace transym
