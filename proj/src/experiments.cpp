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

#include "transym/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "transym/errors.hpp"

namespace transym {

namespace {

constexpr double kPi = std::numbers::pi;

Vec plus_state(Index d, Index a, Index b) {
    Vec v = Vec::Zero(d);
    v(a) = 1.0 / std::sqrt(2.0);
    v(b) = 1.0 / std::sqrt(2.0);
    return v;
}

Mat marginal(const Mat &joint, int dq, int ds, int keep) {
    const int keep_arr[1] = {keep};
    const int dims[2] = {dq, ds};
    return partial_trace(joint, dims, keep_arr);
}

}  // namespace

bool all_pass(const std::vector<Assertion> &assertions) {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion &a) { return a.pass; });
}

// ---------------------------------------------------------------------------
// No broadcasting

NoBroadcastResult run_no_broadcast_sweep(const DensityMatrix &rho, const SystemSpec &sys_q, const SystemSpec &sys_s,
                                         const NoBroadcastConfig &cfg) {
    auto sym = is_symmetric_state(rho, sys_q);
    if (sym.holds) {
        fail(ErrorCode::PreconditionFailed, "no-broadcast sweep needs an asymmetric rho_Q", sym.witness);
    }
    NoBroadcastResult res;
    res.frontier = optimize_broadcast(rho, sys_q, sys_s, cfg.optimizer.t, cfg.optimizer.lambda_schedule, cfg.optimizer);

    std::vector<double> thresholds = cfg.buckets;
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    for (double thr : thresholds) {
        BucketRow row{thr, 0, 0.0};
        for (const auto &a : res.frontier) {
            if (a.marginal_disturbance <= thr) {
                ++row.attempts;
                row.max_coherence = std::max(row.max_coherence, a.output_coherence);
            }
        }
        if (row.attempts > 0) {
            res.smallest_bucket = res.buckets.size();
        }
        res.buckets.push_back(row);
    }
    if (res.smallest_bucket) {
        const auto &b = res.buckets[*res.smallest_bucket];
        res.assertions.push_back({"smallest_bucket_coherence_within_tol", b.max_coherence <= cfg.coherence_tol,
                                  b.max_coherence});
    } else {
        res.assertions.push_back({"smallest_bucket_coherence_within_tol", false, 1.0});
    }

    auto fam = orbit_family(rho, sys_q, cfg.orbit_samples);
    res.orbit_size = fam.size();
    res.ki = ki_decompose(fam);
    std::vector<double> grid;
    for (int j = 0; j < 17; ++j) {
        grid.push_back(2.0 * kPi * j / 17.0);
    }
    res.ehrenfest_deviation = ehrenfest_constancy_check(res.ki, rho, sys_q, grid);
    res.assertions.push_back({"ehrenfest_constancy", res.ehrenfest_deviation <= 1e-7, res.ehrenfest_deviation});

    res.lemma4_residual = 0.0;
    res.block_state_asymmetry = 0.0;
    for (const auto &a : res.frontier) {
        if (a.marginal_disturbance > 1e-6) {
            continue;
        }
        auto chk = lemma4_reduced_form_check(a.map, fam, res.ki, 1e-6);
        res.lemma4_residual = std::max(res.lemma4_residual, chk.residual);
        for (const auto &s : chk.block_states) {
            res.block_state_asymmetry = std::max(res.block_state_asymmetry, is_symmetric_state(s, sys_s).witness);
        }
    }
    res.assertions.push_back({"block_states_symmetric", res.block_state_asymmetry <= 1e-6, res.block_state_asymmetry});
    return res;
}

ClassicalControl run_classical_control(const OptimizerConfig &cfg) {
    auto sys = SystemSpec::diagonal({0, 0, 1});
    auto joint = SystemSpec::joint(sys, sys);
    Vec plus = plus_state(3, 0, 1);
    Vec minus = plus;
    minus(1) = -minus(1);
    Vec two = Vec::Zero(3);
    two(2) = 1.0;
    Mat rho = 0.5 * plus * plus.adjoint() + 0.5 * two * two.adjoint();
    DensityMatrix rho_q(rho);

    std::vector<Mat> kraus;
    const Vec outcomes[3] = {plus, minus, two};
    for (Index i = 0; i < 3; ++i) {
        Vec mark = Vec::Zero(3);
        mark(i) = 1.0;
        kraus.push_back(tensor_product(outcomes[i], mark) * outcomes[i].adjoint());
    }
    auto b = Channel::from_kraus(sys, joint, kraus);
    Mat out = b.apply(rho);

    ClassicalControl res;
    res.disturbance = trace_distance(marginal(out, 3, 3, 0), rho);
    res.output_coherence = measure_ft(marginal(out, 3, 3, 1), sys, cfg.t);
    auto best = optimize_broadcast(rho_q, sys, sys, cfg.t, {0.0}, cfg);
    res.unconstrained_max = best.front().output_coherence;
    return res;
}

// ---------------------------------------------------------------------------
// Tradeoff

TradeoffRecord tradeoff_record(const PureState &psi, const Channel &broadcast, const SystemSpec &sys_q,
                               const SystemSpec &sys_s, double t, const OptimizerConfig &cfg) {
    auto rho = psi.projector();
    Mat out = broadcast.apply(rho.mat());
    const int dq = sys_q.dim();
    const int ds = sys_s.dim();
    auto sigma_q = DensityMatrix::trusted(marginal(out, dq, ds, 0));
    TradeoffRecord r{};
    r.t = t;
    r.ft_input = measure_ft(rho, sys_q, t);
    r.ft_output = measure_ft(marginal(out, dq, ds, 1), sys_s, t);
    auto irrev = max_recovery_fidelity(rho, sigma_q, sys_q, sys_q, cfg);
    r.irrev = irrev.value;
    r.converged = irrev.converged;
    r.lhs = r.ft_output;
    r.rhs = 4.0 * std::sqrt(r.irrev) / (1.0 - r.ft_input);
    r.slack = r.rhs - r.lhs;
    return r;
}

TradeoffResult run_tradeoff_sweep(const PureState &psi, const SystemSpec &sys_q, const SystemSpec &sys_s,
                                  const std::vector<double> &t_grid, const OptimizerConfig &cfg) {
    TradeoffResult res;
    auto rho = psi.projector();
    for (double t : t_grid) {
        if (measure_ft(rho, sys_q, t) >= 1.0 - 1e-12) {
            res.skipped_t.push_back(t);
            continue;
        }
        auto attempts = optimize_broadcast(rho, sys_q, sys_s, t, cfg.lambda_schedule, cfg);
        for (const auto &a : attempts) {
            res.records.push_back(tradeoff_record(psi, a.map, sys_q, sys_s, t, cfg));
        }
    }

    double min_slack = 1e300;
    double corollary_excess = -1e300;
    int converged = 0;
    for (const auto &r : res.records) {
        if (!r.converged) {
            continue;
        }
        ++converged;
        min_slack = std::min(min_slack, r.slack);
        if (r.irrev <= 1e-8) {
            double bound = 4.0 * std::sqrt(1e-8) / (1.0 - r.ft_input) + 1e-9;
            corollary_excess = std::max(corollary_excess, r.ft_output - bound);
        }
    }
    res.assertions.push_back({"converged_rows_present", converged > 0, static_cast<double>(converged)});
    res.assertions.push_back({"tradeoff_slack_nonnegative", converged > 0 && min_slack >= -1e-6,
                              converged > 0 ? min_slack : 0.0});
    res.assertions.push_back({"small_irrev_small_coherence", corollary_excess <= 0.0,
                              corollary_excess == -1e300 ? 0.0 : corollary_excess});
    return res;
}

// ---------------------------------------------------------------------------
// Degradation

Channel twirled_partial_swap(const SystemSpec &sys_q, const SystemSpec &sys_s, double theta) {
    if (sys_q.dim() != sys_s.dim()) {
        fail(ErrorCode::DimensionMismatch, "partial swap needs equal dimensions");
    }
    auto joint = SystemSpec::joint(sys_q, sys_s);
    const int perm[2] = {1, 0};
    Mat swap = permutation_operator(sys_q.dim(), perm);
    Mat u = std::cos(theta) * Mat::Identity(swap.rows(), swap.cols()) + cplx(0.0, std::sin(theta)) * swap;
    return twirl_channel(Channel::unitary(joint, u));
}

DegradationResult run_degradation_demo(const Channel &joint, const DensityMatrix &rho_q, const DegradationConfig &cfg) {
    auto cov = is_covariant_channel(joint, 1e-8);
    if (!cov.holds) {
        fail(ErrorCode::NotCovariant, "joint map is not covariant", cov.witness);
    }
    const auto &in = joint.input();
    const auto &out = joint.output();
    if (in.parts().size() != 2 || out.parts().size() != 2) {
        fail(ErrorCode::DimensionMismatch, "degradation demo needs a bipartite Q S -> Q' S' map");
    }
    const auto &sys_q = in.parts()[0];
    const auto &sys_s = in.parts()[1];
    const auto &sys_q2 = out.parts()[0];
    auto induced = induce_channel(joint, rho_q);
    auto ind_cov = is_covariant_channel(induced, 1e-8);

    DensityMatrix probe = cfg.probe.value_or(DensityMatrix::maximally_mixed(sys_s.dim()));
    if (probe.dim() != sys_s.dim()) {
        fail(ErrorCode::DimensionMismatch, "probe state does not match S");
    }
    Mat joint_out = joint.apply(tensor_product(rho_q.mat(), probe.mat()));
    auto out_q = DensityMatrix::trusted(marginal(joint_out, sys_q2.dim(), out.parts()[1].dim(), 0));
    auto irrev = max_recovery_fidelity(rho_q, out_q, sys_q2, sys_q, cfg.optimizer);

    DegradationResult res{ind_cov.holds, ind_cov.witness, out_q, irrev.value, irrev.fidelity, irrev.converged, {}};
    res.assertions.push_back({"joint_map_covariant", true, cov.witness});
    if (!ind_cov.holds) {
        res.assertions.push_back(
            {"noncovariant_induced_map_degrades", irrev.converged && irrev.value > cfg.degradation_tol, irrev.value});
    } else if (is_symmetric_state(rho_q, sys_q, 1e-9).holds) {
        res.assertions.push_back({"symmetric_input_induces_covariant_map", true, ind_cov.witness});
    }
    return res;
}

// ---------------------------------------------------------------------------
// Cloning and non-additivity

double cloner_coefficient(int d, int n) {
    return static_cast<double>(d + n) / (static_cast<double>(n) * (d + 1));
}

ClonerResult universal_cloner(const DensityMatrix &rho, int d, int n) {
    if (rho.dim() != d) {
        fail(ErrorCode::DimensionMismatch, "state does not match the cloner dimension");
    }
    const double total = std::pow(static_cast<double>(d), n);
    if (n < 1 || n > 4 || total > 1024.0) {
        fail(ErrorCode::SizeCap, "explicit cloner limited to n <= 4 and d^n <= 1024", total);
    }
    Mat pi = symmetric_subspace_projector(d, n);
    std::vector<Mat> factors{rho.mat()};
    for (int k = 1; k < n; ++k) {
        factors.push_back(Mat::Identity(d, d));
    }
    Mat x = pi * tensor_product(factors) * pi * (static_cast<double>(d) / binomial(d + n - 1, n));

    ClonerResult res;
    res.output = x;
    res.c_n = cloner_coefficient(d, n);
    res.trace_error = std::abs(x.trace().real() - 1.0);
    res.permutation_error = 0.0;
    std::vector<int> perm(n);
    for (int k = 0; k + 1 < n; ++k) {
        for (int i = 0; i < n; ++i) {
            perm[i] = i;
        }
        std::swap(perm[k], perm[k + 1]);
        Mat p = permutation_operator(d, perm);
        res.permutation_error = std::max(res.permutation_error, max_abs(p * x * p.adjoint() - x));
    }
    Mat expected = res.c_n * rho.mat() + (1.0 - res.c_n) * Mat::Identity(d, d) / static_cast<double>(d);
    std::vector<int> dims(n, d);
    res.marginal_error = 0.0;
    for (int k = 0; k < n; ++k) {
        const int keep[1] = {k};
        Mat m = partial_trace(x, dims, keep);
        if (k == 0) {
            res.marginal = m;
        }
        res.marginal_error = std::max(res.marginal_error, max_abs(m - expected));
    }
    return res;
}

Channel cloner_channel(const SystemSpec &sys, int n) {
    if (n != 2) {
        fail(ErrorCode::SizeCap, "cloner channel A -> S A is defined for two copies");
    }
    const int d = sys.dim();
    Mat pi = symmetric_subspace_projector(d, 2);
    const double scale = static_cast<double>(d) / binomial(d + 1, 2);
    return Channel::from_map(sys, SystemSpec::joint(sys, sys), [&](const Mat &x) {
        return Mat(scale * pi * tensor_product(x, Mat(Mat::Identity(d, d))) * pi);
    });
}

std::string construction_name(NonadditivityRecord::Construction c) {
    switch (c) {
        case NonadditivityRecord::Construction::EntangledSubadditivity:
            return "entangled_subadditivity";
        case NonadditivityRecord::Construction::ClassicalRegisterSubadditivity:
            return "classical_register_subadditivity";
        case NonadditivityRecord::Construction::ClonerSuperadditivity:
            return "cloner_superadditivity";
    }
    return "unknown";
}

NonadditivityResult run_nonadditivity(const NonadditivityConfig &cfg) {
    using C = NonadditivityRecord::Construction;
    NonadditivityResult res;
    const auto qubit = SystemSpec::diagonal({0, 1});
    const std::vector<AsymmetryMeasureId> measures{AsymmetryMeasureId::skew(),
                                                   AsymmetryMeasureId::fidelity_shift(cfg.t)};

    // (a) Bell state, local generators diag(0, 1) on each qubit.
    {
        auto joint = SystemSpec::joint(qubit, qubit);
        Mat bell = maximally_entangled_state(2).projector().mat();
        Mat ma = partial_trace(bell, {2, 2}, {0});
        Mat mb = partial_trace(bell, {2, 2}, {1});
        for (const auto &m : measures) {
            double fj = m.evaluate(bell, joint);
            double fa = m.evaluate(ma, qubit);
            double fb = m.evaluate(mb, qubit);
            res.records.push_back({C::EntangledSubadditivity, m, fj, fa, fb, fj > fa + fb + 1e-9});
        }
    }

    // (b) Classical register A (trivial generator) labelling N translates of |+>.
    {
        const int n = qubit.spectral_diameter() + 1;
        auto reg = SystemSpec::trivial(n);
        auto joint = SystemSpec::joint(reg, qubit);
        Mat plus = DensityMatrix::pure(plus_state(2, 0, 1)).mat();
        Mat sigma = Mat::Zero(2 * n, 2 * n);
        for (int j = 0; j < n; ++j) {
            Mat e = Mat::Zero(n, n);
            e(j, j) = 1.0;
            sigma += tensor_product(e, time_translate(plus, qubit, 2.0 * kPi * j / n)) / static_cast<double>(n);
        }
        Mat ma = partial_trace(sigma, {n, 2}, {0});
        Mat mb = partial_trace(sigma, {n, 2}, {1});
        res.register_a_witness = is_symmetric_state(ma, reg).witness;
        res.register_b_witness = is_symmetric_state(mb, qubit).witness;
        for (const auto &m : measures) {
            double fj = m.evaluate(sigma, joint);
            double fa = m.evaluate(ma, reg);
            double fb = m.evaluate(mb, qubit);
            res.records.push_back({C::ClassicalRegisterSubadditivity, m, fj, fa, fb, fj > fa + fb + 1e-9});
        }
    }

    // (c) Universal cloner marginals c_n |+><+| + (1 - c_n) I/2.
    {
        Mat plus = DensityMatrix::pure(plus_state(2, 0, 1)).mat();
        auto skew = AsymmetryMeasureId::skew();
        double f_rho = skew.evaluate(plus, qubit);
        res.cloner_n = 0;
        NonadditivityRecord rec{C::ClonerSuperadditivity, skew, f_rho, 0.0, 0.0, false};
        for (int n = 1; n <= cfg.n_max; ++n) {
            double c = cloner_coefficient(2, n);
            Mat m = c * plus + (1.0 - c) * Mat::Identity(2, 2) / 2.0;
            double fm = skew.evaluate(m, qubit);
            if (n * fm > f_rho + 1e-9) {
                res.cloner_n = n;
                rec.f_marg_a = fm;
                rec.f_marg_b_or_n_scaled = n * fm;
                rec.violated = true;
                break;
            }
        }
        res.records.push_back(rec);
    }

    auto violated = [&](C c) {
        for (const auto &r : res.records) {
            if (r.construction == c && r.measure.kind == AsymmetryMeasureId::Kind::SkewInformation) {
                return r;
            }
        }
        return res.records.front();
    };
    auto a = violated(C::EntangledSubadditivity);
    res.assertions.push_back({"entangled_subadditivity_violated", a.violated, a.f_joint - a.f_marg_a - a.f_marg_b_or_n_scaled});
    auto b = violated(C::ClassicalRegisterSubadditivity);
    bool marg_sym = res.register_a_witness == 0.0 && res.register_b_witness <= 1e-10;
    res.assertions.push_back({"classical_register_subadditivity_violated", b.violated && marg_sym,
                              b.f_joint - b.f_marg_a - b.f_marg_b_or_n_scaled});
    auto c = violated(C::ClonerSuperadditivity);
    res.assertions.push_back({"cloner_superadditivity_violated", c.violated, static_cast<double>(res.cloner_n)});
    return res;
}

// ---------------------------------------------------------------------------
// Fidelity perturbation lemma

PerturbationLemmaResult check_fidelity_perturbation_lemma(Rng &rng, int trials, const std::vector<int> &dims) {
    if (trials < 1 || dims.empty()) {
        fail(ErrorCode::PreconditionFailed, "perturbation lemma check needs trials >= 1 and a dimension");
    }
    PerturbationLemmaResult res{trials, -1e300, {}};
    for (int d : dims) {
        res.per_dim.emplace_back(d, -1e300);
    }
    const int nd = static_cast<int>(dims.size());
    for (int trial = 0; trial < trials; ++trial) {
        const int which = trial % nd;
        const int d = dims[which];
        const int mode = (trial / nd) % 3;
        Mat t1 = random_density_matrix(d, rng.integer(1, d), rng).mat();
        Mat t2;
        if (mode == 0) {
            t2 = random_density_matrix(d, rng.integer(1, d), rng).mat();
        } else if (mode == 1) {
            double eps = std::pow(10.0, -rng.uniform(0.0, 6.0));
            t2 = (1.0 - eps) * t1 + eps * random_density_matrix(d, d, rng).mat();
        } else {
            t2 = Mat::Identity(d, d) / static_cast<double>(d);
        }
        std::vector<int> spec(d);
        for (int &e : spec) {
            e = rng.integer(-3, 3);
        }
        SystemSpec sys(spec, random_unitary(d, rng));
        Mat u = sys.translation(rng.uniform(0.0, 2.0 * kPi));
        double lhs = std::abs(fidelity(u * t1 * u.adjoint(), t1) - fidelity(u * t2 * u.adjoint(), t2));
        double rhs = 4.0 * std::sqrt(std::max(0.0, 1.0 - fidelity(t1, t2)));
        double v = lhs - rhs;
        res.max_violation = std::max(res.max_violation, v);
        res.per_dim[which].second = std::max(res.per_dim[which].second, v);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Broadcast complementarity

ComplementarityVerdict check_broadcast_complementarity(const Channel &ch, double tol) {
    const auto &out = ch.output();
    if (out.parts().size() != 2 || out.parts()[1].dim() != ch.din()) {
        fail(ErrorCode::InvalidChannel, "complementarity check needs a map A -> S A");
    }
    const Index din = ch.din();
    Mat ja = reduce_output(ch, 1).choi();
    Mat js = reduce_output(ch, 0).choi();
    Mat id = Channel::identity(ch.input()).choi();

    ComplementarityVerdict v;
    v.marginal_error = max_abs(ja - id);
    v.identity_marginal = v.marginal_error <= tol;
    const Index ds = out.parts()[0].dim();
    Mat tau = Mat::Zero(ds, ds);
    for (Index a = 0; a < ds; ++a) {
        for (Index b = 0; b < ds; ++b) {
            tau(a, b) = js.block(a * din, b * din, din, din).trace();
        }
    }
    tau /= static_cast<double>(din);
    v.fitted_state = hermitian_part(tau);
    v.erasure_residual = max_abs(js - tensor_product(v.fitted_state, Mat(Mat::Identity(din, din))));
    v.pass = !v.identity_marginal || v.erasure_residual <= 10.0 * tol;
    return v;
}

}  // namespace transym
