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

#include "transym/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>

#include "transym/errors.hpp"

namespace transym {

namespace {

template <typename F>
auto stage(const std::string &experiment, const char *name, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error &e) {
        throw Error(e.code(), "experiment " + experiment + ", stage " + name + ": " + e.detail(), e.value());
    }
}

json assertion_json(const Assertion &a) { return json{{"name", a.name}, {"pass", a.pass}, {"witness", a.witness}}; }

PureState top_eigenvector(const Mat &rho) {
    auto es = hermitian_eig(rho);
    return PureState::normalized(es.vectors.col(es.values.size() - 1));
}

void run_no_broadcast(const RunConfig &cfg, ExperimentReport &rep) {
    NoBroadcastConfig nb;
    nb.optimizer = cfg.optimizer;
    nb.coherence_tol = cfg.coherence_tol;
    nb.buckets = cfg.buckets;
    nb.orbit_samples = cfg.orbit_samples;
    auto res = stage(rep.experiment, "sweep", [&] {
        return run_no_broadcast_sweep(DensityMatrix(cfg.state_q), cfg.system_q, cfg.system_s, nb);
    });
    auto control = stage(rep.experiment, "classical_control", [&] { return run_classical_control(cfg.optimizer); });

    rep.columns = {"lambda", "marginal_disturbance", "output_coherence", "objective", "converged"};
    for (const auto &a : res.frontier) {
        rep.records.push_back(json{{"lambda", a.lambda},
                                   {"marginal_disturbance", a.marginal_disturbance},
                                   {"output_coherence", a.output_coherence},
                                   {"objective", a.objective},
                                   {"converged", a.converged}});
    }
    json buckets = json::array();
    for (const auto &b : res.buckets) {
        buckets.push_back(json{{"threshold", b.threshold}, {"attempts", b.attempts}, {"max_coherence", b.max_coherence}});
    }
    json blocks = json::array();
    for (const auto &b : res.ki.blocks) {
        blocks.push_back(json{{"m", b.m}, {"k", b.k}});
    }
    rep.details = json{{"buckets", buckets},
                       {"smallest_bucket", res.smallest_bucket ? json(res.buckets[*res.smallest_bucket].threshold) : json()},
                       {"ki_blocks", blocks},
                       {"orbit_size", res.orbit_size},
                       {"ehrenfest_deviation", res.ehrenfest_deviation},
                       {"lemma4_residual", res.lemma4_residual},
                       {"block_state_asymmetry", res.block_state_asymmetry},
                       {"classical_control",
                        {{"disturbance", control.disturbance},
                         {"output_coherence", control.output_coherence},
                         {"unconstrained_max", control.unconstrained_max}}}};
    rep.assertions = res.assertions;
    rep.assertions.push_back({"classical_control_broadcasts",
                              control.disturbance <= 1e-8 && control.output_coherence >= control.unconstrained_max - 1e-8,
                              control.disturbance});
}

void run_tradeoff(const RunConfig &cfg, ExperimentReport &rep) {
    auto psi = top_eigenvector(cfg.state_q);
    auto res = stage(rep.experiment, "sweep", [&] {
        return run_tradeoff_sweep(psi, cfg.system_q, cfg.system_s, cfg.t_grid, cfg.optimizer);
    });
    rep.columns = {"t", "ft_input", "ft_output", "irrev", "lhs", "rhs", "slack", "converged"};
    for (const auto &r : res.records) {
        rep.records.push_back(json{{"t", r.t},
                                   {"ft_input", r.ft_input},
                                   {"ft_output", r.ft_output},
                                   {"irrev", r.irrev},
                                   {"lhs", r.lhs},
                                   {"rhs", r.rhs},
                                   {"slack", r.slack},
                                   {"converged", r.converged}});
    }
    rep.details = json{{"skipped_t", res.skipped_t}};
    rep.assertions = res.assertions;
}

void run_degradation(const RunConfig &cfg, ExperimentReport &rep) {
    DegradationConfig dc;
    dc.optimizer = cfg.optimizer;
    dc.degradation_tol = cfg.degradation_tol;
    if (cfg.probe_s) {
        dc.probe = DensityMatrix(*cfg.probe_s);
    }
    auto joint = stage(rep.experiment, "build_map",
                       [&] { return twirled_partial_swap(cfg.system_q, cfg.system_s, cfg.swap_angle); });
    auto res = stage(rep.experiment, "demo", [&] { return run_degradation_demo(joint, DensityMatrix(cfg.state_q), dc); });
    rep.columns = {"induced_covariant", "covariance_witness", "irrev", "fidelity", "converged"};
    rep.records.push_back(json{{"induced_covariant", res.induced_covariant},
                               {"covariance_witness", res.covariance_witness},
                               {"irrev", res.irrev},
                               {"fidelity", res.fidelity},
                               {"converged", res.converged}});
    rep.details = json{{"output_q", matrix_to_json(res.output_q.mat())}};
    rep.assertions = res.assertions;
}

void run_nonadditivity_exp(const RunConfig &cfg, ExperimentReport &rep) {
    NonadditivityConfig nc;
    nc.n_max = cfg.n_max;
    nc.t = cfg.t;
    auto res = stage(rep.experiment, "constructions", [&] { return run_nonadditivity(nc); });
    rep.columns = {"construction", "measure", "f_joint", "f_margA", "f_margB_or_n_scaled", "violated"};
    for (const auto &r : res.records) {
        rep.records.push_back(json{{"construction", construction_name(r.construction)},
                                   {"measure", r.measure.name()},
                                   {"f_joint", r.f_joint},
                                   {"f_margA", r.f_marg_a},
                                   {"f_margB_or_n_scaled", r.f_marg_b_or_n_scaled},
                                   {"violated", r.violated}});
    }
    rep.details = json{{"cloner_n", res.cloner_n},
                       {"register_a_witness", res.register_a_witness},
                       {"register_b_witness", res.register_b_witness}};
    rep.assertions = res.assertions;
}

void run_irrev(const RunConfig &cfg, ExperimentReport &rep) {
    auto res = stage(rep.experiment, "optimize", [&] {
        return max_recovery_fidelity(DensityMatrix(cfg.state_q), DensityMatrix(cfg.state_s), cfg.system_s, cfg.system_q,
                                     cfg.optimizer);
    });
    double lo = res.restart_fidelities.front(), hi = lo;
    for (double f : res.restart_fidelities) {
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    rep.columns = {"value", "fidelity", "converged", "restart_spread", "iterations"};
    rep.records.push_back(json{{"value", res.value},
                               {"fidelity", res.fidelity},
                               {"converged", res.converged},
                               {"restart_spread", hi - lo},
                               {"iterations", res.fidelity_trace.back().first}});
    rep.details = json{{"restart_fidelities", res.restart_fidelities},
                       {"best_recovery_choi", matrix_to_json(res.best_recovery.choi())},
                       {"regularization_epsilon", kRegularization}};
    rep.assertions.push_back({"restarts_agree", res.converged, hi - lo});
}

void run_ki(const RunConfig &cfg, ExperimentReport &rep) {
    auto fam = stage(rep.experiment, "family", [&] {
        if (cfg.family.empty()) {
            return orbit_family(DensityMatrix(cfg.state_q), cfg.system_q, cfg.orbit_samples);
        }
        std::vector<DensityMatrix> states;
        for (const auto &m : cfg.family) {
            states.emplace_back(m);
        }
        return StateFamily(std::move(states));
    });
    Rng rng(cfg.seed);
    auto dec = stage(rep.experiment, "decompose", [&] { return ki_decompose(fam, rng, cfg.tolerance); });
    auto inv = check_ki_invariants(dec, fam);
    rep.columns = {"label", "block", "m", "k", "prob"};
    for (size_t x = 0; x < dec.labels.size(); ++x) {
        for (size_t mu = 0; mu < dec.blocks.size(); ++mu) {
            rep.records.push_back(json{{"label", dec.labels[x]},
                                       {"block", mu},
                                       {"m", dec.blocks[mu].m},
                                       {"k", dec.blocks[mu].k},
                                       {"prob", dec.probs[x][mu]}});
        }
    }
    rep.details = json{{"decomposition", ki_to_json(dec)},
                       {"invariants",
                        {{"reconstruction", inv.reconstruction},
                         {"isometry", inv.isometry},
                         {"projectors", inv.projectors},
                         {"maximal", inv.maximal}}}};
    rep.assertions.push_back({"reconstruction", inv.reconstruction <= 1e-7, inv.reconstruction});
    rep.assertions.push_back({"isometry", inv.isometry <= 1e-8, inv.isometry});
    rep.assertions.push_back({"projector_completeness", inv.projectors <= 1e-8, inv.projectors});
    rep.assertions.push_back({"maximality", inv.maximal, 0.0});
    if (cfg.family.empty()) {
        std::vector<double> grid;
        for (int j = 0; j < 17; ++j) {
            grid.push_back(2.0 * std::numbers::pi * j / 17.0);
        }
        double dev = ehrenfest_constancy_check(dec, DensityMatrix(cfg.state_q), cfg.system_q, grid);
        rep.details["ehrenfest_deviation"] = dev;
        rep.assertions.push_back({"ehrenfest_constancy", dev <= 1e-7, dev});
    }
}

void run_cloner(const RunConfig &cfg, ExperimentReport &rep) {
    rep.columns = {"d", "n", "c_n", "marginal_error", "trace_error", "permutation_error"};
    double worst = 0.0;
    for (int d : cfg.dims) {
        for (int n = 1; n <= cfg.n_max; ++n) {
            if (std::pow(static_cast<double>(d), n) > 1024.0) {
                continue;
            }
            Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(d) * 100 + n);
            auto rho = random_density_matrix(d, d, rng);
            auto res = stage(rep.experiment, "clone", [&] { return universal_cloner(rho, d, n); });
            worst = std::max({worst, res.marginal_error, res.trace_error, res.permutation_error});
            rep.records.push_back(json{{"d", d},
                                       {"n", n},
                                       {"c_n", res.c_n},
                                       {"marginal_error", res.marginal_error},
                                       {"trace_error", res.trace_error},
                                       {"permutation_error", res.permutation_error}});
        }
    }
    rep.assertions.push_back({"marginal_matches_closed_form", worst <= 1e-10, worst});
}

void run_lemma8(const RunConfig &cfg, ExperimentReport &rep) {
    Rng rng(cfg.seed);
    auto res = stage(rep.experiment, "sample",
                     [&] { return check_fidelity_perturbation_lemma(rng, cfg.trials, cfg.dims); });
    rep.columns = {"d", "trials", "max_violation"};
    const int nd = static_cast<int>(cfg.dims.size());
    for (int i = 0; i < nd; ++i) {
        int count = cfg.trials / nd + (i < cfg.trials % nd ? 1 : 0);
        rep.records.push_back(json{{"d", res.per_dim[i].first}, {"trials", count}, {"max_violation", res.per_dim[i].second}});
    }
    rep.assertions.push_back({"perturbation_lemma", res.max_violation <= 1e-9, res.max_violation});
}

void run_complementarity(const RunConfig &cfg, ExperimentReport &rep) {
    const auto &a = cfg.system_q;
    const int d = a.dim();
    auto joint = SystemSpec::joint(a, a);
    Mat mixed = Mat::Identity(d, d) / static_cast<double>(d);
    auto ch = stage(rep.experiment, "channel", [&] {
        if (cfg.channel == "cloner") {
            return cloner_channel(a, 2);
        }
        if (cfg.channel == "swap_to_s") {
            return Channel::from_map(a, joint, [&](const Mat &x) { return tensor_product(x, mixed); });
        }
        return Channel::from_map(a, joint, [&](const Mat &x) { return tensor_product(mixed, x); });
    });
    auto v = stage(rep.experiment, "check", [&] { return check_broadcast_complementarity(ch, cfg.tolerance); });
    rep.columns = {"channel", "identity_marginal", "marginal_error", "erasure_residual"};
    rep.records.push_back(json{{"channel", cfg.channel},
                               {"identity_marginal", v.identity_marginal},
                               {"marginal_error", v.marginal_error},
                               {"erasure_residual", v.erasure_residual}});
    rep.details = json{{"fitted_state", matrix_to_json(v.fitted_state)}};
    rep.assertions.push_back({"identity_marginal_implies_erasure", v.pass, v.erasure_residual});
}

std::string csv_field(const json &v) {
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>() + 0.0);
        return buf;
    }
    if (v.is_number()) {
        return v.dump();
    }
    if (v.is_null()) {
        return "";
    }
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

}  // namespace

ExperimentReport run_experiment(const RunConfig &cfg) {
    ExperimentReport rep;
    rep.experiment = experiment_name(cfg.experiment);
    rep.config = cfg.echo;
    rep.seed = cfg.seed;
    auto start = std::chrono::steady_clock::now();
    switch (cfg.experiment) {
        case ExperimentKind::NoBroadcast:
            run_no_broadcast(cfg, rep);
            break;
        case ExperimentKind::Tradeoff:
            run_tradeoff(cfg, rep);
            break;
        case ExperimentKind::Degradation:
            run_degradation(cfg, rep);
            break;
        case ExperimentKind::Nonadditivity:
            run_nonadditivity_exp(cfg, rep);
            break;
        case ExperimentKind::Irrev:
            run_irrev(cfg, rep);
            break;
        case ExperimentKind::KI:
            run_ki(cfg, rep);
            break;
        case ExperimentKind::Cloner:
            run_cloner(cfg, rep);
            break;
        case ExperimentKind::Lemma8:
            run_lemma8(cfg, rep);
            break;
        case ExperimentKind::Complementarity:
            run_complementarity(cfg, rep);
            break;
    }
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

json report_to_json(const ExperimentReport &report) {
    json assertions = json::array();
    for (const auto &a : report.assertions) {
        assertions.push_back(assertion_json(a));
    }
    return json{{"tool", kToolName},
                {"version", kToolVersion},
                {"schema_version", kSchemaVersion},
                {"experiment", report.experiment},
                {"config", report.config},
                {"generator", {{"algorithm", std::string(Rng::kAlgorithm)}, {"seed", report.seed}}},
                {"seed", report.seed},
                {"wall_time_s", report.wall_time_s},
                {"columns", report.columns},
                {"records", report.records},
                {"details", report.details},
                {"assertions", assertions}};
}

ExperimentReport report_from_json(const json &j) {
    try {
        ExperimentReport r;
        r.experiment = j.at("experiment").get<std::string>();
        r.config = j.at("config");
        r.seed = j.at("seed").get<std::uint64_t>();
        r.wall_time_s = j.at("wall_time_s").get<double>();
        r.columns = j.at("columns").get<std::vector<std::string>>();
        r.records = j.at("records");
        r.details = j.at("details");
        for (const auto &a : j.at("assertions")) {
            r.assertions.push_back(
                {a.at("name").get<std::string>(), a.at("pass").get<bool>(), a.at("witness").get<double>()});
        }
        return r;
    } catch (const json::exception &e) {
        fail(ErrorCode::ParseError, std::string("report: ") + e.what());
    }
}

std::string records_to_csv(const ExperimentReport &report) {
    std::string out;
    for (size_t c = 0; c < report.columns.size(); ++c) {
        out += (c ? "," : "") + csv_field(report.columns[c]);
    }
    out += "\r\n";
    for (const auto &rec : report.records) {
        for (size_t c = 0; c < report.columns.size(); ++c) {
            out += (c ? "," : "") + csv_field(rec.value(report.columns[c], json()));
        }
        out += "\r\n";
    }
    return out;
}

void emit_csv(const ExperimentReport &report, const std::filesystem::path &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        fail(ErrorCode::IoError, "cannot write " + path.string());
    }
    f << records_to_csv(report);
    if (!f) {
        fail(ErrorCode::IoError, "write failed for " + path.string());
    }
}

void write_report(const ExperimentReport &report, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    }
    std::ofstream f(dir / "report.json", std::ios::binary);
    if (!f) {
        fail(ErrorCode::IoError, "cannot write " + (dir / "report.json").string());
    }
    f << report_to_json(report).dump(2) << "\n";
    if (!f) {
        fail(ErrorCode::IoError, "write failed for report.json");
    }
    emit_csv(report, dir / "records.csv");
}

}  // namespace transym
