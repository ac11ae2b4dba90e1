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

#include "transym/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "transym/errors.hpp"

namespace transym {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindInfo {
    ExperimentKind kind;
    const char *name;
    std::set<std::string> keys;
};

const std::vector<KindInfo> &kinds() {
    static const std::vector<KindInfo> table{
        {ExperimentKind::NoBroadcast,
         "no_broadcast",
         {"optimizer", "system_q", "system_s", "state_q", "coherence_tol", "buckets", "orbit_samples"}},
        {ExperimentKind::Tradeoff, "tradeoff", {"optimizer", "system_q", "system_s", "state_q", "t_grid"}},
        {ExperimentKind::Degradation,
         "degradation",
         {"optimizer", "system_q", "system_s", "state_q", "swap_angle", "degradation_tol", "probe_s"}},
        {ExperimentKind::Nonadditivity, "nonadditivity", {"n_max", "t"}},
        {ExperimentKind::Irrev, "irrev", {"optimizer", "system_q", "system_s", "state_q", "state_s"}},
        {ExperimentKind::KI, "ki", {"system_q", "state_q", "family", "orbit_samples", "tolerance"}},
        {ExperimentKind::Cloner, "cloner", {"dims", "n_max"}},
        {ExperimentKind::Lemma8, "lemma8", {"trials", "dims"}},
        {ExperimentKind::Complementarity, "complementarity", {"channel", "system_q", "tolerance"}},
    };
    return table;
}

[[noreturn]] void bad(const std::string &key, const std::string &msg) {
    fail(ErrorCode::ParseError, "config field \"" + key + "\": " + msg);
}

json load_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::IoError, "cannot read " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        size_t line = 1;
        for (size_t i = 0; i < std::min(e.byte, text.size()); ++i) {
            line += text[i] == '\n';
        }
        fail(ErrorCode::ParseError, path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
}

class Reader {
   public:
    Reader(const json &j, std::filesystem::path base) : j_(j), base_(std::move(base)) {}

    bool has(const std::string &key) const { return j_.contains(key); }

    double number(const std::string &key, double def, bool positive) const {
        if (!has(key)) {
            return def;
        }
        const auto &v = j_.at(key);
        if (!v.is_number()) {
            bad(key, "expected a number");
        }
        double x = v.get<double>();
        if (!std::isfinite(x) || (positive && !(x > 0.0))) {
            bad(key, positive ? "must be a positive finite number" : "must be finite");
        }
        return x;
    }

    int integer(const std::string &key, int def, int lo) const {
        if (!has(key)) {
            return def;
        }
        const auto &v = j_.at(key);
        if (!v.is_number_integer() || v.get<long long>() < lo || v.get<long long>() > 1'000'000'000) {
            bad(key, "expected an integer >= " + std::to_string(lo));
        }
        return v.get<int>();
    }

    std::uint64_t seed(const std::string &key, std::uint64_t def) const {
        if (!has(key)) {
            return def;
        }
        const auto &v = j_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            bad(key, "expected a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::vector<double> numbers(const std::string &key, std::vector<double> def) const {
        if (!has(key)) {
            return def;
        }
        const auto &v = j_.at(key);
        if (!v.is_array()) {
            bad(key, "expected an array of numbers");
        }
        std::vector<double> out;
        for (const auto &x : v) {
            if (!x.is_number() || !std::isfinite(x.get<double>())) {
                bad(key, "expected finite numbers");
            }
            out.push_back(x.get<double>());
        }
        return out;
    }

    std::vector<int> integers(const std::string &key, std::vector<int> def, int lo) const {
        if (!has(key)) {
            return def;
        }
        const auto &v = j_.at(key);
        if (!v.is_array() || v.empty()) {
            bad(key, "expected a nonempty array of integers");
        }
        std::vector<int> out;
        for (const auto &x : v) {
            if (!x.is_number_integer() || x.get<long long>() < lo || x.get<long long>() > 64) {
                bad(key, "entries must be integers in [" + std::to_string(lo) + ", 64]");
            }
            out.push_back(x.get<int>());
        }
        return out;
    }

    json object_or_file(const std::string &key, const json &v) const {
        if (v.is_string()) {
            try {
                return load_json_file(base_ / v.get<std::string>());
            } catch (const Error &e) {
                bad(key, e.what());
            }
        }
        if (!v.is_object()) {
            bad(key, "expected an object or a file path");
        }
        return v;
    }

    Mat matrix(const std::string &key, const json &v) const {
        try {
            return matrix_from_json(object_or_file(key, v));
        } catch (const Error &e) {
            bad(key, e.what());
        }
    }

    std::optional<Mat> matrix(const std::string &key) const {
        if (!has(key)) {
            return std::nullopt;
        }
        return matrix(key, j_.at(key));
    }

    SystemSpec system(const std::string &key, const SystemSpec &def) const {
        if (!has(key)) {
            return def;
        }
        try {
            return system_from_json(object_or_file(key, j_.at(key)));
        } catch (const Error &e) {
            bad(key, e.what());
        }
    }

    const json &raw(const std::string &key) const { return j_.at(key); }

   private:
    const json &j_;
    std::filesystem::path base_;
};

Mat plus_projector() {
    Mat m = Mat::Constant(2, 2, 0.5);
    return m;
}

Mat checked_state(const std::string &key, const Mat &m, int dim) {
    if (m.rows() != dim || m.cols() != dim) {
        bad(key, "state dimension does not match its system");
    }
    try {
        return DensityMatrix(m).mat();
    } catch (const Error &e) {
        bad(key, e.what());
    }
}

OptimizerConfig parse_optimizer(const json &j, std::uint64_t default_seed) {
    if (!j.is_object()) {
        bad("optimizer", "expected an object");
    }
    static const std::set<std::string> allowed{"max_iter", "tol", "restarts", "seed", "lambda_schedule", "t"};
    for (const auto &[key, _] : j.items()) {
        if (!allowed.count(key)) {
            bad("optimizer." + key, "unknown key");
        }
    }
    Reader r(j, {});
    OptimizerConfig o;
    o.max_iter = r.integer("max_iter", o.max_iter, 1);
    o.tol = r.number("tol", o.tol, true);
    o.restarts = r.integer("restarts", o.restarts, 1);
    o.seed = r.seed("seed", default_seed);
    o.lambda_schedule = r.numbers("lambda_schedule", o.lambda_schedule);
    if (o.lambda_schedule.empty()) {
        bad("optimizer.lambda_schedule", "must be nonempty");
    }
    for (size_t i = 0; i < o.lambda_schedule.size(); ++i) {
        if (o.lambda_schedule[i] < 0.0 || (i > 0 && o.lambda_schedule[i] < o.lambda_schedule[i - 1])) {
            bad("optimizer.lambda_schedule", "must be nonnegative and nondecreasing");
        }
    }
    o.t = r.number("t", o.t, false);
    return o;
}

json optimizer_echo(const OptimizerConfig &o) {
    return json{{"max_iter", o.max_iter}, {"tol", o.tol},   {"restarts", o.restarts},
                {"seed", o.seed},         {"lambda_schedule", o.lambda_schedule}, {"t", o.t}};
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
    for (const auto &k : kinds()) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "unknown";
}

RunConfig parse_config(const std::filesystem::path &path) {
    json j = load_json_file(path);
    return parse_config_json(j, path.parent_path());
}

RunConfig parse_config_json(const json &j, const std::filesystem::path &base_dir) {
    if (!j.is_object()) {
        fail(ErrorCode::ParseError, "config must be a JSON object");
    }
    if (!j.contains("schema_version")) {
        bad("schema_version", "missing");
    }
    if (!j.at("schema_version").is_number_integer()) {
        bad("schema_version", "expected an integer");
    }
    if (j.at("schema_version").get<long long>() != kSchemaVersion) {
        fail(ErrorCode::SchemaVersionMismatch,
             "config schema_version " + j.at("schema_version").dump() + " is not " + std::to_string(kSchemaVersion));
    }
    if (!j.contains("experiment") || !j.at("experiment").is_string()) {
        bad("experiment", "missing or not a string");
    }
    const std::string name = j.at("experiment").get<std::string>();
    const KindInfo *info = nullptr;
    for (const auto &k : kinds()) {
        if (name == k.name) {
            info = &k;
        }
    }
    if (!info) {
        bad("experiment", "unknown experiment \"" + name + "\"");
    }
    for (const auto &[key, _] : j.items()) {
        if (key != "schema_version" && key != "experiment" && key != "seed" && !info->keys.count(key)) {
            bad(key, "unknown key for experiment " + name);
        }
    }

    Reader r(j, base_dir);
    RunConfig cfg;
    cfg.experiment = info->kind;
    cfg.seed = r.seed("seed", 0);
    cfg.optimizer.seed = cfg.seed;
    if (r.has("optimizer")) {
        cfg.optimizer = parse_optimizer(r.raw("optimizer"), cfg.seed);
        cfg.optimizer_seed_explicit = r.raw("optimizer").contains("seed");
    }
    json echo{{"schema_version", kSchemaVersion}, {"experiment", name}, {"seed", cfg.seed}};
    if (info->keys.count("optimizer")) {
        echo["optimizer"] = optimizer_echo(cfg.optimizer);
    }
    const SystemSpec qubit = SystemSpec::diagonal({0, 1});

    switch (cfg.experiment) {
        case ExperimentKind::NoBroadcast:
        case ExperimentKind::Tradeoff:
        case ExperimentKind::Degradation:
        case ExperimentKind::Irrev: {
            cfg.system_q = r.system("system_q", qubit);
            cfg.system_s = r.system("system_s", cfg.system_q);
            cfg.state_q = checked_state("state_q", r.matrix("state_q").value_or(plus_projector()), cfg.system_q.dim());
            echo["system_q"] = system_to_json(cfg.system_q);
            echo["system_s"] = system_to_json(cfg.system_s);
            echo["state_q"] = matrix_to_json(cfg.state_q);
            break;
        }
        case ExperimentKind::KI:
        case ExperimentKind::Complementarity:
            cfg.system_q = r.system("system_q", qubit);
            echo["system_q"] = system_to_json(cfg.system_q);
            break;
        default:
            break;
    }

    switch (cfg.experiment) {
        case ExperimentKind::NoBroadcast:
            cfg.coherence_tol = r.number("coherence_tol", cfg.coherence_tol, true);
            cfg.buckets = r.numbers("buckets", cfg.buckets);
            for (double b : cfg.buckets) {
                if (!(b > 0.0)) {
                    bad("buckets", "thresholds must be positive");
                }
            }
            cfg.orbit_samples = r.integer("orbit_samples", cfg.orbit_samples, 2);
            echo["coherence_tol"] = cfg.coherence_tol;
            echo["buckets"] = cfg.buckets;
            echo["orbit_samples"] = cfg.orbit_samples;
            break;
        case ExperimentKind::Tradeoff:
            cfg.t_grid = r.numbers("t_grid", {kPi / 4, kPi / 2, 3 * kPi / 4});
            if (std::abs(cfg.state_q.trace().real() - (cfg.state_q * cfg.state_q).trace().real()) > 1e-9) {
                bad("state_q", "tradeoff sweep needs a pure state");
            }
            echo["t_grid"] = cfg.t_grid;
            break;
        case ExperimentKind::Degradation:
            cfg.swap_angle = r.number("swap_angle", kPi / 4, false);
            cfg.degradation_tol = r.number("degradation_tol", cfg.degradation_tol, true);
            if (cfg.system_s.dim() != cfg.system_q.dim()) {
                bad("system_s", "partial swap needs system_s and system_q of equal dimension");
            }
            if (auto p = r.matrix("probe_s")) {
                cfg.probe_s = checked_state("probe_s", *p, cfg.system_s.dim());
                echo["probe_s"] = matrix_to_json(*cfg.probe_s);
            }
            echo["swap_angle"] = cfg.swap_angle;
            echo["degradation_tol"] = cfg.degradation_tol;
            break;
        case ExperimentKind::Nonadditivity:
            cfg.n_max = r.integer("n_max", 64, 1);
            cfg.t = r.number("t", kPi / 2, false);
            echo["n_max"] = cfg.n_max;
            echo["t"] = cfg.t;
            break;
        case ExperimentKind::Irrev: {
            Mat def = Mat::Identity(cfg.system_s.dim(), cfg.system_s.dim()) / static_cast<double>(cfg.system_s.dim());
            cfg.state_s = checked_state("state_s", r.matrix("state_s").value_or(def), cfg.system_s.dim());
            echo["state_s"] = matrix_to_json(cfg.state_s);
            break;
        }
        case ExperimentKind::KI: {
            cfg.tolerance = r.number("tolerance", 1e-8, true);
            cfg.orbit_samples = r.integer("orbit_samples", cfg.orbit_samples, 2);
            if (r.has("family")) {
                const auto &fam = r.raw("family");
                if (!fam.is_array() || fam.empty()) {
                    bad("family", "expected a nonempty array of matrices");
                }
                json members = json::array();
                for (const auto &m : fam) {
                    cfg.family.push_back(checked_state("family", r.matrix("family", m), cfg.system_q.dim()));
                    members.push_back(matrix_to_json(cfg.family.back()));
                }
                echo["family"] = members;
            } else {
                cfg.state_q = checked_state("state_q", r.matrix("state_q").value_or(plus_projector()), cfg.system_q.dim());
                echo["state_q"] = matrix_to_json(cfg.state_q);
            }
            echo["tolerance"] = cfg.tolerance;
            echo["orbit_samples"] = cfg.orbit_samples;
            break;
        }
        case ExperimentKind::Cloner:
            cfg.dims = r.integers("dims", {2, 3}, 1);
            cfg.n_max = r.integer("n_max", 4, 1);
            if (cfg.n_max > 4) {
                bad("n_max", "explicit cloner supports n <= 4");
            }
            echo["dims"] = cfg.dims;
            echo["n_max"] = cfg.n_max;
            break;
        case ExperimentKind::Lemma8:
            cfg.trials = r.integer("trials", cfg.trials, 1);
            cfg.dims = r.integers("dims", {2, 3, 4}, 1);
            echo["trials"] = cfg.trials;
            echo["dims"] = cfg.dims;
            break;
        case ExperimentKind::Complementarity: {
            cfg.tolerance = r.number("tolerance", 1e-9, true);
            if (r.has("channel")) {
                const auto &c = r.raw("channel");
                if (!c.is_string()) {
                    bad("channel", "expected a string");
                }
                cfg.channel = c.get<std::string>();
            }
            static const std::set<std::string> channels{"identity_prepare", "cloner", "swap_to_s"};
            if (!channels.count(cfg.channel)) {
                bad("channel", "must be one of identity_prepare, cloner, swap_to_s");
            }
            echo["channel"] = cfg.channel;
            echo["tolerance"] = cfg.tolerance;
            break;
        }
    }
    cfg.echo = std::move(echo);
    return cfg;
}

void override_seed(RunConfig &cfg, std::uint64_t seed) {
    cfg.seed = seed;
    cfg.echo["seed"] = seed;
    if (!cfg.optimizer_seed_explicit) {
        cfg.optimizer.seed = seed;
        if (cfg.echo.contains("optimizer")) {
            cfg.echo["optimizer"]["seed"] = seed;
        }
    }
}

json config_schema() {
    json number = {{"type", "number"}};
    json positive = {{"type", "number"}, {"exclusiveMinimum", 0}};
    json integer = {{"type", "integer"}};
    json matrix = {{"oneOf",
                    json::array({{{"type", "string"}, {"description", "path to a matrix JSON file"}},
                                 {{"type", "object"},
                                  {"required", {"rows", "cols", "re"}},
                                  {"additionalProperties", false},
                                  {"properties",
                                   {{"rows", integer},
                                    {"cols", integer},
                                    {"re", {{"type", "array"}, {"items", number}}},
                                    {"im", {{"type", "array"}, {"items", number}}}}}}})}};
    json system = {{"oneOf",
                    json::array({{{"type", "string"}, {"description", "path to a system JSON file"}},
                                 {{"type", "object"},
                                  {"required", {"dim", "spectrum"}},
                                  {"additionalProperties", false},
                                  {"properties",
                                   {{"dim", integer},
                                    {"spectrum", {{"type", "array"}, {"items", integer}}},
                                    {"eigenbasis", {{"oneOf", json::array({{{"const", "computational"}}, matrix})}}}}}}})}};
    json optimizer = {{"type", "object"},
                      {"additionalProperties", false},
                      {"properties",
                       {{"max_iter", integer},
                        {"tol", positive},
                        {"restarts", integer},
                        {"seed", integer},
                        {"lambda_schedule", {{"type", "array"}, {"items", number}}},
                        {"t", number}}}};
    json props = {{"schema_version", {{"const", kSchemaVersion}}},
                  {"experiment", {{"enum", json::array()}}},
                  {"seed", {{"type", "integer"}, {"minimum", 0}}},
                  {"optimizer", optimizer},
                  {"system_q", system},
                  {"system_s", system},
                  {"state_q", matrix},
                  {"state_s", matrix},
                  {"probe_s", matrix},
                  {"family", {{"type", "array"}, {"items", matrix}}},
                  {"t_grid", {{"type", "array"}, {"items", number}}},
                  {"buckets", {{"type", "array"}, {"items", positive}}},
                  {"coherence_tol", positive},
                  {"degradation_tol", positive},
                  {"tolerance", positive},
                  {"swap_angle", number},
                  {"t", number},
                  {"trials", integer},
                  {"n_max", integer},
                  {"orbit_samples", integer},
                  {"dims", {{"type", "array"}, {"items", integer}}},
                  {"channel", {{"enum", {"identity_prepare", "cloner", "swap_to_s"}}}}};
    json all_of = json::array();
    for (const auto &k : kinds()) {
        props["experiment"]["enum"].push_back(k.name);
        json allowed = {{"schema_version", true}, {"experiment", true}, {"seed", true}};
        for (const auto &key : k.keys) {
            allowed[key] = true;
        }
        all_of.push_back({{"if", {{"properties", {{"experiment", {{"const", k.name}}}}}}},
                          {"then", {{"propertyNames", {{"enum", json::array()}}}}}});
        for (const auto &[key, _] : allowed.items()) {
            all_of.back()["then"]["propertyNames"]["enum"].push_back(key);
        }
    }
    return json{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"title", "transym run configuration"},
                {"type", "object"},
                {"required", {"schema_version", "experiment"}},
                {"properties", props},
                {"allOf", all_of}};
}

}  // namespace transym
