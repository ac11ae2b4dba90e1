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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "transym/optimize.hpp"
#include "transym/serialize.hpp"

namespace transym {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind { NoBroadcast, Tradeoff, Degradation, Nonadditivity, Irrev, KI, Cloner, Lemma8, Complementarity };

std::string experiment_name(ExperimentKind kind);

/// Validated run configuration with every default filled in.
///
/// Matrices and systems may be given inline or as a path (relative to the
/// config file) to a JSON file holding the same object.
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Nonadditivity;
    std::uint64_t seed = 0;
    OptimizerConfig optimizer;
    SystemSpec system_q = SystemSpec::diagonal({0, 1});
    SystemSpec system_s = SystemSpec::diagonal({0, 1});
    Mat state_q;
    Mat state_s;
    std::vector<double> t_grid;
    std::vector<double> buckets{1e-2, 1e-3, 1e-4, 1e-5};
    double coherence_tol = 1e-4;
    double degradation_tol = 1e-6;
    double tolerance = 1e-9;
    double swap_angle = 0.0;
    double t = 0.0;
    int trials = 10000;
    int n_max = 0;
    int orbit_samples = 4;
    std::vector<int> dims;
    std::string channel = "identity_prepare";
    std::vector<Mat> family;
    std::optional<Mat> probe_s;
    bool optimizer_seed_explicit = false;

    /// Normalized echo of the configuration, defaults included.
    json echo;
};

/// Strict parse: unknown keys, wrong types and nonpositive tolerances are
/// ParseError (naming the field); a schema_version other than 1 is
/// SchemaVersionMismatch; unreadable files are IoError.
RunConfig parse_config(const std::filesystem::path &path);
RunConfig parse_config_json(const json &j, const std::filesystem::path &base_dir);

/// Replaces the run seed (command-line --seed). The optimizer seed follows
/// unless the config set it explicitly.
void override_seed(RunConfig &cfg, std::uint64_t seed);

/// JSON Schema describing the config file.
json config_schema();

}  // namespace transym
