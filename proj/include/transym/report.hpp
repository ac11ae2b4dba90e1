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

#include <filesystem>
#include <string>
#include <vector>

#include "transym/config.hpp"
#include "transym/experiments.hpp"

namespace transym {

inline constexpr const char *kToolName = "transym";
inline constexpr const char *kToolVersion = "0.1.0";

struct ExperimentReport {
    std::string experiment;
    json config;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    /// CSV header; every record is an object with exactly these keys.
    std::vector<std::string> columns;
    json records = json::array();
    json details = json::object();
    std::vector<Assertion> assertions;
};

/// Runs the configured experiment. Library errors are rethrown with the
/// experiment name and stage prefixed to the message.
ExperimentReport run_experiment(const RunConfig &cfg);

json report_to_json(const ExperimentReport &report);
ExperimentReport report_from_json(const json &j);

/// RFC 4180 text (CRLF line ends), header first, numbers with 17
/// significant digits.
std::string records_to_csv(const ExperimentReport &report);
/// IoError when the file cannot be written.
void emit_csv(const ExperimentReport &report, const std::filesystem::path &path);
/// Writes report.json and records.csv into `dir`, creating it if needed.
void write_report(const ExperimentReport &report, const std::filesystem::path &dir);

}  // namespace transym
