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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "transym/config.hpp"
#include "transym/errors.hpp"
#include "transym/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitConfig = 4;

bool is_config_error(transym::ErrorCode code) {
    using transym::ErrorCode;
    return code == ErrorCode::ParseError || code == ErrorCode::SchemaVersionMismatch || code == ErrorCode::IoError;
}

int report_error(const transym::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_config_error(e.code()) ? kExitConfig : kExitNumerical;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Translation-asymmetry workbench"};
    app.require_subcommand(1);
    app.set_version_flag("--version", transym::kToolVersion);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "transym_out";

    auto *run = app.add_subcommand("run", "Run an experiment and write report.json and records.csv");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();

    auto *validate = app.add_subcommand("validate", "Parse a config and print it with defaults filled in");
    validate->add_option("--config", config_path, "Experiment config (JSON)")->required();

    auto *schema = app.add_subcommand("schema", "Print the config JSON schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (schema->parsed()) {
            std::cout << transym::config_schema().dump(2) << "\n";
            return kExitOk;
        }
        auto cfg = transym::parse_config(config_path);
        if (validate->parsed()) {
            std::cout << cfg.echo.dump(2) << "\n";
            return kExitOk;
        }
        if (seed) {
            transym::override_seed(cfg, *seed);
        }
        auto report = transym::run_experiment(cfg);
        transym::write_report(report, out_dir);
        bool ok = !report.assertions.empty();
        for (const auto &a : report.assertions) {
            std::printf("%-4s %s (witness %.3g)\n", a.pass ? "ok" : "FAIL", a.name.c_str(), a.witness);
            ok = ok && a.pass;
        }
        std::printf("%s: %zu records, %.2f s, report in %s\n", report.experiment.c_str(), report.records.size(),
                    report.wall_time_s, out_dir.c_str());
        return ok ? kExitOk : kExitAssertion;
    } catch (const transym::Error &e) {
        return report_error(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
