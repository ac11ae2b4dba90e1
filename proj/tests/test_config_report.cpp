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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "test_util.hpp"
#include "transym/config.hpp"
#include "transym/errors.hpp"
#include "transym/report.hpp"

using namespace transym;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    fs::path dir = fs::temp_directory_path() / ("transym_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path &p, const std::string &text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string read_text(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

json base(const std::string &experiment) {
    return json{{"schema_version", 1}, {"experiment", experiment}, {"seed", 3}};
}

int run_cli(const std::string &args) {
    std::string cmd = std::string("\"") + TRANSYM_CLI + "\" " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsAreFilledIn) {
    auto cfg = parse_config_json(base("no_broadcast"), ".");
    EXPECT_EQ(cfg.experiment, ExperimentKind::NoBroadcast);
    EXPECT_EQ(cfg.seed, 3u);
    EXPECT_EQ(cfg.optimizer.seed, 3u);
    EXPECT_EQ(cfg.optimizer.lambda_schedule, (std::vector<double>{0, 1, 4, 16, 64, 256}));
    EXPECT_EQ(cfg.state_q.rows(), 2);
    EXPECT_NEAR(std::abs(cfg.state_q(0, 1) - cplx(0.5, 0.0)), 0.0, 1e-15);
    EXPECT_EQ(cfg.echo.at("buckets").size(), 4u);
    EXPECT_TRUE(cfg.echo.contains("optimizer"));

    auto tr = parse_config_json(base("tradeoff"), ".");
    ASSERT_EQ(tr.t_grid.size(), 3u);
    EXPECT_NEAR(tr.t_grid[1], std::numbers::pi / 2, 1e-15);
}

TEST(Config, EchoReparsesToTheSameEcho) {
    for (const char *name : {"no_broadcast", "tradeoff", "degradation", "nonadditivity", "irrev", "ki", "cloner",
                             "lemma8", "complementarity"}) {
        auto cfg = parse_config_json(base(name), ".");
        auto again = parse_config_json(cfg.echo, ".");
        EXPECT_EQ(cfg.echo, again.echo) << name;
    }
}

TEST(Config, RejectsBadInput) {
    auto j = base("no_broadcast");
    j["coherence_tol"] = -1e-3;
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);

    j = base("irrev");
    j["gamma"] = 1;
    try {
        parse_config_json(j, ".");
        ADD_FAILURE() << "unknown key accepted";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
    }

    j = base("irrev");
    j["optimizer"] = {{"tol", 0.0}};
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);
    j["optimizer"] = {{"lambda_schedule", {4, 1}}};
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);

    j = base("irrev");
    j["schema_version"] = 2;
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::SchemaVersionMismatch);
    j.erase("schema_version");
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);

    EXPECT_EQ(code_of([&] { parse_config_json(base("teleport"), "."); }), ErrorCode::ParseError);

    j = base("irrev");
    j["state_q"] = matrix_to_json(Mat::Identity(2, 2));
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);

    j = base("tradeoff");
    j["state_q"] = matrix_to_json(Mat::Identity(2, 2) / 2.0);
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);

    j = base("cloner");
    j["n_max"] = 5;
    EXPECT_EQ(code_of([&] { parse_config_json(j, "."); }), ErrorCode::ParseError);

    EXPECT_EQ(code_of([] { parse_config("/nonexistent/transym.json"); }), ErrorCode::IoError);
}

TEST(Config, MalformedJsonReportsLine) {
    auto dir = scratch("malformed");
    write_text(dir / "c.json", "{\n  \"schema_version\": 1,\n  \"experiment\": \n}\n");
    try {
        parse_config(dir / "c.json");
        ADD_FAILURE() << "malformed JSON accepted";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("c.json:4"), std::string::npos) << e.what();
    }
}

TEST(Config, MatricesAndSystemsFromFiles) {
    auto dir = scratch("files");
    Mat rho(2, 2);
    rho << 0.75, cplx(0.0, 0.25), cplx(0.0, -0.25), 0.25;
    write_text(dir / "rho.json", matrix_to_json(rho).dump());
    write_text(dir / "sys.json", system_to_json(SystemSpec::diagonal({0, 2})).dump());
    auto j = base("irrev");
    j["state_q"] = "rho.json";
    j["system_q"] = "sys.json";
    write_text(dir / "c.json", j.dump());
    auto cfg = parse_config(dir / "c.json");
    EXPECT_LT(max_abs(cfg.state_q - rho), 1e-15);
    EXPECT_EQ(cfg.system_q.spectrum()[1], 2);
    EXPECT_EQ(cfg.system_s.dim(), 2);

    j["state_q"] = "missing.json";
    write_text(dir / "c.json", j.dump());
    EXPECT_EQ(code_of([&] { parse_config(dir / "c.json"); }), ErrorCode::ParseError);
}

TEST(Config, SeedOverride) {
    auto cfg = parse_config_json(base("irrev"), ".");
    override_seed(cfg, 99);
    EXPECT_EQ(cfg.seed, 99u);
    EXPECT_EQ(cfg.optimizer.seed, 99u);
    EXPECT_EQ(cfg.echo.at("seed"), 99);

    auto j = base("irrev");
    j["optimizer"] = {{"seed", 7}};
    auto pinned = parse_config_json(j, ".");
    override_seed(pinned, 99);
    EXPECT_EQ(pinned.seed, 99u);
    EXPECT_EQ(pinned.optimizer.seed, 7u);
}

TEST(Config, SchemaListsEveryExperiment) {
    json s = config_schema();
    std::string text = s.dump();
    for (const char *name : {"no_broadcast", "tradeoff", "degradation", "nonadditivity", "irrev", "ki", "cloner",
                             "lemma8", "complementarity"}) {
        EXPECT_NE(text.find(std::string("\"") + name + "\""), std::string::npos) << name;
    }
    EXPECT_TRUE(s.contains("required"));
}

TEST(Serialize, MatrixRoundTripIsExact) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int r = rng.integer(1, 5), c = rng.integer(1, 5);
        Mat m(r, c);
        for (Index i = 0; i < m.size(); ++i) {
            m.data()[i] = cplx(rng.normal() * 1e3, rng.normal() * 1e-7);
        }
        Mat back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
        EXPECT_EQ(back, m);
    }
    json j = matrix_to_json(Mat::Identity(2, 2));
    j["re"].erase(0);
    EXPECT_EQ(code_of([&] { matrix_from_json(j); }), ErrorCode::ParseError);
    j = matrix_to_json(Mat::Identity(2, 2));
    j.erase("rows");
    EXPECT_EQ(code_of([&] { matrix_from_json(j); }), ErrorCode::ParseError);
    json real_only = {{"rows", 1}, {"cols", 2}, {"re", {1.0, 2.0}}};
    EXPECT_EQ(matrix_from_json(real_only)(0, 1), cplx(2.0, 0.0));
}

TEST(Serialize, SystemRoundTrip) {
    Mat basis(2, 2);
    basis << 1, 1, 1, -1;
    basis /= std::sqrt(2.0);
    SystemSpec sys({0, 3}, basis);
    SystemSpec back = system_from_json(json::parse(system_to_json(sys).dump()));
    EXPECT_EQ(back.dim(), 2);
    EXPECT_LT(max_abs(back.hamiltonian() - sys.hamiltonian()), 1e-15);
    EXPECT_EQ(system_to_json(SystemSpec::diagonal({0, 1})).at("eigenbasis"), "computational");
}

TEST(Report, JsonRoundTripIsLossless) {
    auto cfg = parse_config_json(base("nonadditivity"), ".");
    auto rep = run_experiment(cfg);
    json j = report_to_json(rep);
    EXPECT_EQ(j.at("tool"), "transym");
    EXPECT_EQ(j.at("version"), "0.1.0");
    EXPECT_EQ(j.at("generator").at("algorithm"), Rng::kAlgorithm);
    auto back = report_from_json(json::parse(j.dump(2)));
    EXPECT_EQ(report_to_json(back), j);
    EXPECT_EQ(code_of([] { report_from_json(json::object()); }), ErrorCode::ParseError);
}

TEST(Report, CsvFormatting) {
    ExperimentReport rep;
    rep.columns = {"name", "value", "flag"};
    EXPECT_EQ(records_to_csv(rep), "name,value,flag\r\n");

    const double x = 0.1 + 0.2;
    rep.records = json::array({json{{"name", "a,\"b\""}, {"value", x}, {"flag", true}},
                               json{{"name", "line\nbreak"}, {"value", -0.0}, {"flag", false}}});
    std::string csv = records_to_csv(rep);
    EXPECT_EQ(csv.substr(0, 17), "name,value,flag\r\n");
    EXPECT_NE(csv.find("\"a,\"\"b\"\"\","), std::string::npos) << csv;
    EXPECT_NE(csv.find("\"line\nbreak\",0,false\r\n"), std::string::npos) << csv;
    size_t start = csv.find("\",", 17) + 2;
    size_t stop = csv.find(',', start);
    double parsed = std::strtod(csv.substr(start, stop - start).c_str(), nullptr);
    EXPECT_EQ(parsed, x);
    EXPECT_NE(csv.find(",true\r\n"), std::string::npos);

    EXPECT_EQ(code_of([&] { emit_csv(rep, "/nonexistent/dir/records.csv"); }), ErrorCode::IoError);
}

TEST(Report, CsvRoundTripsEveryDouble) {
    Rng rng(4);
    ExperimentReport rep;
    rep.columns = {"v"};
    std::vector<double> values;
    for (int i = 0; i < 200; ++i) {
        double v = rng.normal() * std::pow(10.0, rng.integer(-300, 300));
        values.push_back(v);
        rep.records.push_back(json{{"v", v}});
    }
    std::istringstream in(records_to_csv(rep));
    std::string line;
    std::getline(in, line);
    for (double v : values) {
        std::getline(in, line);
        ASSERT_FALSE(line.empty());
        ASSERT_EQ(line.back(), '\r');
        EXPECT_EQ(std::strtod(line.c_str(), nullptr), v);
    }
}

TEST(Report, ExperimentsAreDeterministic) {
    std::vector<json> configs{base("nonadditivity"), base("cloner"), base("lemma8"), base("complementarity")};
    configs[2]["trials"] = 200;
    for (const auto &j : configs) {
        auto cfg = parse_config_json(j, ".");
        auto ra = run_experiment(cfg);
        auto rb = run_experiment(cfg);
        EXPECT_EQ(records_to_csv(ra), records_to_csv(rb)) << j.at("experiment");
        ra.wall_time_s = rb.wall_time_s = 0.0;
        EXPECT_EQ(report_to_json(ra).dump(), report_to_json(rb).dump()) << j.at("experiment");
    }
}

TEST(Report, SeedChangesLemma8Records) {
    auto j = base("lemma8");
    j["trials"] = 50;
    auto cfg = parse_config_json(j, ".");
    json a = report_to_json(run_experiment(cfg)).at("records");
    override_seed(cfg, 4);
    json b = report_to_json(run_experiment(cfg)).at("records");
    EXPECT_NE(a, b);
}

TEST(Report, WriteReportCreatesBothFiles) {
    auto dir = scratch("write") / "nested";
    auto rep = run_experiment(parse_config_json(base("cloner"), "."));
    write_report(rep, dir);
    json j = json::parse(read_text(dir / "report.json"));
    EXPECT_EQ(j.at("experiment"), "cloner");
    EXPECT_EQ(read_text(dir / "records.csv"), records_to_csv(rep));
}

TEST(Cli, ExitCodes) {
    auto dir = scratch("cli");
    const std::string configs = TRANSYM_CONFIG_DIR;
    EXPECT_EQ(run_cli("validate --config " + configs + "/irrev.json"), 0);
    EXPECT_EQ(run_cli("schema"), 0);
    EXPECT_EQ(run_cli("--version"), 0);

    auto j = base("irrev");
    j["gamma"] = 1;
    write_text(dir / "unknown.json", j.dump());
    EXPECT_EQ(run_cli("validate --config " + (dir / "unknown.json").string()), 4);
    j = base("irrev");
    j["schema_version"] = 7;
    write_text(dir / "version.json", j.dump());
    EXPECT_EQ(run_cli("run --config " + (dir / "version.json").string()), 4);
    EXPECT_EQ(run_cli("run --config " + (dir / "absent.json").string()), 4);
    EXPECT_EQ(run_cli("run"), 4);
    EXPECT_EQ(run_cli("frobnicate"), 4);

    fs::path out = dir / "out";
    EXPECT_EQ(run_cli("run --config " + configs + "/nonadditivity.json --seed 5 --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "report.json"));
    EXPECT_TRUE(fs::exists(out / "records.csv"));
    EXPECT_EQ(json::parse(read_text(out / "report.json")).at("seed"), 5);

    j = base("degradation");
    j["degradation_tol"] = 0.9;
    write_text(dir / "strict.json", j.dump());
    EXPECT_EQ(run_cli("run --config " + (dir / "strict.json").string() + " --out " + (dir / "o2").string()), 2);

    j = base("no_broadcast");
    j["state_q"] = matrix_to_json(Mat(RVec::LinSpaced(2, 0.75, 0.25).cast<cplx>().asDiagonal()));
    write_text(dir / "symmetric.json", j.dump());
    EXPECT_EQ(run_cli("run --config " + (dir / "symmetric.json").string() + " --out " + (dir / "o3").string()), 3);
}
