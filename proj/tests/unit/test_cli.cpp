/*
* Copyright (C) 2026 phagesim contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "commands.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using phagesim::cli::run_command;

namespace
{

const std::string reference_path = std::string(PHAGESIM_SOURCE_DIR) + "/scenarios/reference.json";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "phagesim-cli" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_variant(const std::string& name, const std::function<void(nlohmann::json&)>& edit)
{
    std::ifstream in(reference_path);
    auto doc = nlohmann::json::parse(in);
    edit(doc);
    const auto path = scratch_dir("variants") / (name + ".json");
    std::ofstream(path) << doc.dump(2);
    return path.string();
}

} // namespace

TEST(Cli, ValidateReference)
{
    const auto dir = scratch_dir("validate");
    const auto r   = run({"validate", reference_path, "--out", dir.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("verdict: PASS"), std::string::npos);
    const auto doc = nlohmann::json::parse(slurp(dir / "validation.json"));
    EXPECT_TRUE(doc["verdict"].get<bool>());
}

TEST(Cli, ValidateJsonFlag)
{
    const auto r = run({"validate", reference_path, "--json", "--out", scratch_dir("vjson").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["verdict"].get<bool>());
}

TEST(Cli, ValidateFailureExitCode)
{
    const auto path = write_variant("small-dose", [](nlohmann::json& d) {
        d["parameters"]["d"] = 10.0;
    });
    const auto r = run({"validate", path, "--out", scratch_dir("vfail").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("verdict: FAIL"), std::string::npos);
}

TEST(Cli, Equilibria)
{
    const auto dir = scratch_dir("eq");
    const auto r   = run({"equilibria", reference_path, "--out", dir.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("unique-e0"), std::string::npos);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "equilibria.json"))["eta"].get<double>(), 0.2);
}

TEST(Cli, MinDose)
{
    const auto r = run({"min-dose", reference_path});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("d_min = 17.5830380"), std::string::npos);
    EXPECT_NE(r.out.find("bracketing  : consistent"), std::string::npos);
}

TEST(Cli, CompareCoinfection)
{
    const auto r = run({"compare-coinfection", reference_path});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("17.58303808"), std::string::npos);
    EXPECT_NE(r.out.find("fitted decay rate"), std::string::npos);
}

TEST(Cli, SimulateIsDeterministic)
{
    const auto a = scratch_dir("sim-a");
    const auto b = scratch_dir("sim-b");
    EXPECT_EQ(run({"simulate", reference_path, "--out", a.string()}).code, 0);
    const auto r = run({"simulate", reference_path, "--out", b.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("region R    : never left"), std::string::npos);
    EXPECT_NE(r.out.find("(consistent)"), std::string::npos);
    EXPECT_EQ(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
}

TEST(Cli, SimulateDense)
{
    const auto dir = scratch_dir("sim-dense");
    EXPECT_EQ(run({"simulate", reference_path, "--out", dir.string(), "--dense", "0.5"}).code, 0);
    const auto text = slurp(dir / "trajectory.csv");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 102);
}

TEST(Cli, StochasticOutputsAreReproducible)
{
    const auto path = write_variant("short", [](nlohmann::json& d) {
        d["run"]["T"]            = 10.0;
        d["run"]["decay_window"] = {2.0, 8.0};
        d["run"]["n_paths"]      = 20;
    });
    const auto a = scratch_dir("sde-a");
    const auto b = scratch_dir("sde-b");
    EXPECT_EQ(run({"simulate-sde", path, "--out", a.string()}).code, 0);
    EXPECT_EQ(run({"simulate-sde", path, "--out", b.string()}).code, 0);
    EXPECT_EQ(slurp(a / "path.csv"), slurp(b / "path.csv"));
    EXPECT_EQ(slurp(a / "ensemble.csv"), slurp(b / "ensemble.csv"));

    EXPECT_EQ(run({"mc-concentration", path, "--out", a.string()}).code, 0);
    EXPECT_EQ(run({"mc-concentration", path, "--out", b.string()}).code, 0);
    EXPECT_EQ(slurp(a / "concentration.csv"), slurp(b / "concentration.csv"));
    EXPECT_EQ(slurp(a / "concentration.csv").substr(0, 4), "eps,");
}

TEST(Cli, IoAndSchemaErrors)
{
    auto r = run({"validate", "/nonexistent/file.json"});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.err.rfind("error: io: ", 0), 0u);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

    const auto path = write_variant("betta", [](nlohmann::json& d) {
        d["parameters"]["betta"] = 1.0;
    });
    r = run({"validate", path});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.err.rfind("error: schema: ", 0), 0u);

    const auto bad = scratch_dir("syntax") / "bad.json";
    std::ofstream(bad) << "{ \"parameters\": ";
    r = run({"equilibria", bad.string()});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.err.rfind("error: parse: ", 0), 0u);
}

TEST(Cli, DivergenceExitCode)
{
    const auto path = write_variant("explode", [](nlohmann::json& d) {
        d["parameters"]["alpha"] = 80.0;
        d["parameters"]["d"]     = 1.0;
        d["run"]["T"]            = 5.0;
        d["run"]["decay_window"] = {1.0, 4.0};
    });
    const auto r = run({"simulate", path, "--out", scratch_dir("div").string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(r.err.rfind("error: divergence: ", 0) == 0 || r.err.rfind("error: positivity: ", 0) == 0) << r.err;
}

TEST(Cli, UsageErrors)
{
    EXPECT_NE(run({}).code, 0);
    EXPECT_NE(run({"bogus", reference_path}).code, 0);
    EXPECT_NE(run({"validate"}).code, 0);
}
