// Copyright 2026 The qdense Authors
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

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "test_support.hpp"

using namespace qdense;
using Catch::Approx;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, hooks);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) v.push_back(line);
    return v;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> v;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) v.push_back(f);
    if (!line.empty() && line.back() == ',') v.emplace_back();
    return v;
}

constexpr const char* kHeader = "d,p,q,S_rho,S_rho_star,chi,T,chi_times_T,degenerate";

}  // namespace

TEST_CASE("plan-a", "[cli]") {
    const auto r = run({"plan-a", "--d", "0.5"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == kHeader);
    const auto f = fields(ls[1]);
    REQUIRE(f.size() == 9);
    CHECK(std::stod(f[5]) == Approx(0.61).margin(0.005));
    CHECK(f[1] == "0");
    CHECK(f[2] == "0");
    CHECK(f[6] == "1");
    CHECK(f[8] == "0");
    // Full precision.
    CHECK(f[5].size() >= 16);

    CHECK(std::stod(fields(lines(run({"plan-a", "--d", "0"}).out)[1])[5]) == Approx(2.0).margin(1e-12));

    const auto grid = run({"plan-a", "--grid", "d=0:1:101"});
    REQUIRE(grid.code == 0);
    const auto gl = lines(grid.out);
    REQUIRE(gl.size() == 102);
    std::size_t argmin = 1;
    for (std::size_t i = 1; i < gl.size(); ++i)
        if (std::stod(fields(gl[i])[5]) < std::stod(fields(gl[argmin])[5])) argmin = i;
    CHECK(std::stod(fields(gl[argmin])[0]) == Approx(0.652).margin(0.005));
    CHECK(std::stod(fields(gl[argmin])[5]) == Approx(0.55).margin(0.005));
}

TEST_CASE("plan-b", "[cli]") {
    const auto r = run({"plan-b", "--d", "0.5", "--p", "0.9", "--q", "auto"});
    REQUIRE(r.code == 0);
    const auto f = fields(lines(r.out)[1]);
    CHECK(std::stod(f[2]) == Approx(0.9501).margin(5e-5));
    CHECK(std::stod(f[5]) == Approx(1.67).margin(0.01));
    CHECK(std::stod(f[6]) == Approx(2.63e-3).margin(0.01e-3));
    CHECK(std::stod(f[7]) == Approx(std::stod(f[5]) * std::stod(f[6])).epsilon(1e-14));

    const auto zero = fields(lines(run({"plan-b", "--d", "0.5", "--p", "0", "--q", "0"}).out)[1]);
    const auto a = fields(lines(run({"plan-a", "--d", "0.5"}).out)[1]);
    for (std::size_t i : {3u, 4u, 5u}) CHECK(std::stod(zero[i]) == Approx(std::stod(a[i])).margin(1e-14));

    const auto special = fields(lines(run({"plan-b", "--d", "0.5", "--p", "1", "--q", "0.5"}).out)[1]);
    CHECK(std::stod(special[3]) == Approx(0.0).margin(1e-12));
    CHECK(std::stod(special[4]) == Approx(1.0).margin(1e-12));

    SECTION("grids with degenerate points") {
        const auto g = run({"plan-b", "--d", "0.5", "--grid", "p=0:1:3", "--grid", "q=0:1:3"});
        REQUIRE(g.code == 0);
        const auto gl = lines(g.out);
        REQUIRE(gl.size() == 10);
        CHECK(gl.back() == "0.5,1,1,,,,,,1");
        CHECK(g.err.find("degenerate") != std::string::npos);
    }

    SECTION("fully degenerate request exits 3") {
        const auto d = run({"plan-b", "--d", "0.5", "--p", "1", "--q", "1"});
        CHECK(d.code == 3);
        CHECK(lines(d.out)[1] == "0.5,1,1,,,,,,1");
        CHECK_FALSE(d.err.empty());
        CHECK(run({"plan-b", "--d", "0.5", "--p", "1", "--q", "auto"}).code == 3);
    }
}

TEST_CASE("json output", "[cli]") {
    const auto r = run({"plan-b", "--grid", "d=0.1:0.9:3", "--p", "0.9", "--q", "auto", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["meta"]["command"] == "plan-b");
    CHECK(doc["meta"]["grids"]["d"]["steps"] == 3);
    CHECK(doc["meta"]["grids"]["q"] == "auto");
    CHECK(doc["meta"].contains("version"));
    CHECK(doc["meta"]["seed"].is_null());
    REQUIRE(doc["rows"].size() == 3);
    for (const auto& row : doc["rows"]) {
        for (const char* key : {"d", "p", "q", "S_rho", "S_rho_star", "chi", "T", "chi_times_T", "degenerate"})
            REQUIRE(row.contains(key));
        CHECK(row["chi"].get<double>() > 1.0);
    }
    const auto degenerate = json::parse(run({"plan-b", "--d", "0.5", "--grid", "p=0:1:2", "--q", "1",
                                             "--format", "json"}).out);
    CHECK(degenerate["rows"][1]["chi"].is_null());
    CHECK(degenerate["rows"][1]["degenerate"] == 1);
}

TEST_CASE("optimize", "[cli]") {
    const auto r = run({"optimize"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls[0] == "threshold_d,d_min,chi_min");
    const auto f = fields(ls[1]);
    CHECK(std::stod(f[0]) == Approx(0.245).margin(0.005));
    CHECK(std::stod(f[1]) == Approx(0.652).margin(0.005));
    CHECK(std::stod(f[2]) == Approx(0.55).margin(0.005));

    const auto doc = json::parse(run({"optimize", "--format", "json"}).out);
    CHECK(doc["rows"][0]["threshold_d"].get<double>() == Approx(0.245).margin(0.005));
}

TEST_CASE("verify", "[cli]") {
    const auto ok = run({"verify"});
    CHECK(ok.code == 0);
    const auto ls = lines(ok.out);
    REQUIRE(ls[0] == "check,max_deviation,tolerance,pass,detail");
    bool saw_dilation = false;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto f = fields(ls[i]);
        CHECK(f[3] == "1");
        if (f[0] == "dilation_vs_kraus") {
            saw_dilation = true;
            CHECK(std::stod(f[1]) <= 1e-12);
        }
    }
    CHECK(saw_dilation);

    SECTION("corrupted Kraus constant is caught") {
        cli::Hooks hooks;
        hooks.verify.kraus = [](DampingParam d) {
            auto ch = amplitude_damping_kraus(d);
            ch.ops[1](0, 1) *= 1.001;
            return ch;
        };
        const auto bad = run({"verify"}, hooks);
        CHECK(bad.code == 1);
        CHECK(bad.err.find("kraus_completeness") != std::string::npos);
        for (const auto& line : lines(bad.out))
            if (line.rfind("kraus_completeness,", 0) == 0) CHECK(fields(line)[3] == "0");
    }
}

TEST_CASE("mc", "[cli]") {
    const std::vector<std::string> args{"mc", "--trials", "1000000", "--seed", "42",
                                        "--d", "0.5", "--p", "0.9", "--q", "auto"};
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls[0] ==
            "d,p,q,trials,seed,successes,t_hat,t_stderr,T_analytic,sigma_distance,state_max_dev,state_dev_bound");
    const auto f = fields(ls[1]);
    CHECK(f[3] == "1000000");
    CHECK(f[4] == "42");
    CHECK(std::stod(f[9]) <= 4.0);
    CHECK(std::stod(f[10]) <= std::stod(f[11]));
    CHECK(run(args).out == r.out);

    CHECK(run({"mc", "--trials", "0", "--d", "0.5", "--p", "0.9", "--q", "auto"}).code == 2);
    CHECK(run({"mc", "--d", "0.5", "--p", "1", "--q", "1", "--trials", "10"}).code == 3);
}

TEST_CASE("usage errors", "[cli]") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"plan-a", "--d", "1.5"}).code == 2);
    CHECK(run({"plan-a", "--d", "abc"}).code == 2);
    CHECK(run({"plan-a"}).code == 2);
    CHECK(run({"plan-a", "--d", "0.5", "--grid", "d=0:1:3"}).code == 2);
    CHECK(run({"plan-a", "--grid", "d=0:1:1"}).code == 2);
    CHECK(run({"plan-a", "--grid", "x=0:1:3"}).code == 2);
    CHECK(run({"plan-a", "--d", "auto"}).code == 2);
    CHECK(run({"plan-b", "--d", "0.5", "--p", "0.5"}).code == 2);
    CHECK(run({"plan-a", "--d", "0.5", "--format", "xml"}).code == 2);
    CHECK(run({"plan-a", "--d", "0.5", "--frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("--output writes the table to a file", "[cli]") {
    const auto path = std::filesystem::temp_directory_path() / "qdense_cli_test.csv";
    std::filesystem::remove(path);
    const auto r = run({"plan-a", "--d", "0.25", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run({"plan-a", "--d", "0.25"}).out);
    std::filesystem::remove(path);
}
