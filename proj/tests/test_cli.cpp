// Copyright 2026 The ptqtc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "ptqtc/cli.hpp"

namespace ptqtc::cli {
namespace {

constexpr double pi = std::numbers::pi;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Rows of a CSV document, skipping the header and '#' summary lines.
std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string header_of(const std::string &text) { return text.substr(0, text.find('\n')); }

TEST(ParseScalar, PiExpressions) {
    EXPECT_DOUBLE_EQ(parse_scalar("pi"), pi);
    EXPECT_DOUBLE_EQ(parse_scalar("pi/2"), pi / 2);
    EXPECT_DOUBLE_EQ(parse_scalar("-pi/6"), -pi / 6);
    EXPECT_DOUBLE_EQ(parse_scalar("3*pi/4"), 3 * pi / 4);
    EXPECT_DOUBLE_EQ(parse_scalar("0.5pi"), pi / 2);
    EXPECT_DOUBLE_EQ(parse_scalar("1e-3"), 1e-3);
    EXPECT_THROW(parse_scalar("abc"), ParameterError);
    EXPECT_THROW(parse_scalar("pi/0"), ParameterError);
    EXPECT_THROW(parse_scalar("1.5x"), ParameterError);
}

TEST(ParseGrid, Forms) {
    const auto g = parse_grid("0:pi/2:51");
    ASSERT_EQ(g.size(), 51u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), pi / 2);
    EXPECT_NEAR(g[1], pi / 100, 1e-15);
    EXPECT_EQ(parse_grid("0.3:0.3:1").size(), 1u);
    EXPECT_THROW(parse_grid("0:1:0"), ParameterError);
    EXPECT_THROW(parse_grid("0:1"), ParameterError);
    EXPECT_THROW(parse_grid("1:0:5"), ParameterError);
}

TEST(Evolve, HermitianDistanceEqualsTau) {
    const Result r = run_cli({"evolve", "--gamma", "0", "--grid", "0:pi/2:51"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(header_of(r.out),
              "tau,re_a1,im_a1,re_a2,im_a2,bloch_x,bloch_y,bloch_z,distance");
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 51u);
    for (const auto &row : rows) {
        ASSERT_EQ(row.size(), 9u);
        EXPECT_NEAR(std::stod(row[8]), std::stod(row[0]), 1e-11);
    }
}

TEST(Evolve, NearEpFinishesTheFlip) {
    const Result r = run_cli({"evolve", "--gamma", "0.95", "--grid", "0:pi/2:51"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    EXPECT_NEAR(std::stod(rows.back()[6]), 1.0, 1e-9);
}

TEST(Evolve, EmptyGridIsUsageError) {
    const Result r = run_cli({"evolve", "--grid", "0:1:0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Distance, HermitianSpeedIsOne) {
    const Result r = run_cli({"distance", "--gamma", "0", "--grid", "0:pi/2:101"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(header_of(r.out), "tau,distance,speed");
    for (const auto &row : csv_rows(r.out)) {
        EXPECT_NEAR(std::stod(row[2]), 1.0, 1e-9);
    }
}

TEST(Correlators, SinglePoint) {
    const Result r = run_cli({"correlators", "--gamma", "0.95", "--t", "pi/4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(header_of(r.out), "T,C12,C23,C13,K3");
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(std::stod(rows[0][4]), 2.8525, 1e-10);
}

double max_column(const std::string &csv, std::size_t col) {
    double m = -1e300;
    for (const auto &row : csv_rows(csv)) {
        m = std::max(m, std::stod(row[col]));
    }
    return m;
}

TEST(K3, Curves) {
    const Result herm = run_cli({"k3", "--gamma", "0"});
    ASSERT_EQ(herm.code, 0) << herm.err;
    EXPECT_NEAR(max_column(herm.out, 4), 1.5, 1e-9);

    const Result near = run_cli({"k3", "--gamma", "0.95"});
    ASSERT_EQ(near.code, 0);
    EXPECT_NEAR(std::stod(csv_rows(near.out).back()[4]), 2.8525, 1e-10);

    const Result mid = run_cli({"k3", "--gamma", "0.6"});
    EXPECT_GT(max_column(mid.out, 4), 1.5);

    const Result dil = run_cli({"k3", "--gamma", "0.6", "--path", "dilation"});
    ASSERT_EQ(dil.code, 0);
    EXPECT_NEAR(max_column(dil.out, 4), max_column(mid.out, 4), 1e-10);
}

TEST(K3Max, SweepWithEpReport) {
    const Result r = run_cli({"k3max", "--grid", "0:0.9:4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(header_of(r.out), "gamma_over_j,regime,t_star,k3_max");
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_NEAR(std::stod(rows[0][3]), 1.5, 1e-9);
    EXPECT_EQ(rows[0][1], "PTS");
    EXPECT_NE(r.out.find("# ep_left_limit="), std::string::npos);
    EXPECT_NE(r.out.find("# ep_right_value="), std::string::npos);
    EXPECT_NE(r.out.find("# ep_jump="), std::string::npos);
}

TEST(K3Max, EpGridPointNeedsOptIn) {
    EXPECT_EQ(run_cli({"k3max", "--grid", "1:1:1"}).code, 2);
    EXPECT_EQ(run_cli({"k3max", "--grid", "1:1:1", "--include-ep"}).code, 0);
}

TEST(Witness, HermitianHalf) {
    const Result r = run_cli({"witness", "--gamma", "0", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["schema_version"], "1");
    EXPECT_EQ(doc["command"], "witness");
    EXPECT_NEAR(doc["rows"][0]["W"].get<double>(), 0.5, 1e-12);
}

TEST(Witness, GridAndRegimeError) {
    const Result r = run_cli({"witness", "--grid", "0:0.99:100"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(csv_rows(r.out).size(), 100u);
    EXPECT_EQ(run_cli({"witness", "--gamma", "1.5"}).code, 2);
}

TEST(MonteCarlo, DeterministicAndSane) {
    const std::vector<std::string> args{"montecarlo", "--gamma", "0.6", "--t", "pi/6",
                                        "--shots", "20000", "--seed", "5", "--mode", "dilated"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(header_of(a.out), "quantity,gamma_over_j,time,mode,shots,seed,accepted,attempted,"
                                "success_rate,estimate,std_error,exact");
    const auto row = csv_rows(a.out).at(0);
    EXPECT_NEAR(std::stod(row[9]), std::stod(row[11]), 5.0 * std::stod(row[10]));
}

TEST(MonteCarlo, QuantitiesAndErrors) {
    EXPECT_EQ(run_cli({"montecarlo", "--quantity", "witness", "--gamma", "0.5"}).code, 0);
    EXPECT_EQ(run_cli({"montecarlo", "--quantity", "conditional", "--tau", "pi/4"}).code, 0);
    EXPECT_EQ(run_cli({"montecarlo", "--quantity", "histogram"}).code, 2);
    EXPECT_EQ(run_cli({"montecarlo", "--mode", "quantum"}).code, 2);
    EXPECT_EQ(run_cli({"montecarlo", "--shots", "0"}).code, 2);
    EXPECT_EQ(run_cli({"montecarlo", "--gamma", "1.5", "--mode", "dilated"}).code, 2);
    // One dilated shot at 2.5% acceptance is rejected for seed 0.
    const Result r = run_cli({"montecarlo", "--quantity", "conditional", "--gamma", "0.95",
                              "--tau", "pi/2", "--mode", "dilated", "--shots", "1"});
    EXPECT_EQ(r.code, 3);
}

TEST(DilationCheck, NearEpSuccessRate) {
    const Result r =
        run_cli({"dilation-check", "--gamma", "0.95", "--tau", "pi/2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_NEAR(doc["summary"]["success_prob"].get<double>(), 0.025, 1e-6);
    for (const auto &row : doc["rows"]) {
        EXPECT_TRUE(row["pass"].get<bool>()) << row["check"];
    }
    EXPECT_EQ(run_cli({"dilation-check", "--gamma", "1.2"}).code, 2);
}

TEST(Json, RoundTripsTheDocumentedSchema) {
    const Result r = run_cli({"k3", "--gamma", "0.6", "--grid", "0:pi/4:5", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_TRUE(doc.contains("parameters"));
    ASSERT_TRUE(doc.contains("summary"));
    const auto cols = doc["columns"].get<std::vector<std::string>>();
    EXPECT_EQ(cols, (std::vector<std::string>{"T", "C12", "C23", "C13", "K3"}));
    ASSERT_EQ(doc["rows"].size(), 5u);
    for (const auto &row : doc["rows"]) {
        for (const auto &c : cols) {
            EXPECT_TRUE(row[c].is_number());
        }
        const double k3 = row["K3"].get<double>();
        EXPECT_NEAR(k3, correlators(row["T"].get<double>(), PtParams(1.0, 0.6)).k3, 1e-15);
    }
    EXPECT_EQ(nlohmann::json::parse(doc.dump()), doc);
}

TEST(Config, FileValuesAreOverriddenByFlags) {
    const auto path = std::filesystem::temp_directory_path() / "ptqtc_test.cfg";
    {
        std::ofstream f(path);
        f << "gamma=0.95\n"
          << "t=pi/4\n";
    }
    const Result from_file = run_cli({"correlators", "--config", path.string()});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NEAR(std::stod(csv_rows(from_file.out)[0][4]), 2.8525, 1e-10);

    const Result overridden = run_cli({"correlators", "--config", path.string(), "--gamma", "0"});
    ASSERT_EQ(overridden.code, 0);
    EXPECT_NEAR(std::stod(csv_rows(overridden.out)[0][4]), correlators(pi / 4, PtParams(1.0, 0.0)).k3,
                1e-10);
    std::filesystem::remove(path);
}

TEST(Usage, BadInvocations) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"nope"}).code, 2);
    EXPECT_EQ(run_cli({"k3", "--gamma", "x"}).code, 2);
    EXPECT_EQ(run_cli({"k3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run_cli({"k3", "--unknown-flag", "1"}).code, 2);
}

TEST(Output, WritesToFile) {
    const auto path = std::filesystem::temp_directory_path() / "ptqtc_out.csv";
    const Result r = run_cli({"correlators", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    EXPECT_EQ(header, "T,C12,C23,C13,K3");
    std::filesystem::remove(path);
}

TEST(Binary, ExitCodes) {
    const std::string bin = PTQTC_CLI_PATH;
    const auto status = [&](const std::string &args) {
        const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    EXPECT_EQ(status("correlators --gamma 0.6"), 0);
    EXPECT_EQ(status("evolve --grid 0:1:0"), 2);
    EXPECT_EQ(status("dilation-check --gamma 0.95 --tau pi/2"), 0);
}

} // namespace
} // namespace ptqtc::cli
