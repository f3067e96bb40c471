// Copyright 2026 The qdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using Catch::Approx;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(QDISC_TEST_DATA) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = qdisc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qdisc_cli_" + name)).string();
}

}  // namespace

TEST_CASE("solve reports") {
  SECTION("trine") {
    const Result r = call({"solve", data("trine.json")});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["solution"]["case"] == "common-latitude");
    CHECK(j["solution"]["p_error"].get<double>() == Approx(1.0 / 3.0).margin(1e-12));
    CHECK(j["certificate"]["verdict"] == "optimal");
    CHECK_FALSE(j.contains("oracle"));
  }
  SECTION("two states with unequal priors") {
    const Result r = call({"solve", data("two_state.json")});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["solution"]["case"] == "two-state");
  }
  SECTION("subset case leaves one element empty") {
    const Result r = call({"solve", data("case3.json"), "--oracle-check"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["solution"]["case"] == "subset");
    CHECK(j["solution"]["active_set"].size() == 3);
    CHECK(j["oracle"]["agrees"] == true);
    CHECK(j["oracle"]["difference"].get<double>() <= 1e-6);
  }
  SECTION("unsupported regime") {
    const Result r = call({"solve", data("mixed_unequal.json")});
    CHECK(r.code == 2);
    CHECK(r.err.find("oracle") != std::string::npos);
  }
  SECTION("missing file") { CHECK(call({"solve", data("absent.json")}).code == 1); }
  SECTION("bad flags") {
    CHECK(call({"solve"}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"solve", data("trine.json"), "--tolerance", "-1"}).code == 1);
  }
  SECTION("deterministic output") {
    CHECK(call({"solve", data("tetrahedron.json"), "--oracle-check"}).out ==
          call({"solve", data("tetrahedron.json"), "--oracle-check"}).out);
  }
}

TEST_CASE("oracle command") {
  const Result r = call({"oracle", data("mixed_unequal.json"), "--seed", "3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["dual"]["seed"] == 3);
  CHECK(j["certificate"]["verdict"] == "optimal");
  CHECK(call({"oracle", data("mixed_unequal.json"), "--seed", "3"}).out == r.out);
}

TEST_CASE("verify command") {
  CHECK(call({"verify", data("trine.json"), data("trine_povm.json")}).code == 0);
  const Result swapped = call({"verify", data("trine.json"), data("trine_swapped_povm.json")});
  CHECK(swapped.code == 3);
  CHECK(json::parse(swapped.out)["certificate"]["verdict"] == "non-optimal");
  CHECK(call({"verify", data("trine.json"), data("incomplete_povm.json")}).code == 1);
  CHECK(call({"verify", data("trine.json"), data("two_state.json")}).code == 1);
}

TEST_CASE("solve output verifies") {
  for (const char* name : {"trine.json", "two_state.json", "case3.json", "semicircle.json", "tetrahedron.json"}) {
    const Result r = call({"solve", data(name)});
    REQUIRE(r.code == 0);
    const std::string path = temp_path(std::string("report_") + name);
    std::ofstream(path) << r.out;
    CHECK(call({"verify", path, path}).code == 0);
  }
}

TEST_CASE("simulate command") {
  const std::string csv = temp_path("confusion.csv");
  const Result r = call({"simulate", data("trine.json"), "--use-solver", "--trials", "20000", "--seed", "5",
                         "--csv", csv});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["simulation"]["trials"] == 20000);
  CHECK(std::filesystem::exists(csv));
  const Result threaded = call({"simulate", data("trine.json"), data("trine_povm.json"), "--trials", "20000",
                                "--seed", "5", "--threads", "3"});
  REQUIRE(threaded.code == 0);
  CHECK(json::parse(threaded.out)["simulation"]["counts"] ==
        json::parse(call({"simulate", data("trine.json"), data("trine_povm.json"), "--trials", "20000",
                          "--seed", "5", "--threads", "1"})
                        .out)["simulation"]["counts"]);
  CHECK(call({"simulate", data("trine.json")}).code == 1);
  CHECK(call({"simulate", data("trine.json"), "--use-solver", "--trials", "0"}).code == 1);
}

TEST_CASE("family command") {
  const std::string path = temp_path("square.json");
  std::ofstream(path) << R"({"states": [{"bloch": [1, 0, 0]}, {"bloch": [0, 1, 0]},
                                          {"bloch": [-1, 0, 0]}, {"bloch": [0, -1, 0]}]})";
  const Result r = call({"family", path});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["family"]["polytope_dimension"] == 1);
  CHECK(j["family"]["non_unique"] == true);
  CHECK(j["family"]["vertex_povms"].size() == 2);
  CHECK(j["family"]["minimal_support"].get<int>() <= 4);
  CHECK(j["vertices_optimal"] == true);
}

TEST_CASE("export-bloch command") {
  const Result r = call({"export-bloch", data("trine.json")});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "kind,index,x,y,z,weight");
  int states = 0, elements = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("state,", 0) == 0) ++states;
    if (line.rfind("element,", 0) == 0) ++elements;
  }
  CHECK(states == 3);
  CHECK(elements == 3);
  CHECK(call({"export-bloch", data("trine.json"), "--povm", data("trine_povm.json")}).code == 0);
}
