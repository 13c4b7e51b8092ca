/**
 * Copyright 2026 The nsa-entangle Authors
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

#include "nsa/scenario.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <sstream>
#include <tuple>

#include "nsa/builtins.hpp"
#include "nsa/report.hpp"
#include "support.hpp"

#ifndef NSA_SOURCE_DIR
#error "NSA_SOURCE_DIR must be defined"
#endif

namespace nsa {
namespace {

std::string source_path(const std::string& rel) { return std::string(NSA_SOURCE_DIR) + "/" + rel; }

Error parse_failure(std::string_view text) {
  try {
    parse_scenario(text, "t.json");
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error";
  return Error(ErrorCode::numerical, "none");
}

Error run_failure(const ScenarioSpec& s) {
  try {
    run_scenario(s);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "ran without error";
  return Error(ErrorCode::numerical, "none");
}

constexpr const char* kThreeBosons = R"({
  "name": "mini",
  "statistics": "boson",
  "modes": ["A", "B", "C"],
  "state": [{"coeff": [1.0, 0.0],
             "kets": [[["A", "down", 1.0, 0.0]], [["B", "down", 1.0, 0.0]], [["C", "up", 1.0, 0.0]]]}],
  "plans": [{"label": "(AB)-C", "two_particle": [{"kets": [[["C", "up", 1.0, 0.0]], [["C", "down", 1.0, 0.0]]]}]}]
})";

TEST(ParseScenario, MinimalDocument) {
  const auto s = parse_scenario(kThreeBosons);
  EXPECT_EQ(s.name, "mini");
  EXPECT_EQ(s.modes.size(), 3u);
  ASSERT_EQ(s.state.size(), 1u);
  EXPECT_EQ(s.state[0].kets.size(), 3u);
  ASSERT_EQ(s.plans.size(), 1u);
  EXPECT_EQ(s.plans[0].two_particle.size(), 1u);
  const auto r = run_scenario(s);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(*r.entanglement.bipartitions[0].purity_two(), 1.0, 1e-12);
}

TEST(ParseScenario, SyntaxErrorReportsLineAndColumn) {
  const Error e = parse_failure("{\n  \"name\": \"x\",\n  \"modes\": [\"A\" \"B\"]\n}");
  EXPECT_EQ(e.code(), ErrorCode::parse_error);
  EXPECT_NE(std::string(e.what()).find("t.json:3:"), std::string::npos) << e.what();
}

TEST(ParseScenario, FieldErrorsNameThePath) {
  std::string bad_spin = kThreeBosons;
  bad_spin.replace(bad_spin.find("\"down\""), 6, "\"sideways\"");
  Error e = parse_failure(bad_spin);
  EXPECT_EQ(e.code(), ErrorCode::parse_error);
  EXPECT_NE(std::string(e.what()).find("state[0].kets[0][0][1]"), std::string::npos) << e.what();

  e = parse_failure(R"({"statistics": "boson", "modes": ["A"]})");
  EXPECT_NE(std::string(e.what()).find("field 'state'"), std::string::npos) << e.what();

  e = parse_failure(R"({"statistics": "anyon", "modes": ["A"], "state": []})");
  EXPECT_NE(std::string(e.what()).find("field 'statistics'"), std::string::npos) << e.what();

  std::string bad_amp = kThreeBosons;
  bad_amp.replace(bad_amp.find("1.0, 0.0]]"), 3, "\"1\"");
  e = parse_failure(bad_amp);
  EXPECT_NE(std::string(e.what()).find("state[0].kets[0][0][2]"), std::string::npos) << e.what();
}

TEST(ParseScenario, ExpectationFieldChecks) {
  std::string doc = kThreeBosons;
  doc.insert(doc.rfind('}'), R"(, "expectations": [{"quantity": "eigenvalues", "plan": "(AB)-C", "value": [1.0], "tolerance": 1e-9}])");
  const Error e = parse_failure(doc);
  EXPECT_NE(std::string(e.what()).find("expectations[0].reduction"), std::string::npos) << e.what();
}

TEST(BuildScenario, NonOrthonormalBasisNamesPair) {
  const auto s = load_scenario_file(source_path("tests/data/non_orthonormal.json"));
  const Error e = run_failure(s);
  EXPECT_EQ(e.code(), ErrorCode::validation_error);
  const std::string msg = e.what();
  EXPECT_NE(msg.find("kets 0 and 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("plans[0].two_particle[0]"), std::string::npos) << msg;
}

TEST(BuildScenario, RepeatedFermionicKetIsNullWithScenarioName) {
  const auto s = load_scenario_file(source_path("tests/data/pauli.json"));
  const Error e = run_failure(s);
  EXPECT_EQ(e.code(), ErrorCode::null_state);
  EXPECT_NE(std::string(e.what()).find("pauli_violation"), std::string::npos) << e.what();
}

TEST(BuildScenario, ZeroProbabilityTrace) {
  const Error e = run_failure(load_scenario_file(source_path("tests/data/zero_probability.json")));
  EXPECT_EQ(e.code(), ErrorCode::zero_probability);
  EXPECT_NE(std::string(e.what()).find("never_fires"), std::string::npos) << e.what();
}

TEST(BuildScenario, SlotRules) {
  auto s = builtin_scenario("separated");
  s.plans[0].two_particle[0].slot = 3;
  EXPECT_NSA_ERROR(run_scenario(s), ErrorCode::validation_error);
  auto d = builtin_scenario("distinguishable");
  d.plans[0].two_particle[0].slot.reset();
  EXPECT_NSA_ERROR(run_scenario(d), ErrorCode::validation_error);
}

TEST(BuildScenario, UnknownMode) {
  auto s = builtin_scenario("separated");
  s.state[0].kets[0][0].mode = "Q";
  const Error e = run_failure(s);
  EXPECT_EQ(e.code(), ErrorCode::validation_error);
  EXPECT_NE(std::string(e.what()).find("state[0].kets[0]"), std::string::npos) << e.what();
}

TEST(LoadScenarioFile, MissingFileIsUsageError) {
  EXPECT_NSA_ERROR(load_scenario_file(source_path("tests/data/does_not_exist.json")), ErrorCode::usage_error);
}

TEST(RunFile, ShippedFilesReproduceBuiltins) {
  for (const auto& name : builtin_names()) {
    const auto from_file = load_scenario_file(source_path("scenarios/" + name + ".json"));
    EXPECT_EQ(format_machine(run_scenario(from_file)), format_machine(run_scenario(builtin_scenario(name)))) << name;
  }
}

TEST(RunFile, ExportRoundTrip) {
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_scenario(name);
    const auto again = parse_scenario(scenario_to_json(spec).dump(2));
    EXPECT_EQ(scenario_to_json(again).dump(), scenario_to_json(spec).dump()) << name;
  }
}

TEST(Report, MachineOutputIsDeterministic) {
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_scenario(name);
    EXPECT_EQ(format_machine(run_scenario(spec)), format_machine(run_scenario(spec))) << name;
  }
}

TEST(Report, MachineOutputShape) {
  const auto doc = nlohmann::json::parse(format_machine(run_scenario(builtin_scenario("overlap"))));
  EXPECT_EQ(doc["scenario"], "overlap");
  EXPECT_EQ(doc["status"], "pass");
  const auto& two = doc["bipartitions"][0]["two_particle"];
  EXPECT_EQ(two["labels"].size(), two["matrix"].size());
  EXPECT_EQ(two["matrix"][0][0].size(), 2u);  // [re, im]
  const auto& ev = two["eigenvalues"];
  for (std::size_t i = 1; i < ev.size(); ++i) EXPECT_GE(ev[i - 1].get<double>(), ev[i].get<double>());
}

TEST(Report, OutputNumbers) {
  EXPECT_EQ(output_number(-0.0), 0.0);
  EXPECT_FALSE(std::signbit(output_number(-1e-14)));
  EXPECT_EQ(output_number(1.0 / 3.0), 0.333333333333);
}

TEST(Report, ToleranceCapOnlyTightens) {
  const auto spec = builtin_scenario("overlap");
  RunOptions loose;
  loose.tolerance_cap = 1.0;
  const auto a = run_scenario(spec, loose);
  for (const auto& e : a.expectations) EXPECT_EQ(e.tolerance, e.expectation.tolerance);

  RunOptions tight;
  tight.tolerance_cap = 1e-13;
  const auto b = run_scenario(spec, tight);
  for (const auto& e : b.expectations) EXPECT_EQ(e.tolerance, 1e-13);
}

TEST(Report, ZeroToleranceCapFailsInexactValues) {
  RunOptions zero;
  zero.tolerance_cap = 0.0;
  auto spec = builtin_scenario("overlap");
  spec.expectations[0] = Expectation{Quantity::entropy_one, "(AA)-A", std::nullopt, 0.9, 1.0};
  EXPECT_TRUE(run_scenario(spec).pass);
  EXPECT_FALSE(run_scenario(spec, zero).pass);
}

TEST(Report, FailingExpectationFlipsStatus) {
  const auto r = run_scenario(load_scenario_file(source_path("tests/data/wrong_expectation.json")));
  EXPECT_FALSE(r.pass);
  EXPECT_NE(format_table(r).find("FAIL"), std::string::npos);
}

TEST(Builtins, UnknownNameIsUsageError) {
  EXPECT_NSA_ERROR(builtin_scenario("nope"), ErrorCode::usage_error);
}

TEST(Builtins, AllPassAndRunQuickly) {
  for (const auto& name : builtin_names()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_scenario(builtin_scenario(name));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_TRUE(r.pass) << format_table(r);
    EXPECT_LT(secs, 1.0) << name;
  }
}

// The acceptance criteria as literal rows: scenario, quantity, plan, side,
// value, tolerance.
using Row = std::tuple<std::string, std::string, std::string, std::string, std::string, double>;

std::string num(double v) { return nlohmann::json(v).dump(); }

std::vector<Row> criteria_table() {
  const std::string overlap_s = num(std::log2(3.0) - 2.0 / 3.0);
  const std::string major = num(2.0 / 3.0), minor = num(1.0 / 3.0);
  std::vector<Row> rows;
  rows.push_back({"overlap", "entropy_one", "(AA)-A", "", overlap_s, 1e-9});
  rows.push_back({"overlap", "entropy_two", "(AA)-A", "", overlap_s, 1e-9});
  rows.push_back({"overlap", "eigenvalues", "(AA)-A", "one", "[" + major + "," + minor + "]", 1e-10});
  rows.push_back({"overlap", "eigenvalues", "(AA)-A", "two", "[" + major + "," + minor + "]", 1e-10});
  for (const char* p : {"(AB)-C", "(CA)-B", "(BC)-A"}) {
    rows.push_back({"separated", "entropy_one", p, "", "0.0", 1e-9});
    rows.push_back({"separated", "entropy_two", p, "", "0.0", 1e-9});
    rows.push_back({"separated", "purity_one", p, "", "1.0", 1e-10});
    rows.push_back({"separated", "purity_two", p, "", "1.0", 1e-10});
    rows.push_back({"ghz", "entropy_one", p, "", "1.0", 1e-9});
    rows.push_back({"ghz", "entropy_two", p, "", "1.0", 1e-9});
  }
  rows.push_back({"separated", "genuine_multipartite", "", "", "false", 0.0});
  rows.push_back({"ghz", "genuine_multipartite", "", "", "true", 0.0});
  rows.push_back({"induced", "eigenvalues", "delocalized(B+C)", "two", "[0.5,0.5]", 1e-10});
  for (const char* s : {"distinguishable", "distinguishable_overlap"}) {
    for (const char* p : {"(12)-3 local", "(31)-2 local", "(23)-1 local", "(12)-3 nonlocal", "(31)-2 nonlocal",
                          "(23)-1 nonlocal"}) {
      rows.push_back({s, "purity_one", p, "", "1.0", 1e-10});
      rows.push_back({s, "purity_two", p, "", "1.0", 1e-10});
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST(Builtins, ExpectationsEqualCriteriaTable) {
  std::vector<Row> actual;
  for (const auto& name : builtin_names()) {
    for (const auto& e : builtin_scenario(name).expectations) {
      const std::string side = e.reduction ? std::string(to_string(*e.reduction)) : "";
      std::string value = std::visit([](const auto& v) { return nlohmann::json(v).dump(); }, e.value);
      actual.push_back({name, std::string(to_string(e.quantity)), e.plan, side, value, e.tolerance});
    }
  }
  std::sort(actual.begin(), actual.end());
  EXPECT_EQ(actual, criteria_table());
}

TEST(Builtins, ReportedValues) {
  const auto ov = run_scenario(builtin_scenario("overlap"));
  EXPECT_NEAR(*ov.entanglement.bipartitions[0].s_one(), 0.9182958340544896, 1e-9);
  EXPECT_TRUE(ov.entanglement.genuine_multipartite);

  const auto sep = run_scenario(builtin_scenario("separated"));
  for (const auto& b : sep.entanglement.bipartitions) {
    EXPECT_LE(*b.s_one(), 1e-9);
    EXPECT_LE(*b.s_two(), 1e-9);
  }

  const auto ghz = run_scenario(builtin_scenario("ghz"));
  EXPECT_EQ(ghz.entanglement.bipartitions.size(), 3u);
  EXPECT_TRUE(ghz.entanglement.genuine_multipartite);

  const auto ind = run_scenario(builtin_scenario("induced"));
  EXPECT_NEAR(ind.entanglement.bipartitions[0].two->rho.prob(), 1.0 / 3.0, 1e-10);
}

}  // namespace
}  // namespace nsa
