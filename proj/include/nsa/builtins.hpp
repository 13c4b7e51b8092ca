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

#ifndef NSA_BUILTINS_HPP
#define NSA_BUILTINS_HPP

// The three-qubit scenarios shipped with the tool. Every one lives in the
// modes {A, B, C}, so the single-particle space has dimension 6.

#include <string>
#include <vector>

#include "nsa/reference_values.hpp"
#include "nsa/scenario.hpp"

namespace nsa {

namespace builtin_detail {

using reference::kInvSqrt2;

inline KetSpec at(const std::string& mode, Spin s) { return {AmplitudeRecord{mode, s, 1.0, 0.0}}; }

inline KetSpec spread(const std::string& m1, const std::string& m2, Spin s) {
  return {AmplitudeRecord{m1, s, kInvSqrt2, 0.0}, AmplitudeRecord{m2, s, kInvSqrt2, 0.0}};
}

inline StageSpec local(const std::string& mode, std::optional<std::size_t> slot = std::nullopt) {
  return StageSpec{slot, {at(mode, Spin::up), at(mode, Spin::down)}};
}

inline StageSpec nonlocal(const std::string& m1, const std::string& m2, std::optional<std::size_t> slot = std::nullopt) {
  return StageSpec{slot, {spread(m1, m2, Spin::down), spread(m1, m2, Spin::up)}};
}

inline Expectation value(Quantity q, const std::string& plan, double v, double tol) {
  return Expectation{q, plan, std::nullopt, v, tol};
}

inline Expectation spectrum(const std::string& plan, Side side, std::vector<double> v) {
  return Expectation{Quantity::eigenvalues, plan, side, std::move(v), reference::kEigenvalueTol};
}

inline Expectation genuine(bool v) { return Expectation{Quantity::genuine_multipartite, "", std::nullopt, v, 0.0}; }

inline void expect_unit_purity(ScenarioSpec& s, const std::string& plan) {
  s.expectations.push_back(value(Quantity::purity_one, plan, 1.0, reference::kPurityTol));
  s.expectations.push_back(value(Quantity::purity_two, plan, 1.0, reference::kPurityTol));
}

inline void expect_pure(ScenarioSpec& s, const std::string& plan) {
  using namespace reference;
  s.expectations.push_back(value(Quantity::entropy_one, plan, 0.0, kEntropyTol));
  s.expectations.push_back(value(Quantity::entropy_two, plan, 0.0, kEntropyTol));
  s.expectations.push_back(value(Quantity::purity_one, plan, 1.0, kPurityTol));
  s.expectations.push_back(value(Quantity::purity_two, plan, 1.0, kPurityTol));
}

/// (AB)-C, (CA)-B, (BC)-A with localized measurements: the two-particle
/// side traces the lone region, the one-particle side traces the pair.
inline std::vector<PlanSpec> local_bipartitions() {
  return {
      PlanSpec{"(AB)-C", {local("A"), local("B")}, {local("C")}},
      PlanSpec{"(CA)-B", {local("C"), local("A")}, {local("B")}},
      PlanSpec{"(BC)-A", {local("B"), local("C")}, {local("A")}},
  };
}

inline ScenarioSpec base(std::string name, std::string description, ScenarioStatistics stats) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.statistics = stats;
  s.modes = {"A", "B", "C"};
  return s;
}

inline ScenarioSpec separated() {
  auto s = base("separated", "|A down, B down, C up> in three separated regions, localized traces",
                ScenarioStatistics::boson);
  s.state = {TermSpec{1.0, {at("A", Spin::down), at("B", Spin::down), at("C", Spin::up)}}};
  s.plans = local_bipartitions();
  for (const auto& p : s.plans) expect_pure(s, p.label);
  s.expectations.push_back(genuine(false));
  return s;
}

inline ScenarioSpec induced() {
  using namespace reference;
  auto s = base("induced", "|A down, B down, C up> traced onto the delocalized basis {(B+C) down, (B+C) up}/sqrt2",
                ScenarioStatistics::boson);
  s.state = {TermSpec{1.0, {at("A", Spin::down), at("B", Spin::down), at("C", Spin::up)}}};
  const std::string label = "delocalized(B+C)";
  s.plans = {PlanSpec{label, {}, {nonlocal("B", "C")}}};
  s.expectations.push_back(spectrum(label, Side::two, {0.5, 0.5}));
  return s;
}

inline ScenarioSpec ghz() {
  using namespace reference;
  auto s = base("ghz", "(|A down, B down, C down> + |A up, B up, C up>)/sqrt2, localized traces",
                ScenarioStatistics::boson);
  s.state = {TermSpec{kInvSqrt2, {at("A", Spin::down), at("B", Spin::down), at("C", Spin::down)}},
             TermSpec{kInvSqrt2, {at("A", Spin::up), at("B", Spin::up), at("C", Spin::up)}}};
  s.plans = local_bipartitions();
  for (const auto& p : s.plans) {
    s.expectations.push_back(value(Quantity::entropy_one, p.label, 1.0, kEntropyTol));
    s.expectations.push_back(value(Quantity::entropy_two, p.label, 1.0, kEntropyTol));
  }
  s.expectations.push_back(genuine(true));
  return s;
}

inline ScenarioSpec overlap() {
  using namespace reference;
  auto s = base("overlap", "three bosons condensed in region A: |A down, A down, A up>/sqrt2",
                ScenarioStatistics::boson);
  s.state = {TermSpec{kInvSqrt2, {at("A", Spin::down), at("A", Spin::down), at("A", Spin::up)}}};
  const std::string label = "(AA)-A";
  s.plans = {PlanSpec{label, {local("A"), local("A")}, {local("A")}}};
  s.expectations.push_back(value(Quantity::entropy_one, label, kOverlapEntropy, kEntropyTol));
  s.expectations.push_back(value(Quantity::entropy_two, label, kOverlapEntropy, kEntropyTol));
  s.expectations.push_back(spectrum(label, Side::one, {kOverlapMajorWeight, kOverlapMinorWeight}));
  s.expectations.push_back(spectrum(label, Side::two, {kOverlapMajorWeight, kOverlapMinorWeight}));
  return s;
}

// Labeled particles 1, 2, 3. The non-local basis for slot k spreads over the
// particle's own region and one other: (A+B) for slots 1 and 2, (C+A) for 3.
inline std::vector<PlanSpec> slot_plans(const std::vector<std::string>& home,
                                        const std::vector<std::pair<std::string, std::string>>& spread_of) {
  auto loc = [&](std::size_t slot) { return local(home[slot - 1], slot); };
  auto non = [&](std::size_t slot) { return nonlocal(spread_of[slot - 1].first, spread_of[slot - 1].second, slot); };
  return {
      PlanSpec{"(12)-3 local", {loc(1), loc(2)}, {loc(3)}},
      PlanSpec{"(31)-2 local", {loc(3), loc(1)}, {loc(2)}},
      PlanSpec{"(23)-1 local", {loc(2), loc(3)}, {loc(1)}},
      PlanSpec{"(12)-3 nonlocal", {non(1), non(2)}, {non(3)}},
      PlanSpec{"(31)-2 nonlocal", {non(3), non(1)}, {non(2)}},
      PlanSpec{"(23)-1 nonlocal", {non(2), non(3)}, {non(1)}},
  };
}

inline ScenarioSpec distinguishable() {
  auto s = base("distinguishable", "labeled product |A down>_1 |B down>_2 |C up>_3, local and non-local slot traces",
                ScenarioStatistics::distinguishable);
  s.state = {TermSpec{1.0, {at("A", Spin::down), at("B", Spin::down), at("C", Spin::up)}}};
  s.plans = slot_plans({"A", "B", "C"}, {{"A", "B"}, {"A", "B"}, {"C", "A"}});
  for (const auto& p : s.plans) expect_unit_purity(s, p.label);
  return s;
}

inline ScenarioSpec distinguishable_overlap() {
  auto s = base("distinguishable_overlap",
                "labeled product |A down>_1 |A down>_2 |A up>_3 with all three particles in region A",
                ScenarioStatistics::distinguishable);
  s.state = {TermSpec{1.0, {at("A", Spin::down), at("A", Spin::down), at("A", Spin::up)}}};
  s.plans = slot_plans({"A", "A", "A"}, {{"A", "B"}, {"A", "B"}, {"A", "B"}});
  for (const auto& p : s.plans) expect_unit_purity(s, p.label);
  return s;
}

}  // namespace builtin_detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"separated", "induced", "distinguishable",
                                              "distinguishable_overlap", "ghz", "overlap"};
  return names;
}

inline ScenarioSpec builtin_scenario(std::string_view name) {
  using namespace builtin_detail;
  if (name == "separated") return separated();
  if (name == "induced") return induced();
  if (name == "distinguishable") return distinguishable();
  if (name == "distinguishable_overlap") return distinguishable_overlap();
  if (name == "ghz") return ghz();
  if (name == "overlap") return overlap();
  throw Error(ErrorCode::usage_error, "unknown builtin scenario '" + std::string(name) + "'");
}

}  // namespace nsa

#endif  // NSA_BUILTINS_HPP
