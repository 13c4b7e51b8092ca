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

#ifndef NSA_REPORT_HPP
#define NSA_REPORT_HPP

#include <fmt/format.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nsa/scenario.hpp"

namespace nsa {

struct ExpectationResult {
  Expectation expectation;
  double tolerance;  // effective, after any cap
  ExpectedValue actual;
  bool pass;
};

struct ScenarioReport {
  std::string name;
  std::string description;
  ScenarioStatistics statistics;
  std::vector<std::string> modes;
  std::size_t particles = 0;
  double input_norm = 0.0;
  EntanglementReport entanglement;
  std::vector<ExpectationResult> expectations;
  bool pass = true;
};

struct RunOptions {
  /// Expectation tolerances are capped at this value (never loosened).
  std::optional<double> tolerance_cap;
};

namespace detail {

inline const BipartitionReport& find_plan(const ScenarioReport& r, const std::string& label) {
  for (const auto& b : r.entanglement.bipartitions)
    if (b.label == label) return b;
  throw Error(ErrorCode::validation_error, "scenario '" + r.name + "': expectation names unknown plan '" + label + "'");
}

inline const ReductionSummary& side_of(const ScenarioReport& r, const BipartitionReport& b, Side side) {
  const auto& red = side == Side::one ? b.one : b.two;
  if (!red) {
    throw Error(ErrorCode::validation_error, "scenario '" + r.name + "': plan '" + b.label + "' has no " +
                                                 (side == Side::one ? "one" : "two") + "-particle reduction");
  }
  return *red;
}

inline ExpectationResult evaluate(const ScenarioReport& r, const Expectation& e, const RunOptions& opt) {
  ExpectationResult out{e, e.tolerance, ExpectedValue{}, false};
  if (opt.tolerance_cap) out.tolerance = std::min(out.tolerance, *opt.tolerance_cap);
  const double tol = out.tolerance;

  auto scalar = [&](double actual) {
    out.actual = actual;
    out.pass = std::abs(actual - std::get<double>(e.value)) <= tol;
  };

  switch (e.quantity) {
    case Quantity::genuine_multipartite:
      out.actual = r.entanglement.genuine_multipartite;
      out.pass = r.entanglement.genuine_multipartite == std::get<bool>(e.value);
      break;
    case Quantity::entropy_one: scalar(side_of(r, find_plan(r, e.plan), Side::one).entropy); break;
    case Quantity::entropy_two: scalar(side_of(r, find_plan(r, e.plan), Side::two).entropy); break;
    case Quantity::purity_one: scalar(side_of(r, find_plan(r, e.plan), Side::one).purity); break;
    case Quantity::purity_two: scalar(side_of(r, find_plan(r, e.plan), Side::two).purity); break;
    case Quantity::probability: scalar(side_of(r, find_plan(r, e.plan), *e.reduction).rho.prob()); break;
    case Quantity::eigenvalues: {
      const auto& spec = side_of(r, find_plan(r, e.plan), *e.reduction).spectrum.eigenvalues;
      const auto& want = std::get<std::vector<double>>(e.value);
      out.actual = spec;
      // the listed values are the leading ones; everything else must vanish
      bool ok = want.size() <= spec.size();
      for (std::size_t i = 0; ok && i < spec.size(); ++i) {
        const double target = i < want.size() ? want[i] : 0.0;
        ok = std::abs(spec[i] - target) <= tol;
      }
      out.pass = ok;
      break;
    }
  }
  return out;
}

}  // namespace detail

inline ScenarioReport run_scenario(const ScenarioSpec& spec, const RunOptions& opt = {}) {
  const BuiltScenario built = build_scenario(spec);
  ScenarioReport r;
  r.name = spec.name;
  r.description = spec.description;
  r.statistics = spec.statistics;
  r.modes = spec.modes;
  r.input_norm = built.input_norm;
  try {
    if (built.labeled) {
      r.particles = built.labeled->particles();
      r.entanglement = analyze_distinguishable(*built.labeled, built.slot_plans);
    } else {
      r.particles = built.identical->particles();
      r.entanglement = analyze(*built.identical, built.plans);
    }
  } catch (const Error& e) {
    throw Error(e.code(), "scenario '" + spec.name + "': " + e.message());
  }
  for (const auto& e : spec.expectations) r.expectations.push_back(detail::evaluate(r, e, opt));
  r.pass = std::all_of(r.expectations.begin(), r.expectations.end(), [](const ExpectationResult& x) { return x.pass; });
  return r;
}

// ------------------------------------------------------------------ output

/// 12 significant digits; negative zero and sub-1e-12 residue print as 0.
inline double output_number(double x) {
  if (std::abs(x) < 1e-12) return 0.0;
  return std::stod(fmt::format("{:.12g}", x));
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson cplx_json(cplx c) { return ojson::array({output_number(c.real()), output_number(c.imag())}); }

inline ojson value_json(const ExpectedValue& v) {
  ojson out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          out = output_number(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          out = x;
        } else {
          out = ojson::array();
          for (double d : x) out.push_back(output_number(d));
        }
      },
      v);
  return out;
}

inline ojson reduction_json(const ReductionSummary& s) {
  ojson o;
  o["sector"] = s.rho.sector();
  o["prob"] = output_number(s.rho.prob());
  o["entropy"] = output_number(s.entropy);
  o["purity"] = output_number(s.purity);
  ojson ev = ojson::array();
  for (double l : s.spectrum.eigenvalues) ev.push_back(output_number(l));
  o["eigenvalues"] = std::move(ev);
  o["labels"] = s.rho.labels();
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < s.rho.dim(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < s.rho.dim(); ++j) row.push_back(cplx_json(s.rho(i, j)));
    rows.push_back(std::move(row));
  }
  o["matrix"] = std::move(rows);
  return o;
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const ScenarioReport& r) {
  using detail::ojson;
  ojson doc;
  doc["scenario"] = r.name;
  doc["description"] = r.description;
  doc["statistics"] = std::string(to_string(r.statistics));
  doc["modes"] = r.modes;
  doc["particles"] = r.particles;
  doc["input_norm"] = output_number(r.input_norm);
  ojson plans = ojson::array();
  for (const auto& b : r.entanglement.bipartitions) {
    ojson p;
    p["label"] = b.label;
    p["one_particle"] = b.one ? detail::reduction_json(*b.one) : ojson(nullptr);
    p["two_particle"] = b.two ? detail::reduction_json(*b.two) : ojson(nullptr);
    p["mixed"] = b.mixed;
    plans.push_back(std::move(p));
  }
  doc["bipartitions"] = std::move(plans);
  doc["genuine_multipartite"] = r.entanglement.genuine_multipartite;
  ojson exps = ojson::array();
  for (const auto& e : r.expectations) {
    ojson x;
    x["quantity"] = std::string(to_string(e.expectation.quantity));
    x["plan"] = e.expectation.plan;
    x["reduction"] = e.expectation.reduction ? ojson(std::string(to_string(*e.expectation.reduction))) : ojson(nullptr);
    x["expected"] = detail::value_json(e.expectation.value);
    x["actual"] = detail::value_json(e.actual);
    x["tolerance"] = e.tolerance;
    x["pass"] = e.pass;
    exps.push_back(std::move(x));
  }
  doc["expectations"] = std::move(exps);
  doc["status"] = r.pass ? "pass" : "fail";
  return doc;
}

inline std::string format_machine(const ScenarioReport& r) { return report_to_json(r).dump(2) + "\n"; }

inline std::string format_table(const ScenarioReport& r) {
  std::string out;
  out += fmt::format("scenario  {} ({}, {} particles, modes", r.name, to_string(r.statistics), r.particles);
  for (const auto& m : r.modes) out += " " + m;
  out += ")\n";
  if (!r.description.empty()) out += fmt::format("          {}\n", r.description);
  out += "\n";

  auto num = [](const std::optional<double>& v) { return v ? fmt::format("{:.9f}", output_number(*v)) : std::string("-"); };
  out += fmt::format("{:<18} {:>12} {:>12} {:>12} {:>12}  {}\n", "bipartition", "S(one)", "S(two)", "P(one)", "P(two)", "mixed");
  for (const auto& b : r.entanglement.bipartitions) {
    out += fmt::format("{:<18} {:>12} {:>12} {:>12} {:>12}  {}\n", b.label, num(b.s_one()), num(b.s_two()),
                       num(b.purity_one()), num(b.purity_two()), b.mixed ? "yes" : "no");
  }
  out += fmt::format("\ngenuine multipartite: {}\n", r.entanglement.genuine_multipartite ? "yes" : "no");

  out += "\nreduced states (nonzero diagonal entries, eigenvalues)\n";
  for (const auto& b : r.entanglement.bipartitions) {
    for (const auto* red : {&b.one, &b.two}) {
      if (!*red) continue;
      const auto& s = **red;
      out += fmt::format("  {} [{}-particle, prob {:.6g}]\n", b.label, s.rho.sector(), output_number(s.rho.prob()));
      for (std::size_t i = 0; i < s.rho.dim(); ++i) {
        const double d = s.rho(i, i).real();
        if (std::abs(d) >= 1e-12) out += fmt::format("      {:<28} {:.9f}\n", s.rho.labels()[i], output_number(d));
      }
      out += "      eigenvalues:";
      for (double l : s.spectrum.eigenvalues)
        if (l >= 1e-12) out += fmt::format(" {:.9f}", output_number(l));
      out += "\n";
    }
  }

  if (!r.expectations.empty()) {
    out += "\nexpectations\n";
    for (const auto& e : r.expectations) {
      std::string what(to_string(e.expectation.quantity));
      if (!e.expectation.plan.empty()) what += "[" + e.expectation.plan + "]";
      if (e.expectation.reduction) what += "." + std::string(to_string(*e.expectation.reduction));
      out += fmt::format("  {}  {:<40} actual {}  expected {}  tol {:.1e}\n", e.pass ? "PASS" : "FAIL", what,
                         detail::value_json(e.actual).dump(), detail::value_json(e.expectation.value).dump(), e.tolerance);
    }
  }
  out += fmt::format("\nstatus: {}\n", r.pass ? "PASS" : "FAIL");
  return out;
}

}  // namespace nsa

#endif  // NSA_REPORT_HPP
