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

#ifndef NSA_SCENARIO_HPP
#define NSA_SCENARIO_HPP

// Scenario documents: a JSON object with "statistics", "modes", "state",
// "plans" and optional "expectations".
//
//   {
//     "name": "induced",
//     "statistics": "boson",              // boson | fermion | distinguishable
//     "modes": ["A", "B", "C"],
//     "state": [ { "coeff": [1.0, 0.0],
//                  "kets": [ [["A", "down", 1.0, 0.0]], ... ] } ],
//     "plans": [ { "label": "(AB)-C",
//                  "two_particle": [ { "kets": [ket, ...] } ],
//                  "one_particle": [ { "slot": 1, "kets": [...] }, ... ] } ],
//     "expectations": [ { "quantity": "entropy_two", "plan": "(AB)-C",
//                         "value": 0.0, "tolerance": 1e-9 } ]
//   }
//
// A ket is a list of [mode, spin, re, im] records; amplitudes are plain
// decimals. "slot" is required for distinguishable scenarios and forbidden
// otherwise.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nsa/oracle.hpp"

namespace nsa {

enum class ScenarioStatistics { boson, fermion, distinguishable };

inline std::string_view to_string(ScenarioStatistics s) {
  switch (s) {
    case ScenarioStatistics::boson: return "boson";
    case ScenarioStatistics::fermion: return "fermion";
    case ScenarioStatistics::distinguishable: return "distinguishable";
  }
  return "?";
}

struct AmplitudeRecord {
  std::string mode;
  Spin spin;
  double re = 0.0;
  double im = 0.0;
};
using KetSpec = std::vector<AmplitudeRecord>;

struct TermSpec {
  cplx coeff = 1.0;
  std::vector<KetSpec> kets;
};

struct StageSpec {
  std::optional<std::size_t> slot;
  std::vector<KetSpec> kets;
};

struct PlanSpec {
  std::string label;
  std::vector<StageSpec> one_particle;
  std::vector<StageSpec> two_particle;
};

enum class Quantity { entropy_one, entropy_two, purity_one, purity_two, eigenvalues, probability, genuine_multipartite };
enum class Side { one, two };

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::entropy_one: return "entropy_one";
    case Quantity::entropy_two: return "entropy_two";
    case Quantity::purity_one: return "purity_one";
    case Quantity::purity_two: return "purity_two";
    case Quantity::eigenvalues: return "eigenvalues";
    case Quantity::probability: return "probability";
    case Quantity::genuine_multipartite: return "genuine_multipartite";
  }
  return "?";
}

inline std::string_view to_string(Side s) { return s == Side::one ? "one" : "two"; }

using ExpectedValue = std::variant<double, bool, std::vector<double>>;

struct Expectation {
  Quantity quantity;
  std::string plan;               // empty for genuine_multipartite
  std::optional<Side> reduction;  // eigenvalues / probability only
  ExpectedValue value;
  double tolerance = 0.0;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  ScenarioStatistics statistics = ScenarioStatistics::boson;
  std::vector<std::string> modes;
  std::vector<TermSpec> state;
  std::vector<PlanSpec> plans;
  std::vector<Expectation> expectations;
};

// ---------------------------------------------------------------- parsing

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void field_error(const std::string& source, const std::string& path, const std::string& what) {
  throw Error(ErrorCode::parse_error, source + ": field '" + path + "': " + what);
}

inline const json& member(const json& obj, const char* key, const std::string& source, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(source, path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline double number(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_number()) field_error(source, path, "expected a number");
  return j.get<double>();
}

inline std::string text(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_string()) field_error(source, path, "expected a string");
  return j.get<std::string>();
}

inline const json& array(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array()) field_error(source, path, "expected an array");
  return j;
}

inline KetSpec parse_ket(const json& j, const std::string& source, const std::string& path) {
  KetSpec k;
  array(j, source, path);
  if (j.empty()) field_error(source, path, "a ket needs at least one amplitude record");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& r = array(j[i], source, p);
    if (r.size() != 4) field_error(source, p, "expected [mode, spin, re, im]");
    AmplitudeRecord rec;
    rec.mode = text(r[0], source, p + "[0]");
    const std::string spin = text(r[1], source, p + "[1]");
    if (spin == "up") {
      rec.spin = Spin::up;
    } else if (spin == "down") {
      rec.spin = Spin::down;
    } else {
      field_error(source, p + "[1]", "spin must be \"up\" or \"down\"");
    }
    rec.re = number(r[2], source, p + "[2]");
    rec.im = number(r[3], source, p + "[3]");
    k.push_back(std::move(rec));
  }
  return k;
}

inline std::vector<StageSpec> parse_stages(const json& j, const std::string& source, const std::string& path) {
  std::vector<StageSpec> out;
  array(j, source, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_object()) field_error(source, p, "expected an object");
    StageSpec s;
    if (auto it = j[i].find("slot"); it != j[i].end()) {
      if (!it->is_number_integer() || it->get<long long>() < 1) field_error(source, p + ".slot", "expected a positive integer");
      s.slot = it->get<std::size_t>();
    }
    const json& kets = array(member(j[i], "kets", source, p), source, p + ".kets");
    for (std::size_t k = 0; k < kets.size(); ++k)
      s.kets.push_back(parse_ket(kets[k], source, p + ".kets[" + std::to_string(k) + "]"));
    out.push_back(std::move(s));
  }
  return out;
}

inline Quantity parse_quantity(const std::string& q, const std::string& source, const std::string& path) {
  for (auto c : {Quantity::entropy_one, Quantity::entropy_two, Quantity::purity_one, Quantity::purity_two,
                 Quantity::eigenvalues, Quantity::probability, Quantity::genuine_multipartite})
    if (to_string(c) == q) return c;
  field_error(source, path, "unknown quantity '" + q + "'");
}

inline std::size_t line_of(std::string_view text, std::size_t byte, std::size_t& column) {
  std::size_t line = 1;
  column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return line;
}

}  // namespace detail

inline ScenarioSpec parse_scenario(std::string_view text, const std::string& source = "<scenario>") {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t col = 0;
    const std::size_t line = detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0, col);
    throw Error(ErrorCode::parse_error,
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) detail::field_error(source, "<root>", "expected an object");

  ScenarioSpec s;
  s.name = doc.contains("name") ? detail::text(doc["name"], source, "name") : source;
  if (doc.contains("description")) s.description = detail::text(doc["description"], source, "description");

  const std::string stats = detail::text(detail::member(doc, "statistics", source, ""), source, "statistics");
  if (stats == "boson") {
    s.statistics = ScenarioStatistics::boson;
  } else if (stats == "fermion") {
    s.statistics = ScenarioStatistics::fermion;
  } else if (stats == "distinguishable") {
    s.statistics = ScenarioStatistics::distinguishable;
  } else {
    detail::field_error(source, "statistics", "expected boson, fermion or distinguishable");
  }

  const json& modes = detail::array(detail::member(doc, "modes", source, ""), source, "modes");
  for (std::size_t i = 0; i < modes.size(); ++i)
    s.modes.push_back(detail::text(modes[i], source, "modes[" + std::to_string(i) + "]"));

  const json& state = detail::array(detail::member(doc, "state", source, ""), source, "state");
  if (state.empty()) detail::field_error(source, "state", "needs at least one term");
  for (std::size_t t = 0; t < state.size(); ++t) {
    const std::string p = "state[" + std::to_string(t) + "]";
    if (!state[t].is_object()) detail::field_error(source, p, "expected an object");
    TermSpec term;
    if (auto it = state[t].find("coeff"); it != state[t].end()) {
      if (!it->is_array() || it->size() != 2) detail::field_error(source, p + ".coeff", "expected [re, im]");
      term.coeff = cplx(detail::number((*it)[0], source, p + ".coeff[0]"), detail::number((*it)[1], source, p + ".coeff[1]"));
    }
    const json& kets = detail::array(detail::member(state[t], "kets", source, p), source, p + ".kets");
    for (std::size_t k = 0; k < kets.size(); ++k)
      term.kets.push_back(detail::parse_ket(kets[k], source, p + ".kets[" + std::to_string(k) + "]"));
    s.state.push_back(std::move(term));
  }

  if (auto it = doc.find("plans"); it != doc.end()) {
    detail::array(*it, source, "plans");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = "plans[" + std::to_string(i) + "]";
      const json& pj = (*it)[i];
      if (!pj.is_object()) detail::field_error(source, p, "expected an object");
      PlanSpec plan;
      plan.label = detail::text(detail::member(pj, "label", source, p), source, p + ".label");
      if (pj.contains("one_particle")) plan.one_particle = detail::parse_stages(pj["one_particle"], source, p + ".one_particle");
      if (pj.contains("two_particle")) plan.two_particle = detail::parse_stages(pj["two_particle"], source, p + ".two_particle");
      s.plans.push_back(std::move(plan));
    }
  }

  if (auto it = doc.find("expectations"); it != doc.end()) {
    detail::array(*it, source, "expectations");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = "expectations[" + std::to_string(i) + "]";
      const json& ej = (*it)[i];
      if (!ej.is_object()) detail::field_error(source, p, "expected an object");
      Expectation e;
      e.quantity = detail::parse_quantity(detail::text(detail::member(ej, "quantity", source, p), source, p + ".quantity"),
                                          source, p + ".quantity");
      if (ej.contains("plan")) e.plan = detail::text(ej["plan"], source, p + ".plan");
      if (ej.contains("reduction")) {
        const std::string r = detail::text(ej["reduction"], source, p + ".reduction");
        if (r == "one") {
          e.reduction = Side::one;
        } else if (r == "two") {
          e.reduction = Side::two;
        } else {
          detail::field_error(source, p + ".reduction", "expected \"one\" or \"two\"");
        }
      }
      const json& v = detail::member(ej, "value", source, p);
      if (e.quantity == Quantity::genuine_multipartite) {
        if (!v.is_boolean()) detail::field_error(source, p + ".value", "expected true or false");
        e.value = v.get<bool>();
      } else if (e.quantity == Quantity::eigenvalues) {
        detail::array(v, source, p + ".value");
        std::vector<double> vals;
        for (std::size_t k = 0; k < v.size(); ++k) vals.push_back(detail::number(v[k], source, p + ".value[" + std::to_string(k) + "]"));
        e.value = std::move(vals);
      } else {
        e.value = detail::number(v, source, p + ".value");
      }
      e.tolerance = detail::number(detail::member(ej, "tolerance", source, p), source, p + ".tolerance");
      if (e.tolerance < 0.0) detail::field_error(source, p + ".tolerance", "must be nonnegative");
      if (e.quantity != Quantity::genuine_multipartite && e.plan.empty()) {
        detail::field_error(source, p + ".plan", "required for " + std::string(to_string(e.quantity)));
      }
      if ((e.quantity == Quantity::eigenvalues || e.quantity == Quantity::probability) && !e.reduction) {
        detail::field_error(source, p + ".reduction", "required for " + std::string(to_string(e.quantity)));
      }
      s.expectations.push_back(std::move(e));
    }
  }
  return s;
}

inline ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::usage_error, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

// ---------------------------------------------------------- serialization

namespace detail {

inline nlohmann::ordered_json ket_to_json(const KetSpec& k) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& r : k) a.push_back(nlohmann::ordered_json::array({r.mode, std::string(to_string(r.spin)), r.re, r.im}));
  return a;
}

inline nlohmann::ordered_json stages_to_json(const std::vector<StageSpec>& stages) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& s : stages) {
    auto o = nlohmann::ordered_json::object();
    if (s.slot) o["slot"] = *s.slot;
    auto kets = nlohmann::ordered_json::array();
    for (const auto& k : s.kets) kets.push_back(ket_to_json(k));
    o["kets"] = std::move(kets);
    a.push_back(std::move(o));
  }
  return a;
}

}  // namespace detail

/// Inverse of parse_scenario; doubles are written with round-trip precision.
inline nlohmann::ordered_json scenario_to_json(const ScenarioSpec& s) {
  using oj = nlohmann::ordered_json;
  oj doc;
  doc["name"] = s.name;
  if (!s.description.empty()) doc["description"] = s.description;
  doc["statistics"] = std::string(to_string(s.statistics));
  doc["modes"] = s.modes;
  oj state = oj::array();
  for (const auto& t : s.state) {
    oj term;
    term["coeff"] = oj::array({t.coeff.real(), t.coeff.imag()});
    oj kets = oj::array();
    for (const auto& k : t.kets) kets.push_back(detail::ket_to_json(k));
    term["kets"] = std::move(kets);
    state.push_back(std::move(term));
  }
  doc["state"] = std::move(state);
  oj plans = oj::array();
  for (const auto& p : s.plans) {
    oj pj;
    pj["label"] = p.label;
    if (!p.one_particle.empty()) pj["one_particle"] = detail::stages_to_json(p.one_particle);
    if (!p.two_particle.empty()) pj["two_particle"] = detail::stages_to_json(p.two_particle);
    plans.push_back(std::move(pj));
  }
  doc["plans"] = std::move(plans);
  oj exps = oj::array();
  for (const auto& e : s.expectations) {
    oj ej;
    ej["quantity"] = std::string(to_string(e.quantity));
    if (!e.plan.empty()) ej["plan"] = e.plan;
    if (e.reduction) ej["reduction"] = std::string(to_string(*e.reduction));
    std::visit([&](const auto& v) { ej["value"] = v; }, e.value);
    ej["tolerance"] = e.tolerance;
    exps.push_back(std::move(ej));
  }
  doc["expectations"] = std::move(exps);
  return doc;
}

// ---------------------------------------------------------------- building

/// A validated scenario turned into library objects.
struct BuiltScenario {
  BasisPtr basis;
  std::optional<ParticleState> identical;  // boson / fermion
  std::optional<LabeledState> labeled;     // distinguishable
  std::vector<TracePlan> plans;
  std::vector<SlotTracePlan> slot_plans;
  double input_norm = 0.0;
};

namespace detail {

[[noreturn]] inline void invalid(const ScenarioSpec& s, const std::string& path, const std::string& what) {
  throw Error(ErrorCode::validation_error, "scenario '" + s.name + "': " + path + ": " + what);
}

inline SingleParticleKet build_ket(const ScenarioSpec& s, const BasisPtr& basis, const KetSpec& k, const std::string& path) {
  auto out = SingleParticleKet::zero(basis);
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto& r = k[i];
    if (!basis->find_mode(r.mode)) invalid(s, path + "[" + std::to_string(i) + "]", "unknown mode '" + r.mode + "'");
    if (!std::isfinite(r.re) || !std::isfinite(r.im)) invalid(s, path + "[" + std::to_string(i) + "]", "non-finite amplitude");
    out += SingleParticleKet::unit(basis, basis->index_of(r.mode, r.spin)) * cplx(r.re, r.im);
  }
  return out;
}

inline MeasurementBasis build_stage(const ScenarioSpec& s, const BasisPtr& basis, const StageSpec& st, const std::string& path) {
  std::vector<SingleParticleKet> kets;
  for (std::size_t k = 0; k < st.kets.size(); ++k)
    kets.push_back(build_ket(s, basis, st.kets[k], path + ".kets[" + std::to_string(k) + "]"));
  try {
    return MeasurementBasis(std::move(kets));
  } catch (const Error& e) {
    invalid(s, path, e.message());
  }
}

}  // namespace detail

inline BuiltScenario build_scenario(const ScenarioSpec& s) {
  BuiltScenario out;
  try {
    out.basis = make_basis(s.modes);
  } catch (const Error& e) {
    detail::invalid(s, "modes", e.message());
  }
  const bool dist = s.statistics == ScenarioStatistics::distinguishable;
  const std::size_t n = s.state.front().kets.size();
  if (n == 0) detail::invalid(s, "state[0].kets", "a term needs at least one particle");

  std::vector<ElementaryState> terms;
  for (std::size_t t = 0; t < s.state.size(); ++t) {
    const std::string p = "state[" + std::to_string(t) + "]";
    if (s.state[t].kets.size() != n) detail::invalid(s, p, "all terms must have the same number of particles");
    std::vector<SingleParticleKet> kets;
    for (std::size_t k = 0; k < n; ++k)
      kets.push_back(detail::build_ket(s, out.basis, s.state[t].kets[k], p + ".kets[" + std::to_string(k) + "]"));
    terms.emplace_back(s.state[t].coeff, std::move(kets));
  }

  try {
    if (dist) {
      ParticleState as_list(Statistics::boson, terms);
      LabeledState l = labeled_product(as_list);
      out.input_norm = std::sqrt(l.norm_squared());
      if (!(l.norm_squared() > kNullNormTol)) throw Error(ErrorCode::null_state, "state has zero norm");
      out.labeled = LabeledState(l.basis(), l.particles(), l.amps() / out.input_norm);
    } else {
      ParticleState phi(s.statistics == ScenarioStatistics::boson ? Statistics::boson : Statistics::fermion, terms);
      out.input_norm = std::sqrt(std::max(norm_squared(phi), 0.0));
      out.identical = normalize(phi);
    }
  } catch (const Error& e) {
    throw Error(e.code(), "scenario '" + s.name + "': " + e.message());
  }

  for (std::size_t i = 0; i < s.plans.size(); ++i) {
    const auto& pl = s.plans[i];
    const std::string p = "plans[" + std::to_string(i) + "]";
    auto stages = [&](const std::vector<StageSpec>& st, const char* which) {
      std::vector<SlotBasisPlan> slotted;
      std::vector<MeasurementBasis> plain;
      for (std::size_t k = 0; k < st.size(); ++k) {
        const std::string sp = p + "." + which + "[" + std::to_string(k) + "]";
        MeasurementBasis b = detail::build_stage(s, out.basis, st[k], sp);
        if (dist) {
          if (!st[k].slot) detail::invalid(s, sp, "distinguishable stages need a slot");
          if (*st[k].slot > n) detail::invalid(s, sp + ".slot", "slot out of range");
          slotted.push_back(SlotBasisPlan{*st[k].slot, std::move(b)});
        } else {
          if (st[k].slot) detail::invalid(s, sp + ".slot", "identical particles cannot be addressed by slot");
          plain.push_back(std::move(b));
        }
      }
      return std::make_pair(std::move(slotted), std::move(plain));
    };
    auto [one_s, one_p] = stages(pl.one_particle, "one_particle");
    auto [two_s, two_p] = stages(pl.two_particle, "two_particle");
    if (dist) {
      out.slot_plans.push_back(SlotTracePlan{pl.label, std::move(one_s), std::move(two_s)});
    } else {
      out.plans.push_back(TracePlan{pl.label, std::move(one_p), std::move(two_p)});
    }
  }
  return out;
}

}  // namespace nsa

#endif  // NSA_SCENARIO_HPP
