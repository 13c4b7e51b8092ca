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

// nsa-entangle: run builtin or file-defined scenarios and the oracle suite.
//
// Exit codes: 0 pass, 1 expectation failure, 2 input error, 3 internal or
// numerical error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "nsa/builtins.hpp"
#include "nsa/report.hpp"
#include "nsa/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitExpectation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

int exit_code_for(nsa::ErrorCode code) {
  switch (code) {
    case nsa::ErrorCode::not_psd:
    case nsa::ErrorCode::numerical: return kExitInternal;
    default: return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of identical qubits without particle labels"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List builtin scenarios");

  std::string name;
  std::string file;
  std::string format = "table";
  std::optional<double> tolerance;
  auto* run = app.add_subcommand("run", "Run a builtin scenario or a scenario file");
  run->add_option("name", name, "Builtin scenario name");
  run->add_option("--file", file, "Scenario file (JSON)");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "machine"}));
  run->add_option("--tolerance", tolerance, "Cap every expectation tolerance at T")->check(CLI::NonNegativeNumber);

  std::uint64_t seed = nsa::kDefaultVerifySeed;
  auto* verify = app.add_subcommand("verify", "Run the oracle equivalence and invariant properties");
  verify->add_option("--seed", seed, "Random seed");

  std::string export_name;
  auto* exp = app.add_subcommand("export", "Print a builtin scenario as a scenario file");
  exp->add_option("name", export_name, "Builtin scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : nsa::builtin_names()) {
        std::cout << n << "  " << nsa::builtin_scenario(n).description << "\n";
      }
      return kExitPass;
    }

    if (exp->parsed()) {
      std::cout << nsa::scenario_to_json(nsa::builtin_scenario(export_name)).dump(2) << "\n";
      return kExitPass;
    }

    if (verify->parsed()) {
      const nsa::VerifySummary s = nsa::run_verify(seed);
      std::cout << nsa::format_verify(s);
      return s.pass() ? kExitPass : kExitExpectation;
    }

    if (run->parsed()) {
      if (name.empty() == file.empty()) {
        std::cerr << "run: give exactly one of <name> or --file PATH\n";
        return kExitInput;
      }
      const nsa::ScenarioSpec spec = file.empty() ? nsa::builtin_scenario(name) : nsa::load_scenario_file(file);
      nsa::RunOptions opt;
      opt.tolerance_cap = tolerance;
      const nsa::ScenarioReport report = nsa::run_scenario(spec, opt);
      std::cout << (format == "machine" ? nsa::format_machine(report) : nsa::format_table(report));
      return report.pass ? kExitPass : kExitExpectation;
    }
  } catch (const nsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
