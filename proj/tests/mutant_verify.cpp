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

// Built with NSA_MUTATE_FERMION_REMOVAL_SIGN: the fermionic removal sign is
// forced to +1. Succeeds only if the verify suite notices.

#include <fmt/format.h>

#include <set>
#include <string>

#include "nsa/verify.hpp"

int main() {
  const nsa::VerifySummary s = nsa::run_verify();
  fmt::print("{}", nsa::format_verify(s));

  const std::set<std::string> must_fail{"fermion_removal_antisymmetry", "oracle_trace_equivalence"};
  std::set<std::string> caught;
  for (const auto& p : s.properties)
    if (!p.pass && must_fail.count(p.name)) caught.insert(p.name);

  for (const auto& name : must_fail)
    fmt::print("{}  mutant {} by {}\n", caught.count(name) ? "PASS" : "FAIL", caught.count(name) ? "caught" : "missed",
               name);
  return caught == must_fail ? 0 : 1;
}
