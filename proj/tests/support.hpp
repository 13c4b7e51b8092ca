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

#ifndef NSA_TESTS_SUPPORT_HPP
#define NSA_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nsa/state.hpp"

namespace nsa::test {

inline const BasisPtr& abc() {
  static const BasisPtr b = make_basis({"A", "B", "C"});
  return b;
}

inline SingleParticleKet up(std::string_view mode) { return ket(abc(), mode, Spin::up); }
inline SingleParticleKet dn(std::string_view mode) { return ket(abc(), mode, Spin::down); }

inline ParticleState elementary(Statistics st, std::vector<SingleParticleKet> kets, cplx c = 1.0) {
  return ParticleState(st, ElementaryState(c, std::move(kets)));
}

/// |A↓,B↓,C↑⟩
inline ParticleState separated(Statistics st = Statistics::boson) {
  return elementary(st, {dn("A"), dn("B"), up("C")});
}

/// (|A↓,B↓,C↓⟩ + |A↑,B↑,C↑⟩)/√2
inline ParticleState ghz(Statistics st = Statistics::boson) {
  const double r = 1.0 / std::sqrt(2.0);
  return elementary(st, {dn("A"), dn("B"), dn("C")}, r) + elementary(st, {up("A"), up("B"), up("C")}, r);
}

/// (1/√2)|A↓,A↓,A↑⟩
inline ParticleState overlap_state() {
  return elementary(Statistics::boson, {dn("A"), dn("A"), up("A")}, 1.0 / std::sqrt(2.0));
}

}  // namespace nsa::test

#define EXPECT_NSA_ERROR(stmt, expected_code)                                              \
  do {                                                                                     \
    try {                                                                                  \
      (void)(stmt);                                                                        \
      ADD_FAILURE() << "expected " << ::nsa::to_string(expected_code) << " from " #stmt;   \
    } catch (const ::nsa::Error& err_) {                                                   \
      EXPECT_EQ(err_.code(), expected_code) << err_.what();                                \
    }                                                                                      \
  } while (0)

#endif  // NSA_TESTS_SUPPORT_HPP
