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

#ifndef NSA_REFERENCE_VALUES_HPP
#define NSA_REFERENCE_VALUES_HPP

// Expected numbers and tolerances shared by the builtin scenarios and the
// acceptance suite.

#include <cmath>

namespace nsa::reference {

/// S = -(1/3)log₂(1/3) - (2/3)log₂(2/3) = log₂3 - 2/3 for three bosons in one mode.
inline const double kOverlapEntropy = std::log2(3.0) - 2.0 / 3.0;
inline constexpr double kOverlapMajorWeight = 2.0 / 3.0;
inline constexpr double kOverlapMinorWeight = 1.0 / 3.0;

inline constexpr double kEntropyTol = 1e-9;
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kPurityTol = 1e-10;
inline constexpr double kProbabilityTol = 1e-10;
inline constexpr double kOracleTol = 1e-10;
inline constexpr double kEigenvectorOverlapTol = 1e-9;
inline constexpr double kPauliNormTol = 1e-12;

/// Decimal 1/√2 used in scenario files.
inline constexpr double kInvSqrt2 = 0.7071067811865476;

}  // namespace nsa::reference

#endif  // NSA_REFERENCE_VALUES_HPP
