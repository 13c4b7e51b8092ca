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

#include "nsa/permanent.hpp"

#include <gtest/gtest.h>

#include <random>

#include "nsa/error.hpp"

namespace nsa {
namespace {

using cd = std::complex<double>;

// Laplace expansion along the first row; sign = +1 gives the permanent.
cd expand(const CMatrix& m, int sign) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  cd total = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    CMatrix minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const double s = (sign < 0 && c % 2 == 1) ? -1.0 : 1.0;
    total += s * m(0, c) * expand(minor, sign);
  }
  return total;
}

CMatrix random_matrix(Eigen::Index n, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {d(g), d(g)};
  return m;
}

TEST(Permanent, SmallExactValues) {
  CMatrix ones = CMatrix::Ones(3, 3);
  EXPECT_NEAR(std::abs(permanent(ones) - cd(6.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(permanent(CMatrix::Identity(5, 5)) - cd(1.0)), 0.0, 1e-14);
  CMatrix two(2, 2);
  two << 1.0, 2.0, 3.0, 4.0;
  EXPECT_NEAR(std::abs(permanent(two) - cd(10.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(determinant(two) - cd(-2.0)), 0.0, 1e-14);
}

TEST(Permanent, EmptyMatrixIsOne) {
  EXPECT_EQ(permanent(CMatrix(0, 0)), cd(1.0));
  EXPECT_EQ(determinant(CMatrix(0, 0)), cd(1.0));
}

TEST(Permanent, AllPathsMatchLaplaceExpansion) {
  std::mt19937_64 g(3);
  for (Eigen::Index n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix m = random_matrix(n, g);
      const cd ref = expand(m, +1);
      const double scale = std::max(1.0, std::abs(ref));
      EXPECT_LT(std::abs(permanent_ryser(m) - ref) / scale, 1e-10) << "n=" << n;
      EXPECT_LT(std::abs(permanent(m) - ref) / scale, 1e-10) << "n=" << n;
      if (n <= 5) {
        EXPECT_LT(std::abs(permanent_naive(m) - ref) / scale, 1e-10) << "n=" << n;
      }
    }
  }
}

TEST(Determinant, AllPathsMatchLaplaceExpansion) {
  std::mt19937_64 g(4);
  for (Eigen::Index n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix m = random_matrix(n, g);
      const cd ref = expand(m, -1);
      const double scale = std::max(1.0, std::abs(ref));
      EXPECT_LT(std::abs(determinant_lu(m) - ref) / scale, 1e-10) << "n=" << n;
      EXPECT_LT(std::abs(determinant(m) - ref) / scale, 1e-10) << "n=" << n;
      if (n <= 5) {
        EXPECT_LT(std::abs(determinant_naive(m) - ref) / scale, 1e-10) << "n=" << n;
      }
    }
  }
}

TEST(Determinant, SingularMatrixVanishes) {
  CMatrix m(3, 3);
  m << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 5.0;
  EXPECT_LT(std::abs(determinant_lu(m)), 1e-14);
  EXPECT_LT(std::abs(determinant(m)), 1e-14);
}

TEST(Permanent, NonSquareRejected) {
  EXPECT_THROW(permanent(CMatrix(2, 3)), Error);
  EXPECT_THROW(determinant(CMatrix(3, 2)), Error);
}

}  // namespace
}  // namespace nsa
