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

#ifndef NSA_PERMANENT_HPP
#define NSA_PERMANENT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nsa/error.hpp"

namespace nsa {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Matrices up to this order are expanded as an explicit permutation sum.
inline constexpr Eigen::Index kNaiveExpansionMaxOrder = 4;

namespace detail {

inline void require_square(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::invalid_argument, "permanent/determinant of a non-square matrix");
  }
}

inline int permutation_sign(const std::vector<Eigen::Index>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// Σ_P sign(P)^k Π_i m(i, P(i)) with k = 0 (permanent) or 1 (determinant).
inline std::complex<double> leibniz(const CMatrix& m, bool signed_sum) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Eigen::Index{0});
  std::complex<double> sum = 0.0;
  do {
    std::complex<double> prod = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) prod *= m(i, p[static_cast<std::size_t>(i)]);
    if (signed_sum && permutation_sign(p) < 0) prod = -prod;
    sum += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

}  // namespace detail

inline std::complex<double> permanent_naive(const CMatrix& m) {
  detail::require_square(m);
  return detail::leibniz(m, false);
}

/// Ryser's inclusion-exclusion formula, walking column subsets in Gray-code
/// order so each step updates the row sums with a single column.
inline std::complex<double> permanent_ryser(const CMatrix& m) {
  detail::require_square(m);
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n > 30) throw Error(ErrorCode::invalid_argument, "permanent order too large for Ryser expansion");

  CVector row_sums = CVector::Zero(n);
  std::complex<double> total = 0.0;
  std::uint64_t gray_prev = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t flipped = gray ^ gray_prev;
    const auto col = static_cast<Eigen::Index>(std::countr_zero(flipped));
    if (gray & flipped) {
      row_sums += m.col(col);
    } else {
      row_sums -= m.col(col);
    }
    gray_prev = gray;

    std::complex<double> prod = row_sums.prod();
    // (-1)^{|S|}
    if (std::popcount(gray) % 2 == 1) prod = -prod;
    total += prod;
  }
  return n % 2 == 1 ? -total : total;
}

inline std::complex<double> permanent(const CMatrix& m) {
  detail::require_square(m);
  return m.rows() <= kNaiveExpansionMaxOrder ? permanent_naive(m) : permanent_ryser(m);
}

inline std::complex<double> determinant_naive(const CMatrix& m) {
  detail::require_square(m);
  return detail::leibniz(m, true);
}

/// Gaussian elimination with partial pivoting.
inline std::complex<double> determinant_lu(CMatrix a) {
  detail::require_square(a);
  const Eigen::Index n = a.rows();
  std::complex<double> det = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    for (Eigen::Index r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    if (a(pivot, c) == std::complex<double>(0.0)) return 0.0;
    if (pivot != c) {
      a.row(pivot).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const std::complex<double> f = a(r, c) / a(c, c);
      a.row(r).tail(n - c) -= f * a.row(c).tail(n - c);
    }
  }
  return det;
}

inline std::complex<double> determinant(const CMatrix& m) {
  detail::require_square(m);
  return m.rows() <= kNaiveExpansionMaxOrder ? determinant_naive(m) : determinant_lu(m);
}

}  // namespace nsa

#endif  // NSA_PERMANENT_HPP
