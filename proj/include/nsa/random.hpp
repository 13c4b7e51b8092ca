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

#ifndef NSA_RANDOM_HPP
#define NSA_RANDOM_HPP

// Seeded generators for property checks.

#include <Eigen/QR>

#include <random>
#include <vector>

#include "nsa/reduction.hpp"

namespace nsa::rnd {

using Engine = std::mt19937_64;

inline cplx gaussian(Engine& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  const double re = d(g);
  const double im = d(g);
  return {re, im};
}

inline std::size_t uniform_index(Engine& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline SingleParticleKet ket(const BasisPtr& basis, Engine& g) {
  std::vector<cplx> a(basis->dim());
  for (auto& x : a) x = gaussian(g);
  return sp_normalize(SingleParticleKet(basis, std::move(a)));
}

inline ElementaryState elementary(const BasisPtr& basis, std::size_t n, Engine& g) {
  std::vector<SingleParticleKet> kets;
  for (std::size_t i = 0; i < n; ++i) kets.push_back(ket(basis, g));
  return ElementaryState(gaussian(g), std::move(kets));
}

/// Normalized superposition of 1..max_terms random elementary states.
inline ParticleState state(const BasisPtr& basis, Statistics stats, std::size_t n, Engine& g, std::size_t max_terms = 3) {
  const std::size_t terms = uniform_index(g, 1, max_terms);
  ParticleState phi(stats, n, basis);
  for (std::size_t t = 0; t < terms; ++t) phi.add_term(elementary(basis, n, g));
  return normalize(phi);
}

/// First `count` columns of a Haar-ish unitary: an orthonormal set.
inline std::vector<SingleParticleKet> orthonormal_set(const BasisPtr& basis, std::size_t count, Engine& g) {
  const auto d = static_cast<Eigen::Index>(basis->dim());
  CMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = gaussian(g);
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(m).householderQ();
  std::vector<SingleParticleKet> out;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<cplx> a(basis->dim());
    for (Eigen::Index i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] = q(i, static_cast<Eigen::Index>(c));
    out.emplace_back(basis, std::move(a));
  }
  return out;
}

inline CMatrix unitary(std::size_t k, Engine& g) {
  const auto d = static_cast<Eigen::Index>(k);
  CMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = gaussian(g);
  return Eigen::HouseholderQR<CMatrix>(m).householderQ();
}

/// Kets remixed by a unitary: ψ'_a = Σ_b U_ba ψ_b.
inline std::vector<SingleParticleKet> remix(const std::vector<SingleParticleKet>& kets, const CMatrix& u) {
  std::vector<SingleParticleKet> out;
  for (std::size_t a = 0; a < kets.size(); ++a) {
    auto k = SingleParticleKet::zero(kets.front().basis());
    for (std::size_t b = 0; b < kets.size(); ++b) k += u(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) * kets[b];
    out.push_back(std::move(k));
  }
  return out;
}

/// Random full-rank-ish density matrix of size d with generic labels.
inline DensityMatrix density(std::size_t d, Engine& g, std::size_t rank = 0) {
  if (rank == 0) rank = d;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix a(n, static_cast<Eigen::Index>(rank));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = gaussian(g);
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
  return DensityMatrix(0, std::move(labels), std::move(rho), 1.0);
}

}  // namespace nsa::rnd

#endif  // NSA_RANDOM_HPP
