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

#ifndef NSA_ENTANGLEMENT_HPP
#define NSA_ENTANGLEMENT_HPP

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsa/reduction.hpp"

namespace nsa {

/// Entropies above this (bits) count as mixed.
inline constexpr double kMixedEntropyThreshold = 1e-6;
inline constexpr double kSpectrumSumTol = 1e-9;
inline constexpr double kReconstructionTol = 1e-9;

struct Spectrum {
  std::vector<double> eigenvalues;  // descending, clamped to [0, 1]
  CMatrix eigenvectors;             // column i belongs to eigenvalues[i]
};

inline Spectrum eigenvalues_hermitian(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::numerical, "Hermitian eigensolver failed");

  const auto& vals = solver.eigenvalues();  // ascending
  const auto& vecs = solver.eigenvectors();
  const Eigen::Index d = vals.size();

  const CMatrix rebuilt = vecs * vals.cast<cplx>().asDiagonal() * vecs.adjoint();
  if (d > 0 && (rebuilt - rho.matrix()).cwiseAbs().maxCoeff() > kReconstructionTol) {
    throw Error(ErrorCode::numerical, "eigendecomposition does not reconstruct the matrix");
  }

  Spectrum s;
  s.eigenvectors.resize(d, d);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index src = d - 1 - i;
    double lambda = vals(src);
    if (lambda < -kPsdTol) {
      throw Error(ErrorCode::not_psd, "density matrix has eigenvalue " + std::to_string(lambda));
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    s.eigenvalues.push_back(lambda);
    s.eigenvectors.col(i) = vecs.col(src);
    sum += lambda;
  }
  if (std::abs(sum - 1.0) > kSpectrumSumTol) {
    throw Error(ErrorCode::numerical, "spectrum sums to " + std::to_string(sum));
  }
  return s;
}

/// -Σ λ log₂ λ with 0 log 0 = 0.
inline double entropy_bits(const Spectrum& s) {
  double h = 0.0;
  for (double l : s.eigenvalues)
    if (l > 0.0) h -= l * std::log2(l);
  return std::max(h, 0.0);
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return entropy_bits(eigenvalues_hermitian(rho)); }

/// Tr ρ².
inline double purity(const DensityMatrix& rho) {
  // ρ Hermitian: Tr ρ² = Σ |ρ_ij|²
  return rho.matrix().cwiseAbs2().sum();
}

/// ‖P v‖² where P projects onto the eigenspace of all eigenvalues within
/// `tol` of `eigenvalue`; with degenerate spectra this is the meaningful
/// notion of "v is an eigenvector".
inline double eigenspace_overlap(const Spectrum& s, const CVector& v, double eigenvalue, double tol = 1e-9) {
  double w = 0.0;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    if (std::abs(s.eigenvalues[i] - eigenvalue) > tol) continue;
    w += std::norm(s.eigenvectors.col(static_cast<Eigen::Index>(i)).dot(v));
  }
  return w;
}

/// Uniform spectrum on its support with S = log₂(support size).
inline bool maximally_mixed_on_support(const Spectrum& s, double tol = 1e-9) {
  std::vector<double> support;
  for (double l : s.eigenvalues)
    if (l > tol) support.push_back(l);
  if (support.size() < 2) return false;
  const double u = 1.0 / static_cast<double>(support.size());
  for (double l : support)
    if (std::abs(l - u) > tol) return false;
  return std::abs(entropy_bits(s) - std::log2(static_cast<double>(support.size()))) <= tol;
}

struct ReductionSummary {
  DensityMatrix rho;
  Spectrum spectrum;
  double entropy;
  double purity;
};

inline ReductionSummary summarize(DensityMatrix rho) {
  Spectrum s = eigenvalues_hermitian(rho);
  const double h = entropy_bits(s);
  const double p = purity(rho);
  return ReductionSummary{std::move(rho), std::move(s), h, p};
}

struct BipartitionReport {
  std::string label;
  std::optional<ReductionSummary> one;  // one-particle reduction
  std::optional<ReductionSummary> two;  // two-particle reduction
  bool mixed = false;

  std::optional<double> s_one() const { return one ? std::optional(one->entropy) : std::nullopt; }
  std::optional<double> s_two() const { return two ? std::optional(two->entropy) : std::nullopt; }
  std::optional<double> purity_one() const { return one ? std::optional(one->purity) : std::nullopt; }
  std::optional<double> purity_two() const { return two ? std::optional(two->purity) : std::nullopt; }
};

inline BipartitionReport make_bipartition_report(std::string label, std::optional<ReductionSummary> one,
                                                 std::optional<ReductionSummary> two) {
  BipartitionReport r{std::move(label), std::move(one), std::move(two), false};
  r.mixed = (r.one && r.one->entropy > kMixedEntropyThreshold) || (r.two && r.two->entropy > kMixedEntropyThreshold);
  return r;
}

struct EntanglementReport {
  std::vector<BipartitionReport> bipartitions;
  bool genuine_multipartite = false;
};

inline EntanglementReport make_entanglement_report(std::vector<BipartitionReport> parts) {
  EntanglementReport rep;
  rep.genuine_multipartite =
      !parts.empty() && std::all_of(parts.begin(), parts.end(), [](const BipartitionReport& b) { return b.mixed; });
  rep.bipartitions = std::move(parts);
  return rep;
}

/// Stages that reduce an N-particle state to its one-particle (N−1 stages)
/// and two-particle (N−2 stages) parts across one bipartition.
struct TracePlan {
  std::string label;
  std::vector<MeasurementBasis> one_particle;
  std::vector<MeasurementBasis> two_particle;
};

inline EntanglementReport analyze(const ParticleState& phi, std::span<const TracePlan> plans) {
  const std::size_t n = phi.particles();
  std::vector<BipartitionReport> parts;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto& p = plans[i];
    for (std::size_t j = 0; j < i; ++j)
      if (plans[j].label == p.label) throw Error(ErrorCode::validation_error, "duplicate plan label '" + p.label + "'");
    if (p.one_particle.empty() && p.two_particle.empty()) {
      throw Error(ErrorCode::validation_error, "plan '" + p.label + "' has no tracing stages");
    }
    if (!p.one_particle.empty() && p.one_particle.size() + 1 != n) {
      throw Error(ErrorCode::validation_error, "plan '" + p.label + "': one-particle reduction needs " +
                                                   std::to_string(n - 1) + " stages");
    }
    if (!p.two_particle.empty() && p.two_particle.size() + 2 != n) {
      throw Error(ErrorCode::validation_error, "plan '" + p.label + "': two-particle reduction needs " +
                                                   std::to_string(n >= 2 ? n - 2 : 0) + " stages");
    }
    std::optional<ReductionSummary> one, two;
    if (!p.one_particle.empty()) one = summarize(partial_trace_iterate(phi, p.one_particle));
    if (!p.two_particle.empty()) two = summarize(partial_trace_iterate(phi, p.two_particle));
    parts.push_back(make_bipartition_report(p.label, std::move(one), std::move(two)));
  }
  return make_entanglement_report(std::move(parts));
}

}  // namespace nsa

#endif  // NSA_ENTANGLEMENT_HPP
