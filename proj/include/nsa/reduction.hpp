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

#ifndef NSA_REDUCTION_HPP
#define NSA_REDUCTION_HPP

// Partial traces of label-free states onto single-particle measurement sets.
//
// Removing one particle with outcome ψ_k maps φ to project_single(ψ_k, φ).
// Summed over a complete single-particle basis the squared norms add up to
// N‖φ‖², so outcome probabilities are ‖project_single(ψ_k, φ)‖² / (N‖φ‖²);
// this fixes prob = 1 for complete bases and is the same number a labeled
// slot-wise post-selection gives.

#include <Eigen/Eigenvalues>

#include <span>
#include <string>
#include <vector>

#include "nsa/occupation.hpp"

namespace nsa {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
/// Outcome probabilities at or below this are "never fires".
inline constexpr double kZeroProbabilityTol = 1e-12;

/// Orthonormal, possibly incomplete, set of single-particle measurement kets.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<SingleParticleKet> kets, double tol = kOrthonormalTol)
      : kets_(std::move(kets)) {
    if (kets_.empty()) throw Error(ErrorCode::validation_error, "measurement basis is empty");
    for (const auto& k : kets_) kets_.front().check_same(k);
    if (kets_.size() > kets_.front().dim()) {
      throw Error(ErrorCode::validation_error, "measurement basis has more kets than the space dimension");
    }
    if (auto bad = first_non_orthonormal_pair(kets_, tol)) {
      throw Error(ErrorCode::validation_error,
                  "measurement kets " + std::to_string(bad->first) + " and " + std::to_string(bad->second) +
                      " are not orthonormal (|<i|j> - delta_ij| = " +
                      std::to_string(std::abs(sp_inner(kets_[bad->first], kets_[bad->second]) -
                                              cplx(bad->first == bad->second ? 1.0 : 0.0))) +
                      ")");
    }
  }

  /// All 2·modes canonical kets.
  static MeasurementBasis complete(const BasisPtr& basis) {
    std::vector<SingleParticleKet> k;
    for (std::size_t j = 0; j < basis->dim(); ++j) k.push_back(SingleParticleKet::unit(basis, j));
    return MeasurementBasis(std::move(k));
  }

  /// {mode↑, mode↓}: a measurement localized in one region.
  static MeasurementBasis local(const BasisPtr& basis, std::string_view mode) {
    return MeasurementBasis({ket(basis, mode, Spin::up), ket(basis, mode, Spin::down)});
  }

  const std::vector<SingleParticleKet>& kets() const noexcept { return kets_; }
  std::size_t size() const noexcept { return kets_.size(); }
  bool complete() const noexcept { return kets_.size() == kets_.front().dim(); }
  const BasisPtr& basis() const noexcept { return kets_.front().basis(); }

 private:
  std::vector<SingleParticleKet> kets_;
};

/// Reduced density matrix with the labels of its basis states and the
/// probability consumed to bring its trace to one.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t sector, std::vector<std::string> labels, CMatrix mat, double prob)
      : sector_(sector), labels_(std::move(labels)), mat_(std::move(mat)), prob_(prob) {
    if (mat_.rows() != mat_.cols() || static_cast<std::size_t>(mat_.rows()) != labels_.size()) {
      throw Error(ErrorCode::invalid_argument, "density matrix shape does not match its labels");
    }
    const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
      throw Error(ErrorCode::numerical, "density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const cplx tr = mat_.trace();
    if (std::abs(tr - cplx(1.0)) > kTraceTol) {
      throw Error(ErrorCode::numerical, "density matrix trace is " + std::to_string(tr.real()));
    }
  }

  std::size_t sector() const noexcept { return sector_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const CMatrix& matrix() const noexcept { return mat_; }
  double prob() const noexcept { return prob_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return mat_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw Error(ErrorCode::invalid_argument, "no basis state labeled '" + std::string(label) + "'");
  }

 private:
  std::size_t sector_;
  std::vector<std::string> labels_;
  CMatrix mat_;
  double prob_;
};

/// One pure component of a mixed intermediate state.
struct Branch {
  double weight;
  ParticleState state;  // normalized
};
using Ensemble = std::vector<Branch>;

namespace detail {

inline void require_same_space(const ParticleState& phi, const MeasurementBasis& basis) {
  if (!same_basis(phi.basis(), basis.basis())) {
    throw Error(ErrorCode::basis_mismatch, "measurement basis and state live in different spaces");
  }
}

// Outcomes below this squared norm carry no weight and are skipped.
inline constexpr double kNegligibleBranch = 1e-30;

}  // namespace detail

/// Result of removing one particle from every branch of an ensemble.
struct StageResult {
  Ensemble ensemble;
  double prob;  // total outcome probability of this stage
};

/// One tracing stage: every branch is projected with every measurement ket;
/// branch weights are the renormalized outcome probabilities.
inline StageResult trace_stage(const Ensemble& in, const MeasurementBasis& basis) {
  if (in.empty()) throw Error(ErrorCode::invalid_argument, "empty ensemble");
  const std::size_t n = in.front().state.particles();
  if (n == 0) throw Error(ErrorCode::empty_state, "cannot trace a particle out of the vacuum");

  Ensemble out;
  double total = 0.0;
  for (const auto& b : in) {
    detail::require_same_space(b.state, basis);
    const double n2_in = norm_squared(b.state);
    for (const auto& k : basis.kets()) {
      ParticleState proj = project_single(k, b.state);
      const double n2 = norm_squared(proj);
      if (n2 <= detail::kNegligibleBranch) continue;
      const double p = b.weight * n2 / (static_cast<double>(n) * n2_in);
      total += p;
      out.push_back(Branch{p, (1.0 / std::sqrt(n2)) * proj});
    }
  }
  if (total <= kZeroProbabilityTol) {
    throw Error(ErrorCode::zero_probability, "the measured subspace never fires on this state");
  }
  for (auto& b : out) b.weight /= total;
  return StageResult{std::move(out), total};
}

inline Ensemble pure_ensemble(const ParticleState& phi) { return {Branch{1.0, normalize(phi)}}; }

/// Σ_b w_b |b⟩⟨b| in the occupation basis of the ensemble's sector.
inline DensityMatrix density_from_ensemble(const Ensemble& ens, double prob) {
  const auto& first = ens.front().state;
  const OccupationBasis occ(first.basis(), first.statistics(), first.particles());
  const auto d = static_cast<Eigen::Index>(occ.size());
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& b : ens) {
    const CVector v = coords(b.state, occ);
    rho += b.weight * (v * v.adjoint());
  }
  // exact Hermitian symmetrization removes rounding asymmetry
  CMatrix herm = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(occ.sector(), occ.labels(), std::move(herm), prob);
}

/// 𝒩/N: probability that a measurement in `basis` registers a particle.
inline double probability_of(const ParticleState& phi, const MeasurementBasis& basis) {
  detail::require_same_space(phi, basis);
  if (phi.particles() == 0) throw Error(ErrorCode::empty_state, "the vacuum has no particle to measure");
  if (is_null(phi)) throw Error(ErrorCode::null_state, "probability of a zero-norm state");
  const double n2 = norm_squared(phi);
  double total = 0.0;
  for (const auto& k : basis.kets()) total += norm_squared(project_single(k, phi));
  return total / (static_cast<double>(phi.particles()) * n2);
}

inline DensityMatrix partial_trace_one(const ParticleState& phi, const MeasurementBasis& basis) {
  StageResult r = trace_stage(pure_ensemble(phi), basis);
  return density_from_ensemble(r.ensemble, r.prob);
}

/// Successive one-particle traces; the stage probabilities multiply.
inline DensityMatrix partial_trace_iterate(const ParticleState& phi, std::span<const MeasurementBasis> bases) {
  if (bases.empty()) throw Error(ErrorCode::invalid_argument, "no tracing stages given");
  if (bases.size() > phi.particles()) {
    throw Error(ErrorCode::empty_state, "more tracing stages than particles");
  }
  Ensemble ens = pure_ensemble(phi);
  double prob = 1.0;
  for (const auto& b : bases) {
    StageResult r = trace_stage(ens, b);
    ens = std::move(r.ensemble);
    prob *= r.prob;
  }
  return density_from_ensemble(ens, prob);
}

/// Pure-state density matrix in the occupation basis (no tracing).
inline DensityMatrix as_density(const ParticleState& phi) { return density_from_ensemble(pure_ensemble(phi), 1.0); }

}  // namespace nsa

#endif  // NSA_REDUCTION_HPP
