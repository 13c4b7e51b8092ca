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

#ifndef NSA_ORACLE_HPP
#define NSA_ORACLE_HPP

// Labeled tensor-product ground truth.
//
// Two engines share the machinery here:
//  * the brute-force oracle, which (anti)symmetrizes label-free states over
//    all N! slot assignments and redoes inner products and traces in the
//    dim^N labeled space, then maps reductions back to occupation
//    coordinates through an explicit isometry;
//  * the distinguishable-particle comparator, where slot k *is* particle k
//    and traces act on a chosen slot.

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nsa/entanglement.hpp"

namespace nsa {

inline constexpr std::size_t kOracleMaxParticles = 5;
inline constexpr std::size_t kOracleMaxDim = 8;

inline void check_oracle_scale(std::size_t n, std::size_t dim) {
  if (n > kOracleMaxParticles || dim > kOracleMaxDim) {
    throw Error(ErrorCode::oracle_scale, "labeled oracle supports N <= " + std::to_string(kOracleMaxParticles) +
                                             " and dim <= " + std::to_string(kOracleMaxDim) + " (got N = " +
                                             std::to_string(n) + ", dim = " + std::to_string(dim) + ")");
  }
}

namespace detail {

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline CVector kron_kets(cplx coeff, const std::vector<const SingleParticleKet*>& slots, std::size_t dim) {
  CVector v(1);
  v(0) = coeff;
  for (const auto* k : slots) {
    CVector next(v.size() * static_cast<Eigen::Index>(dim));
    for (Eigen::Index a = 0; a < v.size(); ++a)
      for (std::size_t j = 0; j < dim; ++j)
        next(a * static_cast<Eigen::Index>(dim) + static_cast<Eigen::Index>(j)) = v(a) * (*k)[j];
    v = std::move(next);
  }
  return v;
}

}  // namespace detail

/// Amplitudes over the dim^N labeled basis; slot 1 is the most significant
/// digit of the flat index.
class LabeledState {
 public:
  LabeledState(BasisPtr basis, std::size_t n, CVector amps) : basis_(std::move(basis)), n_(n), amps_(std::move(amps)) {
    check_oracle_scale(n_, basis_->dim());
    if (static_cast<std::size_t>(amps_.size()) != detail::ipow(basis_->dim(), n_)) {
      throw Error(ErrorCode::invalid_argument, "labeled amplitude vector has the wrong length");
    }
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  std::size_t particles() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_->dim(); }
  const CVector& amps() const noexcept { return amps_; }
  double norm_squared() const { return amps_.squaredNorm(); }

  /// Copy with slots i and j (0-based) exchanged.
  LabeledState with_slots_swapped(std::size_t i, std::size_t j) const {
    const std::size_t d = dim();
    CVector out(amps_.size());
    std::vector<std::size_t> digits(n_);
    for (Eigen::Index flat = 0; flat < amps_.size(); ++flat) {
      auto rest = static_cast<std::size_t>(flat);
      for (std::size_t s = n_; s-- > 0;) {
        digits[s] = rest % d;
        rest /= d;
      }
      std::swap(digits[i], digits[j]);
      std::size_t target = 0;
      for (auto dg : digits) target = target * d + dg;
      out(static_cast<Eigen::Index>(target)) = amps_(flat);
    }
    return LabeledState(basis_, n_, std::move(out));
  }

 private:
  BasisPtr basis_;
  std::size_t n_;
  CVector amps_;
};

inline cplx labeled_inner(const LabeledState& a, const LabeledState& b) {
  if (a.particles() != b.particles() || !same_basis(a.basis(), b.basis())) {
    throw Error(ErrorCode::incompatible_states, "labeled states live in different spaces");
  }
  return a.amps().dot(b.amps());
}

/// Σ_P η^P coeff ⊗_i ket_{P(i)}, unnormalized.
inline LabeledState symmetrize(const ElementaryState& e, Statistics stats) {
  const std::size_t n = e.size();
  const std::size_t d = e.basis()->dim();
  check_oracle_scale(n, d);
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(detail::ipow(d, n)));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const double sign = (stats == Statistics::fermion && inversions % 2 == 1) ? -1.0 : 1.0;
    std::vector<const SingleParticleKet*> slots;
    for (auto p : perm) slots.push_back(&e.kets()[p]);
    acc += sign * detail::kron_kets(e.coeff(), slots, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return LabeledState(e.basis(), n, std::move(acc));
}

inline LabeledState symmetrize(const ParticleState& phi) {
  const std::size_t d = phi.basis()->dim();
  check_oracle_scale(phi.particles(), d);
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(detail::ipow(d, phi.particles())));
  for (const auto& t : phi.terms()) acc += symmetrize(t, phi.statistics()).amps();
  return LabeledState(phi.basis(), phi.particles(), std::move(acc));
}

/// ⟨S(bra)|S(ket)⟩ in the labeled space; N! times the label-free overlap.
inline cplx oracle_inner(const ElementaryState& bra, const ElementaryState& ket, Statistics stats) {
  if (bra.size() != ket.size()) throw Error(ErrorCode::incompatible_states, "particle numbers differ");
  return labeled_inner(symmetrize(bra, stats), symmetrize(ket, stats));
}

/// Plain tensor product coeff × |k1⟩₁ ⊗ |k2⟩₂ ⊗ … (distinguishable particles).
inline LabeledState labeled_product(const ElementaryState& e) {
  const std::size_t d = e.basis()->dim();
  check_oracle_scale(e.size(), d);
  std::vector<const SingleParticleKet*> slots;
  for (const auto& k : e.kets()) slots.push_back(&k);
  return LabeledState(e.basis(), e.size(), detail::kron_kets(e.coeff(), slots, d));
}

/// Sum of labeled products of every term; statistics are ignored.
inline LabeledState labeled_product(const ParticleState& phi) {
  const std::size_t d = phi.basis()->dim();
  check_oracle_scale(phi.particles(), d);
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(detail::ipow(d, phi.particles())));
  for (const auto& t : phi.terms()) acc += labeled_product(t).amps();
  return LabeledState(phi.basis(), phi.particles(), std::move(acc));
}

/// Mixed labeled state over the surviving slots, kept as unnormalized pure
/// components: ρ ∝ Σ_c |v_c⟩⟨v_c|.
struct LabeledEnsemble {
  BasisPtr basis;
  std::vector<std::size_t> slots;  // surviving slot ids, 1-based, ascending
  std::vector<CVector> components;
  double prob = 1.0;

  std::size_t dim() const { return basis->dim(); }
  double weight() const {
    double w = 0.0;
    for (const auto& c : components) w += c.squaredNorm();
    return w;
  }
};

inline LabeledEnsemble to_ensemble(const LabeledState& s) {
  LabeledEnsemble e;
  e.basis = s.basis();
  e.slots.resize(s.particles());
  std::iota(e.slots.begin(), e.slots.end(), std::size_t{1});
  e.components.push_back(s.amps());
  return e;
}

/// Post-selects slot `slot` onto `basis` and renormalizes; prob multiplies in
/// the outcome probability.
inline LabeledEnsemble trace_slot(const LabeledEnsemble& in, std::size_t slot, const MeasurementBasis& basis) {
  if (!same_basis(in.basis, basis.basis())) {
    throw Error(ErrorCode::basis_mismatch, "slot basis and labeled state live in different spaces");
  }
  auto pos_it = std::find(in.slots.begin(), in.slots.end(), slot);
  if (pos_it == in.slots.end()) {
    throw Error(ErrorCode::validation_error, "slot " + std::to_string(slot) + " is not present");
  }
  const auto pos = static_cast<std::size_t>(pos_it - in.slots.begin());
  const std::size_t m = in.slots.size();
  const std::size_t d = in.dim();
  const std::size_t hi_n = detail::ipow(d, pos);
  const std::size_t lo_n = detail::ipow(d, m - 1 - pos);

  LabeledEnsemble out;
  out.basis = in.basis;
  out.slots = in.slots;
  out.slots.erase(out.slots.begin() + static_cast<std::ptrdiff_t>(pos));

  const double w_in = in.weight();
  double w_out = 0.0;
  for (const auto& v : in.components) {
    for (const auto& k : basis.kets()) {
      CVector r = CVector::Zero(static_cast<Eigen::Index>(hi_n * lo_n));
      for (std::size_t hi = 0; hi < hi_n; ++hi)
        for (std::size_t j = 0; j < d; ++j) {
          const cplx c = std::conj(k[j]);
          if (c == cplx(0.0)) continue;
          for (std::size_t lo = 0; lo < lo_n; ++lo)
            r(static_cast<Eigen::Index>(hi * lo_n + lo)) += c * v(static_cast<Eigen::Index>((hi * d + j) * lo_n + lo));
        }
      const double w = r.squaredNorm();
      if (w <= 1e-30) continue;
      w_out += w;
      out.components.push_back(std::move(r));
    }
  }
  const double p = w_in > 0.0 ? w_out / w_in : 0.0;
  if (p <= kZeroProbabilityTol) {
    throw Error(ErrorCode::zero_probability, "slot " + std::to_string(slot) + " measurement never fires");
  }
  const double scale = 1.0 / std::sqrt(w_out);
  for (auto& c : out.components) c *= scale;
  out.prob = in.prob * p;
  return out;
}

inline CMatrix labeled_density(const LabeledEnsemble& e) {
  const auto d = static_cast<Eigen::Index>(detail::ipow(e.dim(), e.slots.size()));
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& c : e.components) rho += c * c.adjoint();
  rho /= e.weight();
  return 0.5 * (rho + rho.adjoint());
}

inline std::vector<std::string> labeled_labels(const LabeledEnsemble& e) {
  const std::size_t d = e.dim();
  const std::size_t m = e.slots.size();
  std::vector<std::string> out;
  const std::size_t total = detail::ipow(d, m);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<std::size_t> digits(m);
    auto rest = flat;
    for (std::size_t s = m; s-- > 0;) {
      digits[s] = rest % d;
      rest /= d;
    }
    std::string l;
    for (std::size_t s = 0; s < m; ++s) {
      if (s) l += "|";
      l += std::to_string(e.slots[s]) + ":" + e.basis->label(digits[s]);
    }
    out.push_back(m == 0 ? "vac" : l);
  }
  return out;
}

/// Columns: occupation basis states as normalized (anti)symmetric labeled
/// vectors, S(e_j1…e_jM)/√(M! Π n!).
inline CMatrix occupation_isometry(const OccupationBasis& occ) {
  const std::size_t d = occ.basis()->dim();
  check_oracle_scale(occ.sector(), d);
  const auto rows = static_cast<Eigen::Index>(detail::ipow(d, occ.sector()));
  CMatrix v(rows, static_cast<Eigen::Index>(occ.size()));
  double fact = 1.0;
  for (std::size_t i = 2; i <= occ.sector(); ++i) fact *= static_cast<double>(i);
  for (std::size_t k = 0; k < occ.size(); ++k) {
    const ElementaryState b = occ.basis_state(k);
    CVector col;
    if (occ.sector() == 0) {
      col = CVector::Constant(1, b.coeff());
    } else {
      col = symmetrize(b, occ.statistics()).amps();
    }
    v.col(static_cast<Eigen::Index>(k)) = col / std::sqrt(fact);
  }
  return v;
}

namespace detail {

inline DensityMatrix to_occupation(const LabeledEnsemble& e, Statistics stats) {
  const OccupationBasis occ(e.basis, stats, e.slots.size());
  const CMatrix v = occupation_isometry(occ);
  const CMatrix rho_lab = labeled_density(e);
  CMatrix rho = v.adjoint() * rho_lab * v;
  // a reduction that leaks out of the (anti)symmetric subspace means the
  // two sides disagree on basis conventions
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-10) {
    throw Error(ErrorCode::numerical, "labeled reduction is not supported on the (anti)symmetric subspace");
  }
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(occ.sector(), occ.labels(), std::move(rho), e.prob);
}

}  // namespace detail

/// Brute-force counterpart of partial_trace_one. Exchange symmetry makes the
/// traced slot irrelevant, so slot 1 is used.
inline DensityMatrix oracle_trace(const ParticleState& phi, const MeasurementBasis& basis) {
  LabeledEnsemble e = trace_slot(to_ensemble(symmetrize(phi)), 1, basis);
  return detail::to_occupation(e, phi.statistics());
}

inline DensityMatrix oracle_trace_iterate(const ParticleState& phi, std::span<const MeasurementBasis> bases) {
  LabeledEnsemble e = to_ensemble(symmetrize(phi));
  for (const auto& b : bases) e = trace_slot(e, e.slots.front(), b);
  return detail::to_occupation(e, phi.statistics());
}

/// Outcome probability of a labeled slot post-selection.
inline double oracle_probability(const ParticleState& phi, const MeasurementBasis& basis) {
  const LabeledEnsemble start = to_ensemble(symmetrize(phi));
  if (start.weight() <= kNullNormTol) throw Error(ErrorCode::null_state, "symmetrized state vanishes");
  // trace_slot refuses zero probability; the predicate form should not
  try {
    return trace_slot(start, 1, basis).prob;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::zero_probability) return 0.0;
    throw;
  }
}

/// oracle_trace re-expressed in the labeled space itself, for callers that
/// want the raw (N−1)-slot matrix.
inline CMatrix oracle_labeled_reduction(const ParticleState& phi, const MeasurementBasis& basis) {
  return labeled_density(trace_slot(to_ensemble(symmetrize(phi)), 1, basis));
}

// ----- distinguishable comparator -----

struct SlotBasisPlan {
  std::size_t slot;  // 1-based particle label
  MeasurementBasis basis;
};

inline DensityMatrix distinguishable_trace_iterate(const LabeledState& phi, std::span<const SlotBasisPlan> plan) {
  if (plan.empty()) throw Error(ErrorCode::invalid_argument, "no slot traces given");
  if (phi.norm_squared() <= kNullNormTol) throw Error(ErrorCode::null_state, "labeled state has zero norm");
  LabeledEnsemble e = to_ensemble(phi);
  for (const auto& p : plan) e = trace_slot(e, p.slot, p.basis);
  return DensityMatrix(e.slots.size(), labeled_labels(e), labeled_density(e), e.prob);
}

inline DensityMatrix distinguishable_trace(const LabeledState& phi, const SlotBasisPlan& plan) {
  return distinguishable_trace_iterate(phi, std::span<const SlotBasisPlan>(&plan, 1));
}

struct SlotTracePlan {
  std::string label;
  std::vector<SlotBasisPlan> one_particle;
  std::vector<SlotBasisPlan> two_particle;
};

inline EntanglementReport analyze_distinguishable(const LabeledState& phi, std::span<const SlotTracePlan> plans) {
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
    if (!p.one_particle.empty()) one = summarize(distinguishable_trace_iterate(phi, p.one_particle));
    if (!p.two_particle.empty()) two = summarize(distinguishable_trace_iterate(phi, p.two_particle));
    parts.push_back(make_bipartition_report(p.label, std::move(one), std::move(two)));
  }
  return make_entanglement_report(std::move(parts));
}

}  // namespace nsa

#endif  // NSA_ORACLE_HPP
