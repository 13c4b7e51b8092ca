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

#ifndef NSA_STATE_HPP
#define NSA_STATE_HPP

// Label-free N-particle states. An elementary state is a list of
// single-particle kets, not a tensor product: overlaps are the permanent
// (bosons) or determinant (fermions) of the single-particle overlap matrix,
// and list order only matters up to the exchange sign.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nsa/hilbert.hpp"
#include "nsa/permanent.hpp"

namespace nsa {

enum class Statistics { boson, fermion };

/// Exchange sign η.
inline int eta(Statistics s) noexcept { return s == Statistics::boson ? 1 : -1; }

inline std::string_view to_string(Statistics s) { return s == Statistics::boson ? "boson" : "fermion"; }

class ElementaryState {
 public:
  ElementaryState(cplx coeff, std::vector<SingleParticleKet> kets)
      : coeff_(coeff), kets_(std::move(kets)) {
    if (kets_.empty()) {
      throw Error(ErrorCode::invalid_argument, "use ElementaryState::vacuum for zero particles");
    }
    basis_ = kets_.front().basis();
    for (const auto& k : kets_) kets_.front().check_same(k);
  }

  /// The zero-particle state with amplitude `coeff`; appears after removing
  /// the last particle.
  static ElementaryState vacuum(BasisPtr basis, cplx coeff = 1.0) {
    ElementaryState e;
    e.basis_ = std::move(basis);
    e.coeff_ = coeff;
    return e;
  }

  cplx coeff() const noexcept { return coeff_; }
  void set_coeff(cplx c) noexcept { coeff_ = c; }
  const std::vector<SingleParticleKet>& kets() const noexcept { return kets_; }
  std::size_t size() const noexcept { return kets_.size(); }
  const BasisPtr& basis() const noexcept { return basis_; }

  /// Copy with entry `i` dropped and coefficient `c`.
  ElementaryState without(std::size_t i, cplx c) const {
    ElementaryState e;
    e.basis_ = basis_;
    e.coeff_ = c;
    e.kets_.reserve(kets_.size() - 1);
    for (std::size_t j = 0; j < kets_.size(); ++j)
      if (j != i) e.kets_.push_back(kets_[j]);
    return e;
  }

  ElementaryState with_swapped(std::size_t i, std::size_t j) const {
    ElementaryState e = *this;
    std::swap(e.kets_.at(i), e.kets_.at(j));
    return e;
  }

 private:
  ElementaryState() = default;
  friend class ParticleState;
  friend ElementaryState canonical_form(const ElementaryState&, Statistics, bool&);

  BasisPtr basis_;
  cplx coeff_ = 1.0;
  std::vector<SingleParticleKet> kets_;
};

/// M_ij = ⟨bra_i|ket_j⟩.
inline CMatrix overlap_matrix(const ElementaryState& bra, const ElementaryState& ket) {
  const auto n = static_cast<Eigen::Index>(ket.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = sp_inner(bra.kets()[static_cast<std::size_t>(i)], ket.kets()[static_cast<std::size_t>(j)]);
  return m;
}

inline cplx overlap_elementary(const ElementaryState& bra, const ElementaryState& ket, Statistics stats) {
  if (bra.size() != ket.size()) {
    throw Error(ErrorCode::incompatible_states, "elementary states with " + std::to_string(bra.size()) +
                                                    " and " + std::to_string(ket.size()) + " particles");
  }
  if (!same_basis(bra.basis(), ket.basis())) {
    throw Error(ErrorCode::basis_mismatch, "elementary states over different single-particle bases");
  }
  const cplx amp = std::conj(bra.coeff()) * ket.coeff();
  if (ket.size() == 0) return amp;
  const CMatrix m = overlap_matrix(bra, ket);
  return amp * (stats == Statistics::boson ? permanent(m) : determinant(m));
}

/// Kets sorted into a fixed order with the coefficient picking up the exchange
/// sign. `vanishes` is set when a fermionic term repeats a ket exactly.
inline ElementaryState canonical_form(const ElementaryState& e, Statistics stats, bool& vanishes) {
  ElementaryState out = e;
  vanishes = false;
  auto less = [](const SingleParticleKet& a, const SingleParticleKet& b) {
    return std::lexicographical_compare(a.amps().begin(), a.amps().end(), b.amps().begin(), b.amps().end(),
                                        [](cplx x, cplx y) {
                                          if (x.real() != y.real()) return x.real() < y.real();
                                          return x.imag() < y.imag();
                                        });
  };
  // insertion sort so the parity is tracked swap by swap
  int parity = 0;
  auto& ks = out.kets_;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    for (std::size_t j = i; j > 0 && less(ks[j], ks[j - 1]); --j) {
      std::swap(ks[j], ks[j - 1]);
      ++parity;
    }
  }
  if (stats == Statistics::fermion) {
    if (parity % 2 == 1) out.coeff_ = -out.coeff_;
    for (std::size_t i = 1; i < ks.size(); ++i)
      if (ks[i] == ks[i - 1]) vanishes = true;
  }
  return out;
}

/// Linear combination of elementary states with a common particle number,
/// statistics and single-particle basis.
class ParticleState {
 public:
  ParticleState(Statistics stats, std::size_t n, BasisPtr basis, std::vector<ElementaryState> terms = {})
      : stats_(stats), n_(n), basis_(std::move(basis)), terms_(std::move(terms)) {
    if (!basis_) throw Error(ErrorCode::invalid_argument, "particle state without a basis");
    for (const auto& t : terms_) check_term(t);
  }

  ParticleState(Statistics stats, const std::vector<ElementaryState>& terms)
      : ParticleState(stats, require_nonempty(terms).front().size(), terms.front().basis(), terms) {}

  ParticleState(Statistics stats, ElementaryState term)
      : ParticleState(stats, std::vector<ElementaryState>{std::move(term)}) {}

  Statistics statistics() const noexcept { return stats_; }
  std::size_t particles() const noexcept { return n_; }
  const BasisPtr& basis() const noexcept { return basis_; }
  const std::vector<ElementaryState>& terms() const noexcept { return terms_; }

  void add_term(ElementaryState t) {
    check_term(t);
    terms_.push_back(std::move(t));
  }

  ParticleState& operator*=(cplx s) {
    for (auto& t : terms_) t.set_coeff(t.coeff() * s);
    return *this;
  }

  ParticleState& operator+=(const ParticleState& o) {
    check_compatible(o);
    for (const auto& t : o.terms_) terms_.push_back(t);
    return *this;
  }

  ParticleState& operator-=(const ParticleState& o) {
    check_compatible(o);
    for (auto t : o.terms_) {
      t.set_coeff(-t.coeff());
      terms_.push_back(std::move(t));
    }
    return *this;
  }

  friend ParticleState operator*(cplx s, ParticleState p) { return p *= s; }
  friend ParticleState operator+(ParticleState a, const ParticleState& b) { return a += b; }
  friend ParticleState operator-(ParticleState a, const ParticleState& b) { return a -= b; }

  void check_compatible(const ParticleState& o) const {
    if (o.stats_ != stats_) throw Error(ErrorCode::incompatible_states, "states with different statistics");
    if (o.n_ != n_) {
      throw Error(ErrorCode::incompatible_states, "states with " + std::to_string(n_) + " and " +
                                                      std::to_string(o.n_) + " particles");
    }
    if (!same_basis(basis_, o.basis_)) {
      throw Error(ErrorCode::basis_mismatch, "states over different single-particle bases");
    }
  }

 private:
  static const std::vector<ElementaryState>& require_nonempty(const std::vector<ElementaryState>& t) {
    if (t.empty()) throw Error(ErrorCode::invalid_argument, "particle state needs at least one term");
    return t;
  }

  void check_term(const ElementaryState& t) const {
    if (t.size() != n_) {
      throw Error(ErrorCode::incompatible_states, "term with " + std::to_string(t.size()) +
                                                      " particles in a " + std::to_string(n_) + "-particle state");
    }
    if (!same_basis(t.basis(), basis_)) throw Error(ErrorCode::basis_mismatch, "term over a different basis");
  }

  Statistics stats_;
  std::size_t n_;
  BasisPtr basis_;
  std::vector<ElementaryState> terms_;
};

inline cplx inner(const ParticleState& psi, const ParticleState& phi) {
  psi.check_compatible(phi);
  cplx s = 0.0;
  for (const auto& b : psi.terms())
    for (const auto& k : phi.terms()) s += overlap_elementary(b, k, psi.statistics());
  return s;
}

inline double norm_squared(const ParticleState& phi) { return inner(phi, phi).real(); }

/// Absolute floor below which a squared norm counts as zero.
inline constexpr double kNullNormTol = 1e-24;
/// Relative floor: ⟨φ|φ⟩ below this fraction of Σ_t |c_t|² Π_i ‖k_i‖² is
/// rounding residue of a cancelled state (e.g. proportional fermionic kets).
inline constexpr double kNullNormRelTol = 1e-12;

inline double natural_scale(const ParticleState& phi) {
  double s = 0.0;
  for (const auto& t : phi.terms()) {
    double p = std::norm(t.coeff());
    for (const auto& k : t.kets()) p *= k.norm_squared();
    s += p;
  }
  return s;
}

inline bool is_null(const ParticleState& phi) {
  const double n2 = norm_squared(phi);
  return !(n2 > kNullNormTol) || n2 <= kNullNormRelTol * natural_scale(phi);
}

inline ParticleState normalize(const ParticleState& phi) {
  const double n2 = norm_squared(phi);
  if (is_null(phi)) {
    throw Error(ErrorCode::null_state, "state has zero norm" +
                                           std::string(phi.statistics() == Statistics::fermion
                                                           ? " (Pauli exclusion: repeated fermionic ket)"
                                                           : ""));
  }
  return (1.0 / std::sqrt(n2)) * phi;
}

/// Merges terms whose ket lists agree up to a permutation, combining their
/// coefficients with the exchange sign; drops terms that cancel or vanish.
inline ParticleState canonicalize(const ParticleState& phi) {
  std::vector<ElementaryState> merged;
  for (const auto& t : phi.terms()) {
    bool vanishes = false;
    ElementaryState c = canonical_form(t, phi.statistics(), vanishes);
    if (vanishes || c.coeff() == cplx(0.0)) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const ElementaryState& m) { return m.kets() == c.kets(); });
    if (it == merged.end()) {
      merged.push_back(std::move(c));
    } else {
      it->set_coeff(it->coeff() + c.coeff());
    }
  }
  std::erase_if(merged, [](const ElementaryState& m) { return m.coeff() == cplx(0.0); });
  return ParticleState(phi.statistics(), phi.particles(), phi.basis(), std::move(merged));
}

/// Sign picked up when removing the i-th (0-based) listed particle.
inline int removal_sign(Statistics stats, std::size_t i) noexcept {
#ifdef NSA_MUTATE_FERMION_REMOVAL_SIGN
  (void)stats;
  (void)i;
  return 1;
#else
  return (stats == Statistics::fermion && i % 2 == 1) ? -1 : 1;
#endif
}

/// ⟨meas| applied to an N-particle state: Σ_i η^(i) ⟨meas|ket_i⟩ × (term
/// without entry i), 0-based i. The result has N−1 particles.
inline ParticleState project_single(const SingleParticleKet& meas, const ParticleState& phi) {
  if (phi.particles() == 0) throw Error(ErrorCode::empty_state, "cannot remove a particle from the vacuum");
  if (!same_basis(meas.basis(), phi.basis())) {
    throw Error(ErrorCode::basis_mismatch, "measurement ket over a different basis");
  }
  ParticleState out(phi.statistics(), phi.particles() - 1, phi.basis());
  for (const auto& t : phi.terms()) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const cplx amp = sp_inner(meas, t.kets()[i]);
      if (amp == cplx(0.0)) continue;
      const cplx c = t.coeff() * amp * static_cast<double>(removal_sign(phi.statistics(), i));
      if (t.size() == 1) {
        out.add_term(ElementaryState::vacuum(phi.basis(), c));
      } else {
        out.add_term(t.without(i, c));
      }
    }
  }
  return canonicalize(out);
}

}  // namespace nsa

#endif  // NSA_STATE_HPP
