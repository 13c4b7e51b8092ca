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

#ifndef NSA_OCCUPATION_HPP
#define NSA_OCCUPATION_HPP

#include <cmath>
#include <string>
#include <vector>

#include "nsa/state.hpp"

namespace nsa {

/// Orthonormal occupation-number basis of the M-particle sector.
///
/// Entry k is stored as its sorted list of canonical indices j1 ≤ … ≤ jM
/// (strictly increasing for fermions); entries are in lexicographic order of
/// those lists. The normalized basis state is |e_j1,…,e_jM⟩ / √(Π n_j!).
class OccupationBasis {
 public:
  OccupationBasis(BasisPtr basis, Statistics stats, std::size_t sector)
      : basis_(std::move(basis)), stats_(stats), sector_(sector) {
    std::vector<std::size_t> current;
    enumerate(current, 0);
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  Statistics statistics() const noexcept { return stats_; }
  std::size_t sector() const noexcept { return sector_; }
  std::size_t size() const noexcept { return lists_.size(); }

  const std::vector<std::size_t>& indices(std::size_t k) const { return lists_.at(k); }

  std::vector<unsigned> occupation(std::size_t k) const {
    std::vector<unsigned> n(basis_->dim(), 0);
    for (auto j : lists_.at(k)) ++n[j];
    return n;
  }

  /// Position of a sorted index list, or size() when absent.
  std::size_t find(const std::vector<std::size_t>& sorted) const {
    auto it = std::lower_bound(lists_.begin(), lists_.end(), sorted);
    if (it == lists_.end() || *it != sorted) return lists_.size();
    return static_cast<std::size_t>(it - lists_.begin());
  }

  /// √(Π n_j!) of entry k.
  double multiplicity_norm(std::size_t k) const {
    double f = 1.0;
    for (auto n : occupation(k))
      for (unsigned i = 2; i <= n; ++i) f *= i;
    return std::sqrt(f);
  }

  /// "A.down^2,A.up"; "vac" for the empty sector.
  std::string label(std::size_t k) const {
    const auto& l = lists_.at(k);
    if (l.empty()) return "vac";
    std::string s;
    for (std::size_t i = 0; i < l.size();) {
      std::size_t r = i;
      while (r < l.size() && l[r] == l[i]) ++r;
      if (!s.empty()) s += ",";
      s += basis_->label(l[i]);
      if (r - i > 1) s += "^" + std::to_string(r - i);
      i = r;
    }
    return s;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) out.push_back(label(k));
    return out;
  }

  /// The normalized basis state of entry k as a label-free elementary state.
  ElementaryState basis_state(std::size_t k) const {
    const auto& l = lists_.at(k);
    const cplx c = 1.0 / multiplicity_norm(k);
    if (l.empty()) return ElementaryState::vacuum(basis_, c);
    std::vector<SingleParticleKet> kets;
    kets.reserve(l.size());
    for (auto j : l) kets.push_back(SingleParticleKet::unit(basis_, j));
    return ElementaryState(c, std::move(kets));
  }

 private:
  void enumerate(std::vector<std::size_t>& current, std::size_t start) {
    if (current.size() == sector_) {
      lists_.push_back(current);
      return;
    }
    for (std::size_t j = start; j < basis_->dim(); ++j) {
      current.push_back(j);
      enumerate(current, stats_ == Statistics::boson ? j : j + 1);
      current.pop_back();
    }
  }

  BasisPtr basis_;
  Statistics stats_;
  std::size_t sector_;
  std::vector<std::vector<std::size_t>> lists_;
};

/// Coordinates of `phi` in the occupation basis; the map is an isometry for
/// the label-free inner product.
inline CVector coords(const ParticleState& phi, const OccupationBasis& occ) {
  if (occ.sector() != phi.particles() || occ.statistics() != phi.statistics() ||
      !same_basis(occ.basis(), phi.basis())) {
    throw Error(ErrorCode::incompatible_states, "occupation basis does not match the state's sector");
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(occ.size()));
  for (std::size_t k = 0; k < occ.size(); ++k) {
    const ElementaryState b = occ.basis_state(k);
    cplx s = 0.0;
    for (const auto& t : phi.terms()) s += overlap_elementary(b, t, phi.statistics());
    v(static_cast<Eigen::Index>(k)) = s;
  }
  return v;
}

inline CVector coords(const ParticleState& phi) {
  return coords(phi, OccupationBasis(phi.basis(), phi.statistics(), phi.particles()));
}

/// Representation-independent equality: ‖a − b‖ < tol, measured in
/// occupation coordinates so that no cancellation goes through a square root.
inline bool approx_equal(const ParticleState& a, const ParticleState& b, double tol = 1e-10) {
  a.check_compatible(b);
  const OccupationBasis occ(a.basis(), a.statistics(), a.particles());
  return (coords(a, occ) - coords(b, occ)).norm() < tol;
}

}  // namespace nsa

#endif  // NSA_OCCUPATION_HPP
