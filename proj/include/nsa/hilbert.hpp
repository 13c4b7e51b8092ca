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

#ifndef NSA_HILBERT_HPP
#define NSA_HILBERT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsa/error.hpp"

namespace nsa {

using cplx = std::complex<double>;

/// Default slack for orthonormality checks on measurement sets.
inline constexpr double kOrthonormalTol = 1e-10;

enum class Spin { up, down };

inline std::string_view to_string(Spin s) { return s == Spin::up ? "up" : "down"; }

inline Spin parse_spin(std::string_view text) {
  if (text == "up") return Spin::up;
  if (text == "down") return Spin::down;
  throw Error(ErrorCode::invalid_argument,
              "unknown spin '" + std::string(text) + "' (expected up|down)");
}

struct ModeId {
  std::string name;
  std::size_t index = 0;
};

/// Orthonormal frame of the single-particle space: spatial modes times
/// pseudospin, ordered mode-major with up before down.
class CanonicalBasis {
 public:
  explicit CanonicalBasis(std::vector<std::string> mode_names) {
    if (mode_names.empty()) {
      throw Error(ErrorCode::invalid_argument, "a single-particle space needs at least one mode");
    }
    for (std::size_t i = 0; i < mode_names.size(); ++i) {
      if (mode_names[i].empty()) {
        throw Error(ErrorCode::invalid_argument, "mode names must be nonempty");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (mode_names[i] == modes_[j].name) {
          throw Error(ErrorCode::invalid_argument, "duplicate mode name '" + mode_names[i] + "'");
        }
      }
      modes_.push_back(ModeId{std::move(mode_names[i]), i});
    }
  }

  std::size_t num_modes() const noexcept { return modes_.size(); }
  std::size_t dim() const noexcept { return 2 * modes_.size(); }
  const std::vector<ModeId>& modes() const noexcept { return modes_; }

  std::optional<std::size_t> find_mode(std::string_view name) const {
    for (const auto& m : modes_) {
      if (m.name == name) return m.index;
    }
    return std::nullopt;
  }

  std::size_t index_of(std::string_view mode, Spin spin) const {
    auto m = find_mode(mode);
    if (!m) throw Error(ErrorCode::invalid_argument, "unknown mode '" + std::string(mode) + "'");
    return 2 * *m + (spin == Spin::up ? 0 : 1);
  }

  const ModeId& mode_of(std::size_t j) const { return modes_.at(j / 2); }
  Spin spin_of(std::size_t j) const { return j % 2 == 0 ? Spin::up : Spin::down; }

  /// "A.up", "B.down", ...
  std::string label(std::size_t j) const {
    return mode_of(j).name + "." + std::string(to_string(spin_of(j)));
  }

  friend bool operator==(const CanonicalBasis& a, const CanonicalBasis& b) {
    if (a.modes_.size() != b.modes_.size()) return false;
    for (std::size_t i = 0; i < a.modes_.size(); ++i) {
      if (a.modes_[i].name != b.modes_[i].name) return false;
    }
    return true;
  }

 private:
  std::vector<ModeId> modes_;
};

using BasisPtr = std::shared_ptr<const CanonicalBasis>;

inline BasisPtr make_basis(std::vector<std::string> mode_names) {
  return std::make_shared<const CanonicalBasis>(std::move(mode_names));
}

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Coordinates of one qubit's spatial+internal state in a CanonicalBasis.
class SingleParticleKet {
 public:
  SingleParticleKet(BasisPtr basis, std::vector<cplx> amps)
      : basis_(std::move(basis)), amps_(std::move(amps)) {
    if (!basis_) throw Error(ErrorCode::invalid_argument, "ket without a basis");
    if (amps_.size() != basis_->dim()) {
      throw Error(ErrorCode::basis_mismatch, "ket has " + std::to_string(amps_.size()) +
                                                 " amplitudes, basis dimension is " +
                                                 std::to_string(basis_->dim()));
    }
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw Error(ErrorCode::invalid_argument, "ket amplitudes must be finite");
      }
    }
  }

  /// Zero vector over `basis`.
  static SingleParticleKet zero(BasisPtr basis) {
    const auto d = basis->dim();
    return SingleParticleKet(std::move(basis), std::vector<cplx>(d));
  }

  static SingleParticleKet unit(BasisPtr basis, std::size_t j) {
    auto k = zero(std::move(basis));
    k.amps_.at(j) = 1.0;
    return k;
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amps() const noexcept { return amps_; }
  cplx operator[](std::size_t j) const { return amps_[j]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  SingleParticleKet& operator+=(const SingleParticleKet& o) {
    check_same(o);
    for (std::size_t j = 0; j < amps_.size(); ++j) amps_[j] += o.amps_[j];
    return *this;
  }
  SingleParticleKet& operator-=(const SingleParticleKet& o) {
    check_same(o);
    for (std::size_t j = 0; j < amps_.size(); ++j) amps_[j] -= o.amps_[j];
    return *this;
  }
  SingleParticleKet& operator*=(cplx s) {
    for (auto& a : amps_) a *= s;
    return *this;
  }

  friend SingleParticleKet operator+(SingleParticleKet a, const SingleParticleKet& b) { return a += b; }
  friend SingleParticleKet operator-(SingleParticleKet a, const SingleParticleKet& b) { return a -= b; }
  friend SingleParticleKet operator*(cplx s, SingleParticleKet a) { return a *= s; }
  friend SingleParticleKet operator*(SingleParticleKet a, cplx s) { return a *= s; }

  /// Exact coordinate equality (used for term merging, not physics).
  friend bool operator==(const SingleParticleKet& a, const SingleParticleKet& b) {
    return same_basis(a.basis_, b.basis_) && a.amps_ == b.amps_;
  }

  void check_same(const SingleParticleKet& o) const {
    if (amps_.size() != o.amps_.size() || !same_basis(basis_, o.basis_)) {
      throw Error(ErrorCode::basis_mismatch, "kets are defined over different single-particle bases");
    }
  }

 private:
  BasisPtr basis_;
  std::vector<cplx> amps_;
};

/// Basis ket |mode spin>.
inline SingleParticleKet ket(const BasisPtr& basis, std::string_view mode, Spin spin) {
  return SingleParticleKet::unit(basis, basis->index_of(mode, spin));
}

/// ⟨bra|ket⟩, antilinear in the bra.
inline cplx sp_inner(const SingleParticleKet& bra, const SingleParticleKet& k) {
  bra.check_same(k);
  cplx s = 0.0;
  for (std::size_t j = 0; j < k.dim(); ++j) s += std::conj(bra[j]) * k[j];
  return s;
}

inline SingleParticleKet sp_normalize(const SingleParticleKet& k) {
  const double n2 = k.norm_squared();
  if (!(n2 > 0.0)) throw Error(ErrorCode::degenerate_ket, "cannot normalize the zero ket");
  return (1.0 / std::sqrt(n2)) * k;
}

/// Normalized equal-weight superposition of the same spin over several modes,
/// e.g. delocalized({"B","C"}, down) = (B+C)↓/√2.
inline SingleParticleKet delocalized(const BasisPtr& basis, std::initializer_list<std::string_view> modes,
                                     Spin spin) {
  auto k = SingleParticleKet::zero(basis);
  for (auto m : modes) k += ket(basis, m, spin);
  return sp_normalize(k);
}

inline bool is_orthonormal_set(std::span<const SingleParticleKet> kets, double tol = kOrthonormalTol) {
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = i; j < kets.size(); ++j) {
      const cplx target = i == j ? 1.0 : 0.0;
      if (std::abs(sp_inner(kets[i], kets[j]) - target) > tol) return false;
    }
  }
  return true;
}

/// First pair (i, j) violating orthonormality, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> first_non_orthonormal_pair(
    std::span<const SingleParticleKet> kets, double tol = kOrthonormalTol) {
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = i; j < kets.size(); ++j) {
      const cplx target = i == j ? 1.0 : 0.0;
      if (std::abs(sp_inner(kets[i], kets[j]) - target) > tol) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace nsa

#endif  // NSA_HILBERT_HPP
