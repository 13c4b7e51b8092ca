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

#ifndef NSA_VERIFY_HPP
#define NSA_VERIFY_HPP

// Seeded property suite comparing the label-free engine with the labeled
// oracle and checking the algebraic invariants of every layer.

#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nsa/oracle.hpp"
#include "nsa/random.hpp"
#include "nsa/reference_values.hpp"

namespace nsa {

inline constexpr std::uint64_t kDefaultVerifySeed = 20190417;

struct PropertyResult {
  std::string name;
  std::size_t draws = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string failure;  // first exception text, if any
};

struct VerifySummary {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass; });
  }
};

namespace verify_detail {

using rnd::Engine;

struct Tracker {
  double max_error = 0.0;
  std::size_t draws = 0;
  bool violated = false;  // boolean predicates that failed outright
  void err(double e) { max_error = std::max(max_error, std::isnan(e) ? 1e300 : e); }
  void require(bool ok) {
    if (!ok) violated = true;
  }
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Σ_P η^P Π_i ⟨χ_i|φ_P(i)⟩ with the sum written out by hand.
inline cplx explicit_permutation_sum(const ElementaryState& bra, const ElementaryState& ket, Statistics stats) {
  const std::size_t n = ket.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  cplx total = 0.0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    cplx prod = (stats == Statistics::fermion && inv % 2) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= sp_inner(bra.kets()[i], ket.kets()[p[i]]);
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::conj(bra.coeff()) * ket.coeff() * total;
}

inline std::vector<MeasurementBasis> full_basis(const BasisPtr& b) { return {MeasurementBasis::complete(b)}; }

inline MeasurementBasis random_basis(const BasisPtr& b, Engine& g, std::size_t min = 1) {
  return MeasurementBasis(rnd::orthonormal_set(b, rnd::uniform_index(g, min, b->dim()), g));
}

inline Statistics pick(std::size_t i) { return i % 2 == 0 ? Statistics::boson : Statistics::fermion; }

using Body = std::function<void(Engine&, Tracker&)>;

struct Property {
  const char* name;
  double tolerance;
  Body body;
};

inline std::vector<Property> properties() {
  const BasisPtr basis = make_basis({"A", "B", "C"});
  std::vector<Property> ps;

  ps.push_back({"sp_inner_conjugate_symmetry", 1e-12, [basis](Engine& g, Tracker& t) {
                  for (int i = 0; i < 100; ++i, ++t.draws) {
                    auto x = rnd::ket(basis, g), y = rnd::ket(basis, g);
                    t.err(std::abs(sp_inner(x, y) - std::conj(sp_inner(y, x))));
                  }
                }});

  ps.push_back({"sp_inner_sesquilinearity", 1e-12, [basis](Engine& g, Tracker& t) {
                  for (int i = 0; i < 100; ++i, ++t.draws) {
                    auto x = rnd::ket(basis, g), y = rnd::ket(basis, g), z = rnd::ket(basis, g);
                    const cplx a = rnd::gaussian(g), b = rnd::gaussian(g);
                    t.err(std::abs(sp_inner(x, a * y + b * z) - (a * sp_inner(x, y) + b * sp_inner(x, z))));
                    t.err(std::abs(sp_inner(a * y + b * z, x) -
                                   (std::conj(a) * sp_inner(y, x) + std::conj(b) * sp_inner(z, x))));
                  }
                }});

  ps.push_back({"overlap_vs_permutation_sum", 1e-10, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 200; ++i, ++t.draws) {
                    const std::size_t n = 1 + i % 4;
                    auto a = rnd::elementary(basis, n, g), b = rnd::elementary(basis, n, g);
                    const auto st = pick(i / 4);
                    t.err(std::abs(overlap_elementary(a, b, st) - explicit_permutation_sum(a, b, st)));
                  }
                }});

  ps.push_back({"ryser_and_lu_vs_permutation_sum", 1e-10, [](Engine& g, Tracker& t) {
                  for (std::size_t n = 1; n <= 7; ++n)
                    for (int rep = 0; rep < 10; ++rep, ++t.draws) {
                      CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
                      for (Eigen::Index i = 0; i < m.rows(); ++i)
                        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rnd::gaussian(g) * 0.5;
                      const cplx pn = permanent_naive(m), dn = determinant_naive(m);
                      const double scale = std::max(1.0, std::abs(pn));
                      t.err(std::abs(permanent_ryser(m) - pn) / scale);
                      t.err(std::abs(determinant_lu(m) - dn) / std::max(1.0, std::abs(dn)));
                    }
                }});

  ps.push_back({"exchange_symmetry", 1e-10, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto a = rnd::elementary(basis, 3, g), b = rnd::elementary(basis, 3, g);
                    const std::size_t x = rnd::uniform_index(g, 0, 2);
                    const std::size_t y = (x + 1 + rnd::uniform_index(g, 0, 1)) % 3;
                    const cplx before = overlap_elementary(a, b, st);
                    const cplx after = overlap_elementary(a, b.with_swapped(x, y), st);
                    t.err(std::abs(after - static_cast<double>(eta(st)) * before));
                  }
                }});

  ps.push_back({"pauli_exclusion", reference::kPauliNormTol, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    auto k = rnd::ket(basis, g);
                    std::vector<SingleParticleKet> kets{k, rnd::ket(basis, g), rnd::gaussian(g) * k};
                    std::swap(kets[rnd::uniform_index(g, 0, 2)], kets[2]);
                    ParticleState phi(Statistics::fermion, ElementaryState(1.0, kets));
                    t.err(std::abs(norm_squared(phi)));
                    bool raised = false;
                    try {
                      (void)normalize(phi);
                    } catch (const Error& e) {
                      raised = e.code() == ErrorCode::null_state;
                    }
                    t.require(raised);
                  }
                }});

  ps.push_back({"oracle_inner_ratio", reference::kOracleTol, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 200; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto a = rnd::elementary(basis, 3, g), b = rnd::elementary(basis, 3, g);
                    t.err(std::abs(oracle_inner(a, b, st) - 6.0 * overlap_elementary(a, b, st)));
                  }
                }});

  ps.push_back({"coords_isometry", 1e-10, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto a = rnd::state(basis, st, 3, g), b = rnd::state(basis, st, 3, g);
                    t.err(std::abs(coords(a).dot(coords(b)) - inner(a, b)));
                  }
                }});

  ps.push_back({"oracle_trace_equivalence", reference::kOracleTol, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 200; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto phi = rnd::state(basis, st, 3, g);
                    auto mb = random_basis(basis, g);
                    const DensityMatrix a = partial_trace_one(phi, mb);
                    const DensityMatrix b = oracle_trace(phi, mb);
                    t.err(max_abs(a.matrix() - b.matrix()));
                    t.err(std::abs(a.prob() - b.prob()));
                  }
                }});

  ps.push_back({"fermion_removal_antisymmetry", 1e-10, [basis](Engine& g, Tracker& t) {
                  // (⟨ψ| ⊗ 1) S(φ) must equal S(project_single(ψ, φ)) as labeled vectors
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    auto phi = rnd::state(basis, Statistics::fermion, 3, g);
                    auto psi = rnd::ket(basis, g);
                    const LabeledEnsemble sliced =
                        trace_slot(to_ensemble(symmetrize(phi)), 1, MeasurementBasis({psi}));
                    const ParticleState proj = project_single(psi, phi);
                    const CVector direct = symmetrize(proj).amps();
                    // trace_slot renormalizes; undo it via the known weights
                    const double w = std::sqrt(symmetrize(phi).norm_squared() * sliced.prob);
                    t.err((sliced.components.front() * w - direct).cwiseAbs().maxCoeff());
                  }
                }});

  ps.push_back({"oracle_trace_iterate_equivalence", reference::kOracleTol, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto phi = rnd::state(basis, st, 3, g);
                    std::vector<MeasurementBasis> stages{random_basis(basis, g, 2), random_basis(basis, g, 2)};
                    const DensityMatrix a = partial_trace_iterate(phi, stages);
                    const DensityMatrix b = oracle_trace_iterate(phi, stages);
                    t.err(max_abs(a.matrix() - b.matrix()));
                    t.err(std::abs(a.prob() - b.prob()));
                  }
                }});

  ps.push_back({"projection_gauge_constant", 1e-10, [basis](Engine& g, Tracker& t) {
                  // ‖project_single(ψ, φ)‖² / oracle outcome probability = N for every draw
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto phi = rnd::state(basis, st, 3, g);
                    auto psi = rnd::ket(basis, g);
                    const double p = oracle_probability(phi, MeasurementBasis({psi}));
                    t.err(std::abs(norm_squared(project_single(psi, phi)) / p - 3.0));
                  }
                }});

  ps.push_back({"complete_basis_probability", reference::kProbabilityTol, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    const std::size_t n = 1 + i % 3;
                    auto phi = rnd::state(basis, st, n, g);
                    auto full = MeasurementBasis(rnd::orthonormal_set(basis, basis->dim(), g));
                    t.err(std::abs(probability_of(phi, full) - 1.0));
                    t.err(std::abs(probability_of(phi, MeasurementBasis::complete(basis)) - 1.0));
                  }
                }});

  ps.push_back({"basis_union_additivity", reference::kProbabilityTol, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto phi = rnd::state(basis, st, 3, g);
                    auto kets = rnd::orthonormal_set(basis, rnd::uniform_index(g, 2, basis->dim()), g);
                    const std::size_t cut = rnd::uniform_index(g, 1, kets.size() - 1);
                    std::vector<SingleParticleKet> lo(kets.begin(), kets.begin() + static_cast<std::ptrdiff_t>(cut));
                    std::vector<SingleParticleKet> hi(kets.begin() + static_cast<std::ptrdiff_t>(cut), kets.end());
                    const double whole = probability_of(phi, MeasurementBasis(kets));
                    const double parts = probability_of(phi, MeasurementBasis(lo)) + probability_of(phi, MeasurementBasis(hi));
                    t.err(std::abs(whole - parts));
                  }
                }});

  ps.push_back({"unitary_remix_invariance", 1e-10, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto phi = rnd::state(basis, st, 3, g);
                    auto kets = rnd::orthonormal_set(basis, 2 + i % 2, g);
                    auto mixed = rnd::remix(kets, rnd::unitary(kets.size(), g));
                    const DensityMatrix a = partial_trace_one(phi, MeasurementBasis(kets));
                    const DensityMatrix b = partial_trace_one(phi, MeasurementBasis(mixed));
                    t.err(max_abs(a.matrix() - b.matrix()));
                  }
                }});

  ps.push_back({"density_matrix_validity", 1e-10, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    auto phi = rnd::state(basis, st, 3, g);
                    const DensityMatrix r = partial_trace_one(phi, random_basis(basis, g));
                    t.err(max_abs(r.matrix() - r.matrix().adjoint()));
                    t.err(std::abs(r.matrix().trace() - cplx(1.0)));
                    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.matrix());
                    t.err(std::max(0.0, -es.eigenvalues().minCoeff()));
                    t.require(r.prob() >= 0.0 && r.prob() <= 1.0 + 1e-12);
                  }
                }});

  ps.push_back({"entropy_unitary_invariance", 1e-9, [](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const std::size_t d = 2 + i % 6;
                    const DensityMatrix r = rnd::density(d, g, 1 + i % d);
                    const CMatrix u = rnd::unitary(d, g);
                    const DensityMatrix r2(0, r.labels(), u * r.matrix() * u.adjoint(), 1.0);
                    t.err(std::abs(von_neumann_entropy(r) - von_neumann_entropy(r2)));
                  }
                }});

  ps.push_back({"entropy_zero_iff_pure", 1e-9, [](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const std::size_t d = 2 + i % 6;
                    const DensityMatrix r = rnd::density(d, g, i % 2 == 0 ? 1 : 2);
                    const double s = von_neumann_entropy(r);
                    const double p = purity(r);
                    t.require((s <= 1e-9) == (std::abs(p - 1.0) <= 1e-9));
                    if (i % 2 == 0) t.err(std::max(s, std::abs(p - 1.0)));
                  }
                }});

  ps.push_back({"entropy_concavity", 1e-9, [](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const std::size_t d = 2 + i % 6;
                    const DensityMatrix a = rnd::density(d, g, 1 + i % d), b = rnd::density(d, g, 1 + (i / 2) % d);
                    const DensityMatrix mix(0, a.labels(), 0.5 * (a.matrix() + b.matrix()), 1.0);
                    const double gap = 0.5 * von_neumann_entropy(a) + 0.5 * von_neumann_entropy(b) - von_neumann_entropy(mix);
                    t.err(std::max(0.0, gap));
                  }
                }});

  ps.push_back({"distinguishable_products_pure", 1e-10, [basis](Engine& g, Tracker& t) {
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const LabeledState phi = [&] {
                      LabeledState l = labeled_product(rnd::elementary(basis, 3, g));
                      return LabeledState(basis, 3, l.amps() / std::sqrt(l.norm_squared()));
                    }();
                    const std::size_t slot = 1 + i % 3;
                    const DensityMatrix r = distinguishable_trace(phi, SlotBasisPlan{slot, random_basis(basis, g)});
                    t.err(std::abs(purity(r) - 1.0));
                    std::vector<SlotBasisPlan> two{SlotBasisPlan{slot, random_basis(basis, g)},
                                                   SlotBasisPlan{1 + (slot % 3), random_basis(basis, g)}};
                    t.err(std::abs(purity(distinguishable_trace_iterate(phi, two)) - 1.0));
                  }
                }});

  ps.push_back({"localized_elementary_purity", 1e-10, [basis](Engine& g, Tracker& t) {
                  // one particle per region, arbitrary spin superpositions
                  for (std::size_t i = 0; i < 100; ++i, ++t.draws) {
                    const auto st = pick(i);
                    std::vector<SingleParticleKet> kets;
                    for (const auto& m : basis->modes()) {
                      kets.push_back(sp_normalize(rnd::gaussian(g) * ket(basis, m.name, Spin::up) +
                                                  rnd::gaussian(g) * ket(basis, m.name, Spin::down)));
                    }
                    ParticleState phi = normalize(ParticleState(st, ElementaryState(rnd::gaussian(g), kets)));
                    const auto& mode = basis->modes()[i % 3].name;
                    t.err(std::abs(purity(partial_trace_one(phi, MeasurementBasis::local(basis, mode))) - 1.0));
                  }
                }});

  return ps;
}

}  // namespace verify_detail

inline VerifySummary run_verify(std::uint64_t seed = kDefaultVerifySeed) {
  VerifySummary out;
  out.seed = seed;
  const auto props = verify_detail::properties();
  for (std::size_t i = 0; i < props.size(); ++i) {
    // per-property streams keep each result independent of suite order
    verify_detail::Engine g(seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    verify_detail::Tracker t;
    PropertyResult r;
    r.name = props[i].name;
    r.tolerance = props[i].tolerance;
    try {
      props[i].body(g, t);
      r.pass = !t.violated && t.max_error <= props[i].tolerance;
    } catch (const std::exception& e) {
      r.pass = false;
      r.failure = e.what();
    }
    r.draws = t.draws;
    r.max_error = t.max_error;
    out.properties.push_back(std::move(r));
  }
  return out;
}

inline std::string format_verify(const VerifySummary& s) {
  std::string out = fmt::format("verify seed={}\n", s.seed);
  std::size_t passed = 0;
  for (const auto& p : s.properties) {
    passed += p.pass;
    out += fmt::format("{}  {:<34} draws={:<4} max_err={:.2e} tol={:.0e}", p.pass ? "PASS" : "FAIL", p.name, p.draws,
                       p.max_error, p.tolerance);
    if (!p.failure.empty()) out += "  error: " + p.failure;
    out += "\n";
  }
  out += fmt::format("{}/{} properties passed\n", passed, s.properties.size());
  return out;
}

}  // namespace nsa

#endif  // NSA_VERIFY_HPP
