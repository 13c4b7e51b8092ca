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

#include "nsa/state.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "nsa/occupation.hpp"
#include "support.hpp"

namespace nsa {
namespace {

using test::abc;
using test::dn;
using test::elementary;
using test::up;

constexpr auto kB = Statistics::boson;
constexpr auto kF = Statistics::fermion;

ElementaryState term(std::vector<SingleParticleKet> k, cplx c = 1.0) { return ElementaryState(c, std::move(k)); }

// Σ_P η^P Π_i ⟨bra_i|ket_P(i)⟩, written out independently of the library.
cplx brute_overlap(const ElementaryState& bra, const ElementaryState& ket, Statistics st) {
  const std::size_t n = ket.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  cplx total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    cplx prod = (st == kF && inversions % 2 == 1) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < ket.kets()[p[i]].dim(); ++a)
        s += std::conj(bra.kets()[i][a]) * ket.kets()[p[i]][a];
      prod *= s;
    }
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::conj(bra.coeff()) * ket.coeff() * total;
}

SingleParticleKet random_ket(std::mt19937_64& g) {
  std::normal_distribution<double> d;
  std::vector<cplx> a(abc()->dim());
  for (auto& x : a) x = {d(g), d(g)};
  return SingleParticleKet(abc(), a);
}

TEST(OverlapElementary, Examples) {
  const auto sep = term({dn("A"), dn("B"), up("C")});
  EXPECT_NEAR(std::abs(overlap_elementary(sep, sep, kB) - cplx(1.0)), 0.0, 1e-14);
  const auto aaa = term({dn("A"), dn("A"), up("A")});
  EXPECT_NEAR(std::abs(overlap_elementary(aaa, aaa, kB) - cplx(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(overlap_elementary(aaa, aaa, kF)), 0.0, 1e-14);
}

TEST(OverlapElementary, ParticleNumberMismatch) {
  EXPECT_NSA_ERROR(overlap_elementary(term({dn("A")}), term({dn("A"), up("B")}), kB), ErrorCode::incompatible_states);
}

TEST(OverlapElementary, MatchesBruteForceUpToFourParticles) {
  std::mt19937_64 g(21);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<SingleParticleKet> a, b;
      for (std::size_t i = 0; i < n; ++i) a.push_back(random_ket(g)), b.push_back(random_ket(g));
      const auto ea = term(a, {0.3, -0.7}), eb = term(b, {1.1, 0.2});
      for (auto st : {kB, kF}) {
        const cplx ref = brute_overlap(ea, eb, st);
        EXPECT_LT(std::abs(overlap_elementary(ea, eb, st) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST(OverlapElementary, ExchangeSymmetry) {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = term({random_ket(g), random_ket(g), random_ket(g)});
    const auto b = term({random_ket(g), random_ket(g), random_ket(g)});
    const auto bs = b.with_swapped(0, 2);
    const cplx vb = overlap_elementary(a, b, kB), vf = overlap_elementary(a, b, kF);
    EXPECT_LT(std::abs(overlap_elementary(a, bs, kB) - vb), 1e-12 * std::max(1.0, std::abs(vb)));
    EXPECT_LT(std::abs(overlap_elementary(a, bs, kF) + vf), 1e-12 * std::max(1.0, std::abs(vf)));
  }
}

TEST(Inner, Examples) {
  EXPECT_NEAR(std::abs(inner(test::ghz(), test::ghz()) - cplx(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(test::overlap_state(), test::overlap_state()) - cplx(1.0)), 0.0, 1e-14);
  EXPECT_EQ(inner(test::separated(), elementary(kB, {up("A"), dn("B"), up("C")})), cplx(0.0));
}

TEST(Inner, StatisticsMismatch) {
  EXPECT_NSA_ERROR(inner(test::separated(kB), test::separated(kF)), ErrorCode::incompatible_states);
}

TEST(Normalize, Examples) {
  const auto n = normalize(elementary(kB, {dn("A"), dn("A"), up("A")}));
  ASSERT_EQ(n.terms().size(), 1u);
  EXPECT_NEAR(std::abs(n.terms()[0].coeff() - cplx(1.0 / std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_TRUE(approx_equal(normalize(test::separated()), test::separated()));
  EXPECT_NSA_ERROR(normalize(elementary(kF, {dn("A"), dn("A"), up("A")})), ErrorCode::null_state);
}

TEST(Pauli, ProportionalFermionicKetsVanish) {
  std::mt19937_64 g(23);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = sp_normalize(random_ket(g));
    const cplx phase = std::polar(1.0, d(g));
    const auto phi = elementary(kF, {k, sp_normalize(random_ket(g)), phase * k});
    EXPECT_LT(std::abs(norm_squared(phi)), 1e-12);
    EXPECT_NSA_ERROR(normalize(phi), ErrorCode::null_state);
  }
}

TEST(Pauli, UnnormalizedProportionalKetsVanishRelativeToScale) {
  std::mt19937_64 g(26);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = random_ket(g), other = random_ket(g);
    const cplx s{d(g), d(g)};
    const auto phi = elementary(kF, {k, other, s * k});
    const double scale = k.norm_squared() * other.norm_squared() * std::norm(s) * k.norm_squared();
    EXPECT_LT(std::abs(norm_squared(phi)), 1e-12 * scale);
    EXPECT_NSA_ERROR(normalize(phi), ErrorCode::null_state);
  }
}

TEST(Pauli, ZeroStateIsNull) {
  auto phi = test::separated() - test::separated();
  EXPECT_NSA_ERROR(normalize(phi), ErrorCode::null_state);
}

TEST(ProjectSingle, DelocalizedBranch) {
  const auto out = project_single(delocalized(abc(), {"B", "C"}, Spin::down), test::separated());
  EXPECT_EQ(out.particles(), 2u);
  EXPECT_TRUE(approx_equal(out, elementary(kB, {dn("A"), up("C")}, 1.0 / std::sqrt(2.0))));
}

TEST(ProjectSingle, RepeatedKetsAddUp) {
  const auto out = project_single(dn("A"), test::overlap_state());
  EXPECT_TRUE(approx_equal(out, elementary(kB, {dn("A"), up("A")}, std::sqrt(2.0))));
  // squared norm 2 out of N = 3 for the complete {A↑, A↓} split gives the 2/3 weight
  EXPECT_NEAR(norm_squared(out), 2.0, 1e-14);
  EXPECT_NEAR(norm_squared(project_single(up("A"), test::overlap_state())), 1.0, 1e-14);
}

TEST(ProjectSingle, GhzKeepsAllUpTerm) {
  const auto out = project_single(up("C"), test::ghz());
  EXPECT_TRUE(approx_equal(out, elementary(kB, {up("A"), up("B")}, 1.0 / std::sqrt(2.0))));
}

TEST(ProjectSingle, LastParticleLeavesVacuum) {
  const auto one = elementary(kB, {dn("A")}, 0.5);
  const auto vac = project_single(dn("A"), one);
  EXPECT_EQ(vac.particles(), 0u);
  EXPECT_NEAR(std::abs(inner(vac, vac) - cplx(0.25)), 0.0, 1e-15);
  EXPECT_NSA_ERROR(project_single(dn("A"), vac), ErrorCode::empty_state);
}

TEST(ProjectSingle, FermionSignFollowsPosition) {
  // ⟨B↓| on |A↓,B↓⟩ removes the second entry: −|A↓⟩
  const auto out = project_single(dn("B"), elementary(kF, {dn("A"), dn("B")}));
  EXPECT_TRUE(approx_equal(out, elementary(kF, {dn("A")}, -1.0)));
  const auto out2 = project_single(dn("A"), elementary(kF, {dn("A"), dn("B")}));
  EXPECT_TRUE(approx_equal(out2, elementary(kF, {dn("B")})));
}

TEST(ProjectSingle, ListOrderDoesNotChangeFermionicResult) {
  std::mt19937_64 g(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_ket(g), b = random_ket(g), c = random_ket(g), m = sp_normalize(random_ket(g));
    const auto phi = elementary(kF, {a, b, c});
    const auto swapped = elementary(kF, {c, b, a}, -1.0);  // same physical state
    EXPECT_TRUE(approx_equal(project_single(m, phi), project_single(m, swapped), 1e-10));
  }
}

TEST(ProjectSingle, ResolvesIdentityOverCompleteBasis) {
  std::mt19937_64 g(25);
  for (auto st : {kB, kF}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto phi = normalize(elementary(st, {random_ket(g), random_ket(g), random_ket(g)}) +
                           elementary(st, {random_ket(g), random_ket(g), random_ket(g)}));
      double total = 0.0;
      for (std::size_t j = 0; j < abc()->dim(); ++j) total += norm_squared(project_single(SingleParticleKet::unit(abc(), j), phi));
      EXPECT_NEAR(total, 3.0, 1e-10);
    }
  }
}

TEST(Canonicalize, MergesPermutedTerms) {
  const auto phi = elementary(kB, {dn("A"), up("B")}) + elementary(kB, {up("B"), dn("A")});
  const auto c = canonicalize(phi);
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_NEAR(std::abs(c.terms()[0].coeff() - cplx(2.0)), 0.0, 1e-15);

  const auto f = canonicalize(elementary(kF, {dn("A"), up("B")}) + elementary(kF, {up("B"), dn("A")}));
  EXPECT_TRUE(f.terms().empty());
}

TEST(ParticleState, MixedParticleNumbersRejected) {
  EXPECT_NSA_ERROR(test::separated() + elementary(kB, {dn("A"), up("A")}), ErrorCode::incompatible_states);
}

}  // namespace
}  // namespace nsa
