// Copyright 2026 The ksproofs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "ksp/error.hpp"
#include "ksp/ks.hpp"
#include "ksp/states.hpp"
#include "oracle.hpp"

namespace ksp {
namespace {

using B = BellLabel;
const double kHalfRoot = 1.0 / std::sqrt(2.0);

DenseState eigenstate_of(const ContextSystem& sys) {
  const auto r = joint_eigenstate(sys, default_signature(sys.observables().size()));
  EXPECT_TRUE(r.state.has_value());
  EXPECT_LT(r.max_residual, 1e-10);
  return *r.state;
}

DenseState random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Amplitudes a(std::size_t{1} << n);
  for (auto& c : a) c = Complex(g(rng), g(rng));
  return DenseState::from_amplitudes(n, a);
}

TEST(DenseState, NormalisedWithCanonicalPhase) {
  const auto s = DenseState::from_amplitudes(1, {Complex(0, 0), Complex(0, 3)});
  EXPECT_NEAR(std::abs(s[1] - Complex(1, 0)), 0, 1e-15);
  EXPECT_THROW(DenseState::from_amplitudes(1, {0, 0}), DomainError);
  EXPECT_THROW(DenseState::from_amplitudes(2, {1, 0}), DimensionError);
}

TEST(ApplyWord, MatchesOracleMatrix) {
  std::mt19937_64 rng(51);
  for (const auto* text : {"XYZ", "-iZZX", "IYI", "iXXY"}) {
    const auto w = parse_word(text);
    const auto s = random_state(3, rng);
    const auto out = apply_word(w, s.amplitudes());
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) v(i) = s[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd expected = testing::oracle_matrix(text) * v;
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(out[static_cast<std::size_t>(i)] - expected(i)), 0, 1e-12);
  }
}

TEST(JointEigenstate, Psi4BellDecomposition) {
  const auto psi4 = eigenstate_of(builtin_fixtures().at("table1-left"));
  const auto d = bell_decompose(psi4, {{0, 1}, {2, 3}}, 1e-12);
  ASSERT_EQ(d.coefficients.size(), 2u);
  EXPECT_NEAR(std::abs(d.coefficients.at({B::kPhiPlus, B::kPhiMinus}) - kHalfRoot), 0, 1e-12);
  EXPECT_NEAR(std::abs(d.coefficients.at({B::kPsiMinus, B::kPsiMinus}) + kHalfRoot), 0, 1e-12);
}

TEST(JointEigenstate, Psi6BellDecomposition) {
  const auto psi6 = eigenstate_of(build_star_table(3));
  const auto d = bell_decompose(psi6, adjacent_pairing(6), 1e-12);
  ASSERT_EQ(d.coefficients.size(), 4u);
  EXPECT_NEAR(d.coefficients.at({B::kPhiPlus, B::kPhiMinus, B::kPhiPlus}).real(), 0.5, 1e-12);
  EXPECT_NEAR(d.coefficients.at({B::kPhiPlus, B::kPsiMinus, B::kPsiPlus}).real(), 0.5, 1e-12);
  EXPECT_NEAR(d.coefficients.at({B::kPsiMinus, B::kPhiMinus, B::kPsiPlus}).real(), -0.5, 1e-12);
  EXPECT_NEAR(d.coefficients.at({B::kPsiMinus, B::kPsiMinus, B::kPhiPlus}).real(), -0.5, 1e-12);
}

TEST(JointEigenstate, SingleQubitAndUnderdetermined) {
  const auto z = parse_words({"Z"});
  const auto r = joint_eigenstate(1, z);
  EXPECT_EQ(r.eigenspace_dimension, 1u);
  ASSERT_TRUE(r.state.has_value());
  EXPECT_NEAR(std::abs((*r.state)[0] - Complex(1)), 0, 1e-15);

  const auto zz = parse_words({"ZZ"});
  const auto u = joint_eigenstate(2, zz);
  EXPECT_FALSE(u.state.has_value());
  EXPECT_EQ(u.eigenspace_dimension, 2u);

  const auto bad = parse_words({"Z", "-Z"});
  EXPECT_THROW(joint_eigenstate(1, bad), InconsistencyError);
  EXPECT_THROW(joint_eigenstate(15, parse_words({std::string(15, 'Z')})), ResourceError);
}

TEST(BellDecompose, ProductStateAndInvalidPairing) {
  const auto zero = DenseState::from_amplitudes(4, [] {
    Amplitudes a(16, 0);
    a[0] = 1;
    return a;
  }());
  const auto s = bell_support(zero, {{0, 2}, {1, 3}});
  EXPECT_EQ(s.terms, 4u);
  for (double m : s.magnitudes) EXPECT_NEAR(m, 0.5, 1e-12);
  EXPECT_THROW(bell_decompose(zero, {{0, 1}}), DomainError);
  EXPECT_THROW(bell_decompose(zero, {{0, 1}, {1, 2}}), DomainError);
  EXPECT_THROW(bell_decompose(zero, {{0, 1}, {2, 7}}), DomainError);
}

TEST(BellDecompose, ReconstructionIsExact) {
  std::mt19937_64 rng(52);
  for (std::size_t n : {2, 4, 6}) {
    for (int k = 0; k < 5; ++k) {
      const auto s = random_state(n, rng);
      Pairing p = adjacent_pairing(n);
      if (n >= 4) std::swap(p[0].second, p[1].first);
      const auto d = bell_decompose(s, p, 0);
      double norm = 0;
      for (const auto& [l, c] : d.coefficients) norm += std::norm(c);
      EXPECT_NEAR(norm, 1, 1e-12);
      const auto back = reconstruct(d);
      for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(std::abs(back[i] - s[i]), 0, 1e-12);
    }
  }
}

TEST(BellSupport, EightQubitStateHasEightEqualTerms) {
  const auto psi8 = eigenstate_of(build_star_table(4));
  const auto s = bell_support(psi8, adjacent_pairing(8));
  EXPECT_EQ(s.terms, 8u);
  for (double m : s.magnitudes) EXPECT_NEAR(m, 1 / std::sqrt(8.0), 1e-10);
  const auto psi4 = bell_support(eigenstate_of(build_star_table(2)), adjacent_pairing(4));
  EXPECT_EQ(psi4.terms, 2u);
}

TEST(Measure, Psi4PairOutcomes) {
  const auto psi4 = eigenstate_of(build_star_table(2));
  const auto m = measure_computational(psi4, {0, 1}, {0, 0});
  EXPECT_NEAR(m.probability, 0.25, 1e-12);
  ASSERT_TRUE(m.residual.has_value());
  // Only the Phi+ Phi- term has |00> on qubits 1,2.
  const auto phi_minus = from_terms(2, {{1, {bell_factor(B::kPhiMinus, 0, 1)}}});
  EXPECT_LT(m.residual->distance(phi_minus), 1e-10);
}

TEST(Measure, Psi6ResidualMatchesSecondDecomposition) {
  const auto psi6 = eigenstate_of(build_star_table(3));
  const auto m = measure_computational(psi6, {0, 2}, {1, 1});
  ASSERT_TRUE(m.residual.has_value());
  // Remaining qubits 2,4,5,6 become 0..3.
  const auto expected = from_terms(4, {{-1, {bell_factor(B::kPhiPlus, 0, 1), bell_factor(B::kPhiPlus, 2, 3)}},
                                       {-1, {bell_factor(B::kPsiPlus, 0, 1), bell_factor(B::kPsiPlus, 2, 3)}}});
  EXPECT_LT(m.residual->distance(expected), 1e-10);
}

TEST(Measure, EmptySetAndZeroProbability) {
  std::mt19937_64 rng(53);
  const auto s = random_state(3, rng);
  const auto m = measure_computational(s, {}, {});
  EXPECT_NEAR(m.probability, 1, 1e-12);
  ASSERT_TRUE(m.residual.has_value());
  EXPECT_LT(m.residual->distance(s), 1e-12);

  const auto zero = DenseState::from_amplitudes(2, {1, 0, 0, 0});
  const auto z = measure_computational(zero, {0}, {1});
  EXPECT_EQ(z.probability, 0);
  EXPECT_FALSE(z.residual.has_value());
  EXPECT_THROW(measure_computational(zero, {0}, {1, 0}), DomainError);
}

TEST(Measure, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(54);
  for (int k = 0; k < 20; ++k) {
    const auto s = random_state(5, rng);
    std::vector<std::size_t> qubits;
    for (std::size_t q = 0; q < 5; ++q) {
      if (rng() & 1U) qubits.push_back(q);
    }
    double total = 0;
    for (std::uint64_t o = 0; o < (std::uint64_t{1} << qubits.size()); ++o) {
      std::vector<int> outcome;
      for (std::size_t i = 0; i < qubits.size(); ++i) outcome.push_back(static_cast<int>((o >> i) & 1U));
      total += measure_computational(s, qubits, outcome).probability;
    }
    EXPECT_NEAR(total, 1, 1e-12);
  }
}

TEST(EntanglementProfile, Examples) {
  const auto bell = from_terms(2, {{1, {bell_factor(B::kPsiMinus, 0, 1)}}});
  const auto p = entanglement_profile(bell);
  ASSERT_EQ(p.at(1).size(), 2u);
  for (const auto& spec : p.at(1)) {
    EXPECT_NEAR(spec[0], 0.5, 1e-12);
    EXPECT_NEAR(spec[1], 0.5, 1e-12);
  }
  const auto psi4 = eigenstate_of(build_star_table(2));
  const auto p4 = entanglement_profile(psi4);
  for (const auto& spec : p4.at(1)) EXPECT_NEAR(spec[0], 0.5, 1e-12);
  const auto product = DenseState::from_amplitudes(2, {1, 0, 0, 0});
  const auto pp = entanglement_profile(product);
  for (const auto& spec : pp.at(1)) {
    EXPECT_NEAR(spec[0], 1, 1e-12);
    EXPECT_NEAR(spec[1], 0, 1e-12);
  }
}

TEST(ClassifyResidual, Psi4AlwaysLeavesBellStates) {
  const auto psi4 = eigenstate_of(build_star_table(2));
  int bell = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      for (int o = 0; o < 4; ++o) {
        const auto m = measure_computational(psi4, {a, b}, {o >> 1, o & 1});
        ASSERT_TRUE(m.residual.has_value());
        bell += classify_residual(*m.residual, psi4) == ResidualVerdict::kBellState;
      }
    }
  }
  EXPECT_EQ(bell, 24);
}

// Schmidt rank across the cut {a, c} | {b, d} of a four-qubit state, by LU.
Eigen::Index cross_cut_rank(const DenseState& s) {
  Eigen::Matrix4cd m;
  for (std::uint64_t i = 0; i < 16; ++i) {
    const auto row = ((i >> 3) & 1) << 1 | ((i >> 1) & 1);
    const auto col = ((i >> 2) & 1) << 1 | (i & 1);
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s[i];
  }
  return Eigen::FullPivLU<Eigen::Matrix4cd>(m).rank();
}

TEST(ClassifyResidual, Psi6ResidualsAgainstPsi4) {
  const auto psi4 = eigenstate_of(build_star_table(2));
  const auto psi6 = eigenstate_of(build_star_table(3));
  // Measuring qubits 1,2 leaves a GHZ-type state: every 2|2 cut has rank 2,
  // while psi4 has rank 4 across {1,3}|{2,4}.
  const auto m12 = measure_computational(psi6, {0, 1}, {0, 0});
  ASSERT_TRUE(m12.residual.has_value());
  EXPECT_EQ(cross_cut_rank(psi4), 4);
  EXPECT_EQ(cross_cut_rank(*m12.residual), 2);
  EXPECT_EQ(classify_residual(*m12.residual, psi4), ResidualVerdict::kMismatch);
  // Measuring two of qubits 3-6 keeps the psi4 structure.
  const auto m34 = measure_computational(psi6, {2, 3}, {0, 0});
  ASSERT_TRUE(m34.residual.has_value());
  EXPECT_EQ(classify_residual(*m34.residual, psi4), ResidualVerdict::kProfileMatch);
}

TEST(ClassifyResidual, ProductIsMismatch) {
  const auto bell = from_terms(2, {{1, {bell_factor(B::kPhiPlus, 0, 1)}}});
  const auto product = DenseState::from_amplitudes(2, {1, 0, 0, 0});
  EXPECT_EQ(classify_residual(product, bell), ResidualVerdict::kMismatch);
}

}  // namespace
}  // namespace ksp
