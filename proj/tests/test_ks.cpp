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

#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/ks.hpp"
#include "oracle.hpp"

namespace ksp {
namespace {

std::vector<std::string> rendered(const ContextSystem& sys) {
  std::vector<std::string> out;
  for (const auto& w : sys.observables()) out.push_back(w.render());
  return out;
}

// Independent GHZ oracle: every +-1 value for every (qubit, letter) slot that
// occurs, checked against every row by direct multiplication of values.
bool brute_force_ghz_feasible(const ContextSystem& sys, const std::vector<int>& eigenvalues) {
  std::map<std::pair<std::size_t, Letter>, std::size_t> slot;
  for (const auto& w : sys.observables()) {
    for (std::size_t q = 0; q < w.num_qubits(); ++q) {
      if (w.letter(q) != Letter::I) slot.emplace(std::make_pair(q, w.letter(q)), slot.size());
    }
  }
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << slot.size()); ++a) {
    bool ok = true;
    for (std::size_t r = 0; r < sys.observables().size() && ok; ++r) {
      const auto& w = sys.observable(r);
      int v = 1;
      for (std::size_t q = 0; q < w.num_qubits(); ++q) {
        if (w.letter(q) != Letter::I && ((a >> slot.at({q, w.letter(q)})) & 1U)) v = -v;
      }
      ok = v == eigenvalues[r];
    }
    if (ok) return true;
  }
  return false;
}

TEST(VerifySystem, TableOneLeft) {
  const auto sys = builtin_fixtures().at("table1-left");
  EXPECT_TRUE(verify_system(sys).ok());
  const auto flipped = ContextSystem::single_context(sys.observables(), +1);
  const auto report = verify_system(flipped);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, Violation::Kind::kSignMismatch);
  EXPECT_NE(report.violations[0].message.find("product sign mismatch"), std::string::npos);
}

TEST(VerifySystem, NonCommutingMembers) {
  const ContextSystem sys(2, parse_words({"XI", "ZI"}), {Context{{0, 1}, 1}});
  const auto report = verify_system(sys);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations[0].kind, Violation::Kind::kNotCommuting);
  EXPECT_NE(report.violations[0].message.find("members do not commute"), std::string::npos);
}

TEST(ContextSystem, ConstructionInvariants) {
  EXPECT_THROW(ContextSystem(2, parse_words({"XI", "XI"}), {}), DomainError);
  EXPECT_THROW(ContextSystem(2, parse_words({"XI", "-ZI"}), {}), DomainError);
  EXPECT_THROW(ContextSystem(2, parse_words({"XI", "II"}), {}), DomainError);
  EXPECT_THROW(ContextSystem(2, parse_words({"XIZ"}), {}), DimensionError);
  EXPECT_THROW(ContextSystem(2, parse_words({"XI"}), {Context{{0, 1}, 1}}), DomainError);
  EXPECT_THROW(ContextSystem(2, parse_words({"XI"}), {Context{{0}, 2}}), DomainError);
}

TEST(ParityWitness, Examples) {
  // Each observable on a single line: no witness even with a thick line.
  const ContextSystem one_line(2, parse_words({"ZZ", "XX", "YY"}), {Context{{0, 1, 2}, -1}});
  EXPECT_TRUE(verify_system(one_line).ok());
  EXPECT_FALSE(parity_witness(one_line));

  const auto lifted = lift_to_single_qubit(builtin_fixtures().at("table1-left"));
  EXPECT_TRUE(verify_system(lifted).ok());
  EXPECT_TRUE(parity_witness(lifted));
  EXPECT_TRUE(gf2_infeasible(lifted));
}

TEST(ParityWitness, SinglePositiveContextIsNoWitness) {
  const ContextSystem sys(2, parse_words({"ZI", "IZ", "ZZ"}), {Context{{0, 1, 2}, 1}});
  ASSERT_TRUE(verify_system(sys).ok());
  EXPECT_FALSE(parity_witness(sys));
  EXPECT_FALSE(gf2_infeasible(sys));
}

TEST(Gf2Infeasible, LiftedTablesAgreeWithBruteForce) {
  const auto fx = builtin_fixtures();
  for (const auto& name : {"table2-left", "table1-right-6", "table1-left"}) {
    const auto& sys = fx.at(name);
    const auto sig = default_signature(sys.observables().size());
    EXPECT_FALSE(brute_force_ghz_feasible(sys, sig)) << name;
    EXPECT_TRUE(gf2_infeasible(lift_to_single_qubit(sys))) << name;
  }
}

TEST(Gf2Infeasible, AllPositiveSignsAreFeasible) {
  const ContextSystem sys(2, parse_words({"ZI", "IZ", "ZZ", "XI", "IX", "XX"}),
                          {Context{{0, 1, 2}, 1}, Context{{3, 4, 5}, 1}});
  ASSERT_TRUE(verify_system(sys).ok());
  EXPECT_FALSE(gf2_infeasible(sys));
}

TEST(GhzInfeasible, TableOneLeft) {
  const auto sys = builtin_fixtures().at("table1-left");
  const auto check = ghz_infeasible(sys, default_signature(5));
  EXPECT_TRUE(check.infeasible);
  EXPECT_TRUE(check.exhaustive_ran);
  EXPECT_EQ(check.slots, 8u);
  EXPECT_EQ(check.assignments, 256u);
  EXPECT_EQ(check.satisfying, 0u);
  EXPECT_TRUE(check.methods_agree);
  const std::vector<int> all_plus(5, 1);
  EXPECT_THROW(ghz_infeasible(sys, all_plus), InconsistencyError);
  const std::vector<int> short_sig(4, 1);
  EXPECT_THROW(ghz_infeasible(sys, short_sig), DomainError);
}

TEST(GhzInfeasible, TableTwoRightExhaustive) {
  const auto sys = builtin_fixtures().at("table2-right");
  const auto check = ghz_infeasible(sys, default_signature(sys.observables().size()));
  EXPECT_TRUE(check.infeasible);
  EXPECT_TRUE(check.exhaustive_ran);
  EXPECT_EQ(check.assignments, std::uint64_t{1} << 16);
  EXPECT_TRUE(check.methods_agree);
}

TEST(GhzInfeasible, NegatingOneEigenvalueBreaksTheSignPrecondition) {
  for (const auto& [name, sys] : builtin_fixtures()) {
    if (!sys.is_single_context()) continue;
    auto sig = default_signature(sys.observables().size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
      auto flipped = sig;
      flipped[i] = -flipped[i];
      EXPECT_THROW(ghz_infeasible(sys, flipped), InconsistencyError) << name << " " << i;
    }
  }
}

TEST(GhzInfeasible, ExhaustiveAndGf2AgreeOnRandomTables) {
  std::mt19937_64 rng(41);
  int infeasible = 0, feasible = 0;
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<PauliWord> rows;
    for (int tries = 0; tries < 40 && rows.size() < 1 + rng() % 5; ++tries) {
      PauliWord w(n);
      for (std::size_t q = 0; q < n; ++q) w.set_letter(q, static_cast<Letter>(rng() & 3U));
      if (w.is_identity_letters()) continue;
      bool ok = true;
      for (const auto& r : rows) ok = ok && commutes(r, w) && !(r == w);
      if (ok) rows.push_back(w);
    }
    if (rows.empty()) continue;
    const PauliWord closing = product_of(rows);
    if (closing.is_identity_letters()) continue;
    const bool dup = std::any_of(rows.begin(), rows.end(), [&](const PauliWord& r) { return r == closing.letters_only(); });
    if (dup) continue;
    rows.push_back(closing.letters_only());
    const int sign = closing.sign();  // product of all rows is sign * I
    const auto sys = ContextSystem::single_context(rows, sign);
    ASSERT_TRUE(verify_system(sys).ok());
    std::vector<int> sig(rows.size(), 1);
    for (std::size_t i = 0; i + 1 < sig.size(); ++i) sig[i] = (rng() & 1U) ? -1 : 1;
    int prod = 1;
    for (std::size_t i = 0; i + 1 < sig.size(); ++i) prod *= sig[i];
    sig.back() = prod * sign;
    const auto check = ghz_infeasible(sys, sig);
    ASSERT_TRUE(check.exhaustive_ran);
    EXPECT_TRUE(check.methods_agree);
    EXPECT_EQ(check.infeasible, !brute_force_ghz_feasible(sys, sig));
    (check.infeasible ? infeasible : feasible)++;
  }
  EXPECT_GT(infeasible, 0);
  EXPECT_GT(feasible, 0);
}

TEST(StarTable, SmallCasesAreVerbatim) {
  EXPECT_EQ(rendered(build_star_table(2)), (std::vector<std::string>{"ZZZZ", "XXZZ", "ZXXI", "XZIX", "IIXX"}));
  EXPECT_EQ(rendered(build_star_table(3)), (std::vector<std::string>{"ZZZZZZ", "XXZZZZ", "ZXXIII", "XZIXII",
                                                                     "IIIXXI", "IIIIXX", "IIXIIX"}));
  EXPECT_THROW(build_star_table(1), DomainError);
}

TEST(StarTable, FamilyProperties) {
  for (std::size_t half = 2; half <= 8; ++half) {
    const auto sys = build_star_table(half);
    const auto& rows = sys.observables();
    ASSERT_EQ(rows.size(), 2 * half + 1);
    EXPECT_TRUE(verify_system(sys).ok());
    EXPECT_EQ(product_of(rows).render(), "-" + std::string(2 * half, 'I'));
    for (std::size_t q = 0; q < 2 * half; ++q) {
      int xs = 0, zs = 0;
      for (const auto& r : rows) {
        xs += r.letter(q) == Letter::X;
        zs += r.letter(q) == Letter::Z;
      }
      EXPECT_EQ(xs % 2, 0) << "N=" << half << " column " << q;
      EXPECT_EQ(zs % 2, 0) << "N=" << half << " column " << q;
    }
    EXPECT_TRUE(ghz_infeasible(sys, default_signature(rows.size())).infeasible);
  }
}

TEST(StarTable, ProductMatchesDenseOracle) {
  for (std::size_t half : {2, 3}) {
    const auto sys = build_star_table(half);
    const auto dim = Eigen::Index{1} << (2 * half);
    testing::Mat p = testing::Mat::Identity(dim, dim);
    for (const auto& r : sys.observables()) p = p * testing::oracle_matrix(r.render());
    EXPECT_TRUE(testing::same(p, -testing::Mat::Identity(dim, dim)));
  }
}

TEST(Fixtures, VerbatimRowsAndSigns) {
  const auto fx = builtin_fixtures();
  EXPECT_EQ(rendered(fx.at("table2-left")),
            (std::vector<std::string>{"ZZZZZZ", "XXXXXX", "ZXZXII", "XZIIZX", "IIXZXZ"}));
  EXPECT_EQ(fx.at("table2-right").observables().size(), 6u);
  EXPECT_EQ(fx.at("table2-right").num_qubits(), 8u);
  const auto& kite = fx.at("kite-quadruples");
  EXPECT_EQ(rendered(kite), (std::vector<std::string>{"IXXZ", "YYIX", "XIYY", "ZZZI", "IXXX", "YYIZ"}));
  ASSERT_EQ(kite.contexts().size(), 2u);
  EXPECT_EQ(kite.contexts()[0].sign, -1);
  EXPECT_EQ(kite.contexts()[1].sign, 1);
  for (const auto& [name, sys] : fx) EXPECT_TRUE(verify_system(sys).ok()) << name;
}

TEST(Fixtures, KiteProductsMatchDenseOracle) {
  const testing::Mat thick = testing::oracle_matrix("IXXZ") * testing::oracle_matrix("YYIX") *
                             testing::oracle_matrix("XIYY") * testing::oracle_matrix("ZZZI");
  const testing::Mat thin = testing::oracle_matrix("IXXX") * testing::oracle_matrix("YYIZ") *
                            testing::oracle_matrix("XIYY") * testing::oracle_matrix("ZZZI");
  EXPECT_TRUE(testing::same(thick, -testing::Mat::Identity(16, 16)));
  EXPECT_TRUE(testing::same(thin, testing::Mat::Identity(16, 16)));
}

TEST(Multipartite, StarTablesAreGenuine) {
  for (std::size_t half = 2; half <= 5; ++half) {
    const auto report = is_genuinely_multipartite(build_star_table(half));
    EXPECT_TRUE(report.is_proof) << half;
    EXPECT_TRUE(report.genuine) << half;
    EXPECT_TRUE(report.complete) << half;
  }
}

TEST(Multipartite, DuplicatedRowIsNotGenuine) {
  auto rows = build_star_table(2).observables();
  rows.push_back(rows.back());
  const auto report = is_genuinely_multipartite(std::span<const PauliWord>(rows));
  EXPECT_FALSE(report.genuine);
}

TEST(Multipartite, TwoRowSystemsAreNeverProofs) {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<PauliWord> words;
    for (unsigned code = 1; code < (1U << (2 * n)); ++code) {
      PauliWord w(n);
      for (std::size_t q = 0; q < n; ++q) w.set_letter(q, static_cast<Letter>((code >> (2 * q)) & 3U));
      words.push_back(w);
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        if (!commutes(words[i], words[j])) continue;
        const std::vector<PauliWord> rows = {words[i], words[j]};
        const auto report = is_genuinely_multipartite(std::span<const PauliWord>(rows));
        ASSERT_FALSE(report.is_proof) << rows[0].render() << " " << rows[1].render();
        ASSERT_FALSE(report.genuine);
      }
    }
  }
}

TEST(Multipartite, ProperSubTableIsReported) {
  // Table 1 left on qubits 1-4 padded with two idle qubits and a stray row.
  std::vector<PauliWord> rows;
  const auto star = build_star_table(2);
  for (const auto& r : star.observables()) rows.push_back(parse_word(r.render() + "II"));
  rows.push_back(parse_word("IIIIZZ"));
  const auto report = is_genuinely_multipartite(std::span<const PauliWord>(rows));
  EXPECT_FALSE(report.genuine);
  ASSERT_TRUE(report.witness.has_value());
}

TEST(Multipartite, CapsAreReported) {
  MultipartiteOptions narrow;
  narrow.max_qubits = 4;
  EXPECT_THROW(is_genuinely_multipartite(build_star_table(3), narrow), ResourceError);
  MultipartiteOptions tiny;
  tiny.work_cap = 3;
  const auto report = is_genuinely_multipartite(build_star_table(3), tiny);
  EXPECT_FALSE(report.complete);
  EXPECT_FALSE(report.genuine);
}

}  // namespace
}  // namespace ksp
