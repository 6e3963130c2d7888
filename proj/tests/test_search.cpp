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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ksp/ks.hpp"
#include "ksp/search.hpp"

namespace ksp {
namespace {

// Applies a qubit permutation and a global letter relabelling to a system.
ContextSystem transformed(const ContextSystem& sys, const std::vector<std::size_t>& perm, const std::string& letters) {
  std::vector<PauliWord> obs;
  for (const auto& w : sys.observables()) {
    PauliWord t(w.num_qubits());
    for (std::size_t q = 0; q < w.num_qubits(); ++q) {
      const char c = letter_char(w.letter(q));
      const auto pos = std::string("XYZ").find(c);
      if (pos != std::string::npos) t.set_letter(perm[q], parse_word(std::string(1, letters[pos])).letter(0));
    }
    obs.push_back(t);
  }
  std::vector<Context> contexts = sys.contexts();
  ContextSystem out(sys.num_qubits(), obs, contexts);
  // Relabelling may flip context products; recompute the declared signs.
  for (auto& c : contexts) c.sign = product_sign(out.members_of(c)).value_or(c.sign);
  return ContextSystem(sys.num_qubits(), obs, contexts);
}

TEST(CanonicalKey, InvariantUnderQubitPermutationAndRelabelling) {
  const auto kite = builtin_fixtures().at("kite-quadruples");
  const auto base = canonical_key(kite);
  EXPECT_EQ(canonical_key(transformed(kite, {2, 0, 3, 1}, "XYZ")), base);
  EXPECT_EQ(canonical_key(transformed(kite, {0, 1, 2, 3}, "ZXY")), base);
  EXPECT_EQ(canonical_key(transformed(kite, {3, 2, 1, 0}, "YZX")), base);
}

TEST(SearchCompletions, KiteCompletionsAreWitnesses) {
  const auto seed = builtin_fixtures().at("kite-quadruples");
  const auto result = search_completions(seed, {3, 3, 3, 3});
  ASSERT_FALSE(result.systems.empty());
  EXPECT_FALSE(result.partial);
  std::set<std::string> keys;
  for (const auto& sys : result.systems) {
    EXPECT_TRUE(verify_system(sys).ok());
    EXPECT_TRUE(parity_witness(sys));
    EXPECT_TRUE(gf2_infeasible(sys));
    EXPECT_EQ(sys.contexts().size(), 6u);
    keys.insert(canonical_key(sys));
    // Seed observables keep their positions.
    for (std::size_t i = 0; i < seed.observables().size(); ++i) EXPECT_EQ(sys.observable(i), seed.observable(i));
  }
  EXPECT_EQ(keys.size(), result.systems.size());
}

TEST(SearchCompletions, ResultsDoNotDependOnWorkerCount) {
  const auto seed = builtin_fixtures().at("kite-quadruples");
  SearchOptions one, many;
  many.workers = 4;
  const auto a = search_completions(seed, {3, 3, 3, 3}, one);
  const auto b = search_completions(seed, {3, 3, 3, 3}, many);
  ASSERT_EQ(a.systems.size(), b.systems.size());
  for (std::size_t i = 0; i < a.systems.size(); ++i) {
    EXPECT_EQ(canonical_key(a.systems[i]), canonical_key(b.systems[i]));
    EXPECT_EQ(a.systems[i].observables(), b.systems[i].observables());
  }
}

TEST(SearchCompletions, TwoQubitSquare) {
  const auto result = search_completions(ContextSystem(2, {}, {}), {3, 3, 3, 3, 3, 3});
  ASSERT_FALSE(result.systems.empty());
  for (const auto& sys : result.systems) {
    EXPECT_EQ(sys.observables().size(), 9u);
    std::vector<int> degree(9, 0);
    int negative = 0;
    for (const auto& c : sys.contexts()) {
      negative += c.sign < 0;
      for (auto m : c.members) ++degree[m];
    }
    EXPECT_EQ(negative % 2, 1);
    EXPECT_TRUE(std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; }));
    EXPECT_TRUE(verify_system(sys).ok());
  }
}

TEST(SearchCompletions, InconsistentSeedGivesNothing) {
  const ContextSystem bad(2, parse_words({"ZZ", "XX", "YY"}), {Context{{0, 1, 2}, 1}});
  ASSERT_FALSE(verify_system(bad).ok());
  EXPECT_TRUE(search_completions(bad, {3, 3}).systems.empty());
}

TEST(SearchCompletions, BudgetExhaustionIsFlagged) {
  SearchOptions tight;
  tight.budget = 50;
  const auto result = search_completions(builtin_fixtures().at("kite-quadruples"), {3, 3, 3, 3}, tight);
  EXPECT_TRUE(result.partial);
}

}  // namespace
}  // namespace ksp
