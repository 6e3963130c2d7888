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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ksp/error.hpp"
#include "ksp/ks.hpp"
#include "ksp/stabilizer.hpp"
#include "oracle.hpp"

namespace ksp {
namespace {

using testing::oracle_matrix;
using testing::same;

testing::Mat oracle_projector(const std::vector<std::string>& gens) {
  const auto n = gens.front().size() - (gens.front()[0] == '-' ? 1 : 0);
  const auto dim = Eigen::Index{1} << n;
  testing::Mat p = testing::Mat::Identity(dim, dim);
  for (const auto& g : gens) p = p * (0.5 * (testing::Mat::Identity(dim, dim) + oracle_matrix(g)));
  return p;
}

TEST(SignedStabilizerGroup, TracksDependentSigns) {
  const auto gens = parse_words({"ZZ", "XX"});
  SignedStabilizerGroup g(2, gens);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.projector_rank(), 1u);
  EXPECT_EQ(g.sign_of(parse_word("YY")), -1);
  EXPECT_EQ(g.sign_of(parse_word("ZZ")), 1);
  EXPECT_FALSE(g.sign_of(parse_word("ZI")).has_value());
}

TEST(SignedStabilizerGroup, CanonicalFormIgnoresGeneratorChoice) {
  const auto a = parse_words({"XX", "ZZ"});
  const auto b = parse_words({"ZZ", "-YY"});
  EXPECT_EQ(SignedStabilizerGroup(2, a), SignedStabilizerGroup(2, b));
  const auto c = parse_words({"ZZ", "YY"});
  EXPECT_FALSE(SignedStabilizerGroup(2, a) == SignedStabilizerGroup(2, c));
}

TEST(SignedStabilizerGroup, RejectsInconsistentInput) {
  SignedStabilizerGroup g(1);
  g.add(parse_word("Z"));
  EXPECT_THROW(g.add(parse_word("X")), InconsistencyError);
  EXPECT_THROW(g.add(parse_word("-Z")), InconsistencyError);
  EXPECT_FALSE(g.add(parse_word("Z")));
  const auto words = parse_words({"ZZ", "XX", "YY"});
  EXPECT_THROW(SignedStabilizerGroup(2, words), InconsistencyError);
}

TEST(SignedStabilizerGroup, ProjectorMatchesOracle) {
  const std::vector<std::string> text = {"ZZZZ", "XXZZ", "ZXXI", "-IIXX"};
  std::vector<PauliWord> words;
  for (const auto& t : text) words.push_back(parse_word(t));
  SignedStabilizerGroup g(4, words);
  const auto p = to_dense(g);
  EXPECT_TRUE(same(p, oracle_projector(text)));
  EXPECT_TRUE(same(p * p, p));
  EXPECT_NEAR(p.trace().real(), static_cast<double>(g.projector_rank()), 1e-12);
}

TEST(SignedStabilizerGroup, OppositeElementMatchesTrace) {
  std::mt19937_64 rng(31);
  const std::vector<std::string> pool_text = {"ZI", "IZ", "XI", "IX", "ZZ", "XX", "YY", "XZ", "ZX", "YI", "IY"};
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    std::vector<std::string> ga, gb;
    for (int t = 0; t < 2; ++t) {
      auto& target = t == 0 ? ga : gb;
      const std::size_t want = 1 + rng() % 2;
      while (target.size() < want) {
        std::string w = pool_text[rng() % pool_text.size()];
        if (rng() & 1U) w = "-" + w;
        target.push_back(w);
      }
    }
    std::vector<PauliWord> wa, wb;
    for (auto& s : ga) wa.push_back(parse_word(s));
    for (auto& s : gb) wb.push_back(parse_word(s));
    try {
      SignedStabilizerGroup a(2, wa), b(2, wb);
      const bool trace_zero = std::abs((to_dense(a) * to_dense(b)).trace()) < 1e-12;
      EXPECT_EQ(have_opposite_element(a, b), trace_zero);
      ++checked;
    } catch (const InconsistencyError&) {
    }
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace ksp
