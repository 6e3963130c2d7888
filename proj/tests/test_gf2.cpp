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

#include "ksp/bitvec.hpp"
#include "ksp/gf2.hpp"

namespace ksp {
namespace {

std::vector<BitVec> random_rows(std::size_t count, std::size_t width, std::mt19937_64& rng) {
  std::vector<BitVec> rows;
  for (std::size_t i = 0; i < count; ++i) {
    BitVec v(width);
    for (std::size_t b = 0; b < width; ++b) v.set(b, rng() & 1U);
    rows.push_back(v);
  }
  return rows;
}

// Rank by brute force: size of the span, computed by enumerating all sums.
std::size_t span_rank(const std::vector<BitVec>& rows) {
  std::vector<BitVec> span{BitVec(rows.front().size())};
  for (const auto& r : rows) {
    bool fresh = true;
    for (const auto& s : span) {
      if ((s ^ r).none()) fresh = false;
    }
    if (!fresh) continue;
    const std::size_t old = span.size();
    for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ r);
  }
  std::size_t r = 0;
  while ((std::size_t{1} << r) < span.size()) ++r;
  return r;
}

TEST(BitVec, BasicOperations) {
  BitVec v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3u);
  EXPECT_EQ(v.first(), 0u);
  EXPECT_EQ(v.next(0), 64u);
  EXPECT_EQ(v.next(64), 129u);
  EXPECT_EQ(v.next(129), 130u);
  v.flip(64);
  EXPECT_FALSE(v.test(64));
  BitVec w(130);
  w.set(0);
  EXPECT_TRUE(w.is_subset_of(v));
  EXPECT_EQ(and_count(v, w), 1u);
}

TEST(Gf2, RankMatchesSpanEnumeration) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const auto rows = random_rows(1 + rng() % 8, 1 + rng() % 10, rng);
    EXPECT_EQ(gf2::rank(rows), span_rank(rows));
  }
}

TEST(Gf2, LeftKernelIsExactlyTheDependencies) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 1 + rng() % 10;
    const auto rows = random_rows(m, 1 + rng() % 6, rng);
    const auto kernel = gf2::left_kernel(rows);
    EXPECT_EQ(kernel.size(), m - gf2::rank(rows));
    for (const auto& c : kernel) {
      BitVec sum(rows.front().size());
      c.for_each_set([&](std::size_t i) { sum ^= rows[i]; });
      EXPECT_TRUE(sum.none());
    }
    EXPECT_EQ(gf2::rank(kernel), kernel.size());
    // Every dependency is in the kernel's span.
    std::size_t deps = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      BitVec sum(rows.front().size());
      for (std::size_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1U) sum ^= rows[i];
      }
      deps += sum.none();
    }
    EXPECT_EQ(deps + 1, std::size_t{1} << kernel.size());
  }
}

TEST(Gf2, ConsistencyMatchesBruteForce) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 1 + rng() % 6, vars = 1 + rng() % 6;
    const auto rows = random_rows(m, vars, rng);
    BitVec rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs.set(i, rng() & 1U);
    bool solvable = false;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << vars) && !solvable; ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        std::size_t dot = 0;
        for (std::size_t b = 0; b < vars; ++b) dot += rows[i].test(b) && ((x >> b) & 1U);
        ok = (dot & 1U) == static_cast<std::size_t>(rhs.test(i));
      }
      solvable = ok;
    }
    EXPECT_EQ(gf2::is_consistent(rows, rhs), solvable);
  }
}

}  // namespace
}  // namespace ksp
