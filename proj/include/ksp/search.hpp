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

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/ks.hpp"
#include "ksp/pauli.hpp"

namespace ksp {

// Words on up to 16 qubits packed as x | z << n.
using WordCode = std::uint32_t;

inline WordCode encode(const PauliWord& w) {
  const std::size_t n = w.num_qubits();
  if (n > 16) throw ResourceError("word codes support at most 16 qubits");
  return static_cast<WordCode>(w.x().word(0) | (w.z().word(0) << n));
}

inline PauliWord decode(WordCode code, std::size_t n) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return PauliWord(BitVec::from_word(n, code & mask), BitVec::from_word(n, (code >> n) & mask), 0);
}

inline bool codes_commute(WordCode a, WordCode b, std::size_t n) {
  const WordCode mask = (WordCode{1} << n) - 1;
  const WordCode ax = a & mask, az = a >> n, bx = b & mask, bz = b >> n;
  return (std::popcount((ax & bz) ^ (az & bx)) & 1) == 0;
}

// ---------------------------------------------------------------------------
// Canonical forms under qubit permutation x global X/Y/Z relabelling
// ---------------------------------------------------------------------------

namespace detail {

// Letter index I=0, X=1, Z=2, Y=3 mapped through one of the six permutations
// of {X, Y, Z}.
inline constexpr std::array<std::array<unsigned, 4>, 6> kLetterPerms = {{
    {0, 1, 2, 3},  // identity
    {0, 2, 1, 3},  // X<->Z
    {0, 3, 2, 1},  // X<->Y
    {0, 1, 3, 2},  // Z<->Y
    {0, 2, 3, 1},  // X->Z->Y->X
    {0, 3, 1, 2},  // X->Y->Z->X
}};

inline WordCode transform_code(WordCode code, std::size_t n, const std::vector<std::size_t>& perm,
                               const std::array<unsigned, 4>& letters) {
  WordCode out = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const unsigned l = ((code >> q) & 1U) | (((code >> (n + q)) & 1U) << 1);
    const unsigned m = letters[l];
    const std::size_t t = perm[q];
    out |= static_cast<WordCode>(m & 1U) << t;
    out |= static_cast<WordCode>((m >> 1) & 1U) << (n + t);
  }
  return out;
}

using ContextKey = std::vector<std::vector<WordCode>>;

inline ContextKey context_key(const std::vector<std::vector<WordCode>>& contexts, std::size_t n,
                              const std::vector<std::size_t>& perm,
                              const std::array<unsigned, 4>& letters) {
  ContextKey key;
  key.reserve(contexts.size());
  for (const auto& c : contexts) {
    std::vector<WordCode> t;
    t.reserve(c.size() + 1);
    for (auto code : c) t.push_back(transform_code(code, n, perm, letters));
    std::sort(t.begin(), t.end());
    key.push_back(std::move(t));
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace detail

/// Serialised canonical form of a system: the lexicographically least
/// context list over all qubit permutations and global letter relabellings.
/// Context signs are invariant under these maps and are appended unchanged
/// as a sorted multiset. Systems on more than 8 qubits are keyed as given.
inline std::string canonical_key(const ContextSystem& sys) {
  const std::size_t n = sys.num_qubits();
  std::vector<std::vector<WordCode>> contexts;
  std::vector<int> signs;
  for (const auto& c : sys.contexts()) {
    std::vector<WordCode> codes;
    for (auto m : c.members) codes.push_back(encode(sys.observable(m)));
    contexts.push_back(std::move(codes));
    signs.push_back(c.sign);
  }
  std::sort(signs.begin(), signs.end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  detail::ContextKey best;
  bool have = false;
  if (n <= 8) {
    do {
      for (const auto& letters : detail::kLetterPerms) {
        auto key = detail::context_key(contexts, n, perm, letters);
        if (!have || key < best) {
          best = std::move(key);
          have = true;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    best = detail::context_key(contexts, n, perm, detail::kLetterPerms[0]);
  }
  std::string s = std::to_string(n) + ":";
  for (const auto& c : best) {
    s += "[";
    for (auto code : c) s += decode(code, n).render() + ",";
    s += "]";
  }
  s += "/";
  for (int sg : signs) s += sg < 0 ? "-" : "+";
  return s;
}

// ---------------------------------------------------------------------------
// Completion search
// ---------------------------------------------------------------------------

struct SearchOptions {
  /// Maximum number of search nodes before stopping with partial results.
  std::uint64_t budget = 200'000'000;
  std::size_t workers = 1;
  /// Largest qubit count for which the full word universe is enumerated.
  std::size_t max_qubits = 6;
};

struct SearchResult {
  std::vector<ContextSystem> systems;
  bool partial = false;
  std::uint64_t nodes = 0;
};

/// All contexts of `size` mutually commuting words over n qubits whose
/// product is +-I and whose first size-1 members are independent. Members are
/// sorted codes; the sign is the product sign.
struct CandidateContext {
  std::vector<WordCode> members;
  int sign = 1;
};

inline std::vector<CandidateContext> enumerate_contexts(std::size_t n, std::size_t size) {
  if (size < 2) throw DomainError("contexts need at least two members");
  const WordCode universe = static_cast<WordCode>(1) << (2 * n);
  std::vector<CandidateContext> out;
  std::vector<WordCode> chosen;
  std::vector<WordCode> span{0};  // all XOR combinations of chosen
  auto recurse = [&](auto&& self, WordCode start) -> void {
    if (chosen.size() + 1 == size) {
      WordCode last = 0;
      for (auto c : chosen) last ^= c;
      if (last <= chosen.back()) return;
      CandidateContext cand;
      cand.members = chosen;
      cand.members.push_back(last);
      std::vector<PauliWord> words;
      for (auto c : cand.members) words.push_back(decode(c, n));
      cand.sign = product_of(words).sign();
      out.push_back(std::move(cand));
      return;
    }
    for (WordCode w = start; w < universe; ++w) {
      bool ok = true;
      for (auto c : chosen) {
        if (!codes_commute(c, w, n)) {
          ok = false;
          break;
        }
      }
      if (!ok || std::find(span.begin(), span.end(), w) != span.end()) continue;
      chosen.push_back(w);
      const std::size_t old = span.size();
      for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ w);
      self(self, w + 1);
      span.resize(old);
      chosen.pop_back();
    }
  };
  recurse(recurse, 1);
  return out;
}

/// Adds contexts of the requested sizes to `seed` so that the result has an
/// odd number of negative contexts and every observable lies on an even
/// number of contexts. Results are deduplicated up to qubit permutation and
/// X/Y/Z relabelling and sorted by canonical key.
inline SearchResult search_completions(const ContextSystem& seed, std::vector<std::size_t> shape,
                                       const SearchOptions& options = {}) {
  SearchResult result;
  if (!verify_system(seed).ok()) return result;
  const std::size_t n = seed.num_qubits();
  if (n > options.max_qubits) {
    throw ResourceError("completion search enumerates all words and is capped at " +
                        std::to_string(options.max_qubits) + " qubits");
  }
  std::sort(shape.begin(), shape.end());

  // Candidate pool per distinct size, excluding contexts already in the seed.
  std::set<std::vector<WordCode>> seed_contexts;
  for (const auto& c : seed.contexts()) {
    std::vector<WordCode> codes;
    for (auto m : c.members) codes.push_back(encode(seed.observable(m)));
    std::sort(codes.begin(), codes.end());
    seed_contexts.insert(codes);
  }
  std::vector<CandidateContext> pool;
  for (std::size_t size : std::set<std::size_t>(shape.begin(), shape.end())) {
    for (auto& c : enumerate_contexts(n, size)) {
      if (!seed_contexts.count(c.members)) pool.push_back(std::move(c));
    }
  }
  const WordCode universe = static_cast<WordCode>(1) << (2 * n);
  std::vector<std::vector<std::uint32_t>> containing(universe);
  for (std::uint32_t i = 0; i < pool.size(); ++i) {
    for (auto m : pool[i].members) containing[m].push_back(i);
  }

  std::vector<std::uint8_t> seed_parity(universe, 0);
  int seed_negative = 0;
  for (const auto& c : seed.contexts()) {
    if (c.sign < 0) seed_negative ^= 1;
    for (auto m : c.members) seed_parity[encode(seed.observable(m))] ^= 1;
  }

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::mutex mu;
  std::map<std::string, std::vector<std::uint32_t>> found;  // canonical key -> chosen
  std::map<std::string, std::string> found_repr;

  auto build = [&](const std::vector<std::uint32_t>& chosen) {
    std::vector<PauliWord> observables = seed.observables();
    std::vector<WordCode> fresh;
    for (auto ci : chosen) {
      for (auto m : pool[ci].members) {
        if (!seed.index_of(decode(m, n))) fresh.push_back(m);
      }
    }
    std::sort(fresh.begin(), fresh.end(), [&](WordCode a, WordCode b) {
      return decode(a, n).render() < decode(b, n).render();
    });
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    for (auto f : fresh) observables.push_back(decode(f, n));
    std::vector<Context> contexts = seed.contexts();
    ContextSystem tmp(n, observables, {});
    for (auto ci : chosen) {
      Context c;
      for (auto m : pool[ci].members) c.members.push_back(*tmp.index_of(decode(m, n)));
      c.sign = pool[ci].sign;
      contexts.push_back(std::move(c));
    }
    return ContextSystem(n, std::move(observables), std::move(contexts));
  };

  auto record = [&](std::vector<std::uint32_t> chosen) {
    std::sort(chosen.begin(), chosen.end());
    ContextSystem sys = build(chosen);
    std::string key = canonical_key(sys);
    std::string repr;
    for (auto ci : chosen) repr += std::to_string(ci) + ",";
    std::lock_guard<std::mutex> lock(mu);
    auto it = found_repr.find(key);
    if (it == found_repr.end() || repr < it->second) {
      found_repr[key] = repr;
      found[key] = std::move(chosen);
    }
  };

  struct State {
    std::vector<std::uint8_t> parity;
    std::set<WordCode> odd;
    int negative = 0;
    std::vector<std::size_t> remaining;  // sorted sizes still to place
    std::vector<std::uint32_t> chosen;
  };

  auto apply = [&](State& s, std::uint32_t ci) {
    for (auto m : pool[ci].members) {
      s.parity[m] ^= 1;
      if (s.parity[m]) {
        s.odd.insert(m);
      } else {
        s.odd.erase(m);
      }
    }
    if (pool[ci].sign < 0) s.negative ^= 1;
    s.remaining.erase(std::find(s.remaining.begin(), s.remaining.end(), pool[ci].members.size()));
    s.chosen.push_back(ci);
  };
  auto undo = [&](State& s, std::uint32_t ci) {
    for (auto m : pool[ci].members) {
      s.parity[m] ^= 1;
      if (s.parity[m]) {
        s.odd.insert(m);
      } else {
        s.odd.erase(m);
      }
    }
    if (pool[ci].sign < 0) s.negative ^= 1;
    s.remaining.insert(std::upper_bound(s.remaining.begin(), s.remaining.end(),
                                        pool[ci].members.size()),
                       pool[ci].members.size());
    s.chosen.pop_back();
  };
  auto usable = [&](const State& s, std::uint32_t ci) {
    if (std::find(s.chosen.begin(), s.chosen.end(), ci) != s.chosen.end()) return false;
    return std::binary_search(s.remaining.begin(), s.remaining.end(), pool[ci].members.size());
  };

  // Branches on the lowest odd-degree word; with none odd, picks a free
  // context above the last free pick.
  auto dfs = [&](auto&& self, State& s, std::int64_t last_free) -> void {
    if (exhausted.load(std::memory_order_relaxed)) return;
    if (nodes.fetch_add(1, std::memory_order_relaxed) >= options.budget) {
      exhausted = true;
      return;
    }
    const std::size_t capacity = std::accumulate(s.remaining.begin(), s.remaining.end(), std::size_t{0});
    if (s.odd.size() > capacity) return;
    if (s.remaining.empty()) {
      if (s.odd.empty() && s.negative == 1) record(s.chosen);
      return;
    }
    if (!s.odd.empty()) {
      const WordCode v = *s.odd.begin();
      for (auto ci : containing[v]) {
        if (!usable(s, ci)) continue;
        apply(s, ci);
        self(self, s, last_free);
        undo(s, ci);
      }
      return;
    }
    for (std::uint32_t ci = static_cast<std::uint32_t>(last_free + 1); ci < pool.size(); ++ci) {
      if (!usable(s, ci)) continue;
      apply(s, ci);
      self(self, s, ci);
      undo(s, ci);
    }
  };

  State root;
  root.parity = seed_parity;
  for (WordCode w = 0; w < universe; ++w) {
    if (seed_parity[w]) root.odd.insert(w);
  }
  root.negative = seed_negative;
  root.remaining = shape;

  // Top-level branches become independent work units.
  std::vector<std::uint32_t> top;
  const bool forced = !root.odd.empty();
  if (forced) {
    for (auto ci : containing[*root.odd.begin()]) {
      if (usable(root, ci)) top.push_back(ci);
    }
  } else {
    for (std::uint32_t ci = 0; ci < pool.size(); ++ci) {
      if (usable(root, ci)) top.push_back(ci);
    }
  }
  if (shape.empty()) {
    if (root.odd.empty() && root.negative == 1) record({});
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      State s = root;
      for (std::size_t i = next++; i < top.size(); i = next++) {
        apply(s, top[i]);
        dfs(dfs, s, forced ? -1 : static_cast<std::int64_t>(top[i]));
        undo(s, top[i]);
      }
    };
    const std::size_t workers = std::max<std::size_t>(1, options.workers);
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
  }

  result.nodes = nodes.load();
  result.partial = exhausted.load();
  for (const auto& [key, chosen] : found) result.systems.push_back(build(chosen));
  return result;
}

}  // namespace ksp
