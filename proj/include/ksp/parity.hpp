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
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ksp/bitvec.hpp"
#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/gf2.hpp"
#include "ksp/stabilizer.hpp"

namespace ksp {

// ---------------------------------------------------------------------------
// Projector pools
// ---------------------------------------------------------------------------

/// Projector onto a joint eigenspace, identified by its signed group.
struct StabilizerProjector {
  SignedStabilizerGroup group;
  std::uint64_t rank = 0;
  /// Contexts whose eigenspace family contains this projector.
  std::vector<std::size_t> contexts;
};

struct ProjectorPool {
  std::size_t num_qubits = 0;
  std::vector<StabilizerProjector> projectors;
  /// Projector ids belonging to each context, in sign-pattern order.
  std::vector<std::vector<std::size_t>> families;

  std::uint64_t dimension() const { return std::uint64_t{1} << num_qubits; }
  std::size_t size() const { return projectors.size(); }
};

/// One projector per consistent sign assignment of every context, merged
/// across contexts by canonical group.
inline ProjectorPool projectors_of(const ContextSystem& sys) {
  if (sys.num_qubits() >= 63) throw ResourceError("projector ranks overflow 64 bits");
  ProjectorPool pool;
  pool.num_qubits = sys.num_qubits();
  std::map<SignedStabilizerGroup, std::size_t> index;
  for (std::size_t ci = 0; ci < sys.contexts().size(); ++ci) {
    const auto words = sys.members_of(sys.contexts()[ci]);
    // Independent members carry free signs; the rest follow from them.
    std::vector<PauliWord> independent;
    {
      gf2::Eliminator e(2 * sys.num_qubits(), 0);
      for (const auto& w : words) {
        if (!e.insert(symplectic_vector(w))) independent.push_back(w);
      }
    }
    if (independent.size() >= 32) throw ResourceError("context has too many independent members");
    std::vector<std::size_t> family;
    const std::uint64_t patterns = std::uint64_t{1} << independent.size();
    for (std::uint64_t p = 0; p < patterns; ++p) {
      SignedStabilizerGroup g(sys.num_qubits());
      for (std::size_t i = 0; i < independent.size(); ++i) {
        g.add(((p >> i) & 1U) ? independent[i].negated() : independent[i]);
      }
      auto [it, inserted] = index.emplace(g, pool.projectors.size());
      if (inserted) {
        StabilizerProjector proj{g, g.projector_rank(), {}};
        pool.projectors.push_back(std::move(proj));
      }
      auto& owners = pool.projectors[it->second].contexts;
      if (owners.empty() || owners.back() != ci) owners.push_back(ci);
      family.push_back(it->second);
    }
    pool.families.push_back(std::move(family));
  }
  return pool;
}

inline bool orthogonal(const StabilizerProjector& p, const StabilizerProjector& q) {
  return have_opposite_element(p.group, q.group);
}

/// Orthogonality adjacency as one bit vector per projector.
inline std::vector<BitVec> orthogonality_graph(const ProjectorPool& pool) {
  const std::size_t m = pool.size();
  std::vector<BitVec> adj(m, BitVec(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (orthogonal(pool.projectors[i], pool.projectors[j])) {
        adj[i].set(j);
        adj[j].set(i);
      }
    }
  }
  return adj;
}

// ---------------------------------------------------------------------------
// Basis tables
// ---------------------------------------------------------------------------

enum class BasisKind { kPure, kHybrid };

struct Basis {
  std::vector<std::size_t> projectors;  // ascending ids
  BasisKind kind = BasisKind::kHybrid;
};

struct BasisTable {
  ProjectorPool pool;
  std::vector<Basis> bases;
  std::vector<BitVec> orthogonality;
  /// Enumeration stopped at the cap; the table may be missing bases.
  bool partial = false;

  std::size_t num_pure() const {
    return static_cast<std::size_t>(std::count_if(
        bases.begin(), bases.end(), [](const Basis& b) { return b.kind == BasisKind::kPure; }));
  }
  std::size_t num_hybrid() const { return bases.size() - num_pure(); }

  /// Column of the projector x basis incidence matrix for basis b.
  BitVec column(std::size_t b) const {
    BitVec c(pool.size());
    for (auto p : bases[b].projectors) c.set(p);
    return c;
  }
};

struct BasisOptions {
  std::uint64_t basis_cap = 10'000'000;
};

/// Every set of pairwise orthogonal projectors whose ranks sum to 2^n.
/// Pure bases (a whole context family) come first in context order, then
/// hybrids in lexicographic order of their projector ids.
inline BasisTable enumerate_bases(const ProjectorPool& pool, const BasisOptions& options = {}) {
  if (pool.size() == 0) throw DomainError("projector pool is empty");
  BasisTable table;
  table.pool = pool;
  table.orthogonality = orthogonality_graph(pool);
  const std::size_t m = pool.size();
  const std::uint64_t target = pool.dimension();
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> chosen;

  auto rank_sum = [&](const BitVec& set) {
    std::uint64_t s = 0;
    set.for_each_set([&](std::size_t i) { s += pool.projectors[i].rank; });
    return s;
  };
  auto recurse = [&](auto&& self, const BitVec& candidates, std::uint64_t sum) -> void {
    if (table.partial) return;
    if (sum == target) {
      found.push_back(chosen);
      if (found.size() >= options.basis_cap) table.partial = true;
      return;
    }
    if (sum + rank_sum(candidates) < target) return;
    for (std::size_t i = candidates.first(); i < m; i = candidates.next(i)) {
      const std::uint64_t r = pool.projectors[i].rank;
      if (sum + r > target) continue;
      BitVec next = candidates & table.orthogonality[i];
      // Only extend with higher ids so each clique is visited once.
      for (std::size_t j = next.first(); j < m && j <= i; j = next.next(j)) next.set(j, false);
      chosen.push_back(i);
      self(self, next, sum + r);
      chosen.pop_back();
    }
  };
  BitVec all(m);
  for (std::size_t i = 0; i < m; ++i) all.set(i);
  recurse(recurse, all, 0);

  std::vector<std::vector<std::size_t>> family_sets;
  for (auto f : pool.families) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    family_sets.push_back(std::move(f));
  }
  std::vector<Basis> pure, hybrid;
  std::vector<bool> family_used(family_sets.size(), false);
  for (auto& b : found) {
    auto it = std::find(family_sets.begin(), family_sets.end(), b);
    if (it != family_sets.end()) {
      family_used[static_cast<std::size_t>(it - family_sets.begin())] = true;
    } else {
      hybrid.push_back({std::move(b), BasisKind::kHybrid});
    }
  }
  // Pure bases in context order; two contexts sharing one family count once.
  std::vector<std::vector<std::size_t>> seen;
  for (std::size_t f = 0; f < family_sets.size(); ++f) {
    if (!family_used[f]) continue;
    if (std::find(seen.begin(), seen.end(), family_sets[f]) != seen.end()) continue;
    seen.push_back(family_sets[f]);
    pure.push_back({family_sets[f], BasisKind::kPure});
  }
  std::sort(hybrid.begin(), hybrid.end(),
            [](const Basis& a, const Basis& b) { return a.projectors < b.projectors; });
  table.bases = std::move(pure);
  for (auto& h : hybrid) table.bases.push_back(std::move(h));
  return table;
}

/// Every orthogonal pair of projectors appears together in some basis.
inline bool is_saturated(const BasisTable& table) {
  const std::size_t m = table.pool.size();
  std::vector<BitVec> cover(m, BitVec(m));
  for (const auto& b : table.bases) {
    BitVec members(m);
    for (auto p : b.projectors) members.set(p);
    for (auto p : b.projectors) cover[p] |= members;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!table.orthogonality[i].is_subset_of(cover[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Proof symbols
// ---------------------------------------------------------------------------

/// Counts of projectors by (rank, occurrences) and of bases by size.
struct ProofSymbol {
  struct ProjectorClass {
    std::uint64_t rank;
    std::size_t occurrences;
    std::size_t count;
    auto operator<=>(const ProjectorClass&) const = default;
  };
  struct BasisClass {
    std::size_t size;
    std::size_t count;
    auto operator<=>(const BasisClass&) const = default;
  };
  std::vector<ProjectorClass> projectors;  // sorted by (rank, occurrences)
  std::vector<BasisClass> bases;           // sorted by size

  auto operator<=>(const ProofSymbol&) const = default;

  std::size_t num_projectors() const {
    std::size_t s = 0;
    for (const auto& c : projectors) s += c.count;
    return s;
  }
  std::size_t num_bases() const {
    std::size_t s = 0;
    for (const auto& c : bases) s += c.count;
    return s;
  }

  /// e.g. "24-9"
  std::string short_form() const {
    return std::to_string(num_projectors()) + "-" + std::to_string(num_bases());
  }

  std::string utf8() const {
    static const char* kSup[10] = {"⁰", "¹", "²", "³", "⁴",
                                   "⁵", "⁶", "⁷", "⁸", "⁹"};
    static const char* kSub[10] = {"₀", "₁", "₂", "₃", "₄",
                                   "₅", "₆", "₇", "₈", "₉"};
    auto script = [](std::uint64_t v, const char* const* digits) {
      std::string out;
      for (char d : std::to_string(v)) out += digits[d - '0'];
      return out;
    };
    std::string s;
    for (const auto& c : projectors) {
      s += std::to_string(c.count) + script(c.rank, kSup) + script(c.occurrences, kSub);
    }
    s += "−";
    for (const auto& c : bases) s += std::to_string(c.count) + script(c.size, kSub);
    return s;
  }

  std::string ascii() const {
    std::string s;
    for (const auto& c : projectors) {
      s += std::to_string(c.count) + "^" + std::to_string(c.rank) + "_" +
           std::to_string(c.occurrences) + " ";
    }
    s += "-";
    for (const auto& c : bases) s += " " + std::to_string(c.count) + "_" + std::to_string(c.size);
    return s;
  }
};

inline ProofSymbol proof_symbol(const BasisTable& table, const std::vector<std::size_t>& basis_ids) {
  std::vector<std::size_t> occurrences(table.pool.size(), 0);
  std::map<std::size_t, std::size_t> sizes;
  for (auto b : basis_ids) {
    if (b >= table.bases.size()) throw DomainError("basis id out of range");
    for (auto p : table.bases[b].projectors) ++occurrences[p];
    ++sizes[table.bases[b].projectors.size()];
  }
  std::map<std::pair<std::uint64_t, std::size_t>, std::size_t> classes;
  for (std::size_t p = 0; p < occurrences.size(); ++p) {
    if (occurrences[p] > 0) ++classes[{table.pool.projectors[p].rank, occurrences[p]}];
  }
  ProofSymbol sym;
  for (const auto& [k, count] : classes) sym.projectors.push_back({k.first, k.second, count});
  for (const auto& [size, count] : sizes) sym.bases.push_back({size, count});
  return sym;
}

// ---------------------------------------------------------------------------
// Parity proofs
// ---------------------------------------------------------------------------

struct ParityProof {
  std::vector<std::size_t> bases;  // ascending basis ids
  ProofSymbol symbol;
  bool critical = false;
};

struct ProofCheck {
  bool odd = false;
  bool even_incidence = false;
  /// No nonempty proper subset of the bases is a parity proof.
  bool critical = false;
  /// Dropping any single basis leaves a non-proof.
  bool single_drop_critical = false;
  bool is_parity_proof() const { return odd && even_incidence; }
};

namespace detail {

inline bool even_incidence(const BasisTable& table, const std::vector<std::size_t>& ids) {
  BitVec acc(table.pool.size());
  for (auto b : ids) acc ^= table.column(b);
  return acc.none();
}

/// Rank of a set of columns, each an incidence bitset over <= 64 projectors.
inline std::size_t small_rank(std::uint64_t* cols, std::size_t count) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t v = cols[i];
    if (v == 0) continue;
    ++r;
    const std::uint64_t low = v & (~v + 1);
    for (std::size_t j = i + 1; j < count; ++j) {
      if (cols[j] & low) cols[j] ^= v;
    }
  }
  return r;
}

}  // namespace detail

/// Checks the parity conditions and both readings of criticality directly.
inline ProofCheck check_proof(const BasisTable& table, const std::vector<std::size_t>& ids) {
  ProofCheck c;
  c.odd = ids.size() % 2 == 1;
  c.even_incidence = detail::even_incidence(table, ids);
  if (!c.is_parity_proof()) return c;
  c.single_drop_critical = true;
  for (std::size_t drop = 0; drop < ids.size(); ++drop) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i != drop) rest.push_back(ids[i]);
    }
    if (rest.size() % 2 == 1 && detail::even_incidence(table, rest)) c.single_drop_critical = false;
  }
  // A proper nonempty subset in the kernel exists iff the columns have a
  // kernel of dimension above one.
  std::vector<BitVec> cols;
  for (auto b : ids) cols.push_back(table.column(b));
  c.critical = gf2::rank(cols) + 1 == ids.size();
  return c;
}

struct CensusOptions {
  /// Largest kernel dimension enumerated; beyond it the census is partial.
  std::size_t kernel_cap = 34;
  std::size_t workers = 1;
  /// Keep up to this many proofs (smallest basis count first is not
  /// guaranteed; proofs are kept in enumeration order).
  std::size_t keep = 0;
};

struct ProofCensus {
  std::uint64_t total = 0;
  std::map<ProofSymbol, std::uint64_t> by_symbol;
  std::map<std::size_t, std::uint64_t> by_basis_count;
  std::size_t kernel_dimension = 0;
  bool partial = false;
  std::vector<std::vector<std::size_t>> kept;

  std::size_t num_types() const { return by_symbol.size(); }

  /// Type with the fewest bases, then the fewest projectors.
  std::optional<ProofSymbol> smallest() const {
    std::optional<ProofSymbol> best;
    for (const auto& [sym, count] : by_symbol) {
      if (!best || std::pair(sym.num_bases(), sym.num_projectors()) <
                       std::pair(best->num_bases(), best->num_projectors())) {
        best = sym;
      }
    }
    return best;
  }
};

namespace detail {

struct CensusShard {
  std::uint64_t total = 0;
  std::map<ProofSymbol, std::uint64_t> by_symbol;
  std::map<std::size_t, std::uint64_t> by_basis_count;
  std::vector<std::vector<std::size_t>> kept;

  void merge(CensusShard&& o) {
    total += o.total;
    for (auto& [k, v] : o.by_symbol) by_symbol[k] += v;
    for (auto& [k, v] : o.by_basis_count) by_basis_count[k] += v;
    for (auto& k : o.kept) kept.push_back(std::move(k));
  }
};

}  // namespace detail

/// Enumerates every critical parity proof of a table: the odd-size minimal
/// supports in the GF(2) kernel of the projector x basis incidence matrix.
/// A kernel element x is minimal iff its columns have rank |x| - 1.
inline ProofCensus enumerate_parity_proofs(const BasisTable& table, const CensusOptions& options = {}) {
  if (table.partial) throw DomainError("parity census needs a complete basis table");
  ProofCensus census;
  const std::size_t num_bases = table.bases.size();
  if (num_bases == 0) return census;
  std::vector<BitVec> columns;
  for (std::size_t b = 0; b < num_bases; ++b) columns.push_back(table.column(b));
  const auto kernel = gf2::left_kernel(columns);
  census.kernel_dimension = kernel.size();
  if (kernel.empty()) return census;
  if (kernel.size() > options.kernel_cap || kernel.size() >= 63) {
    census.partial = true;
    return census;
  }
  if (num_bases > 64) throw ResourceError("census supports at most 64 bases");
  const bool small = table.pool.size() <= 64;

  std::vector<std::uint64_t> col64(num_bases);
  if (small) {
    for (std::size_t b = 0; b < num_bases; ++b) col64[b] = columns[b].word(0);
  }
  std::vector<std::uint64_t> basis64;
  for (const auto& k : kernel) basis64.push_back(k.word(0));

  auto is_circuit = [&](std::uint64_t x, std::size_t weight) {
    if (small) {
      std::uint64_t cols[64];
      std::size_t k = 0;
      for (std::uint64_t m = x; m != 0; m &= m - 1) cols[k++] = col64[std::countr_zero(m)];
      return detail::small_rank(cols, k) + 1 == weight;
    }
    gf2::Eliminator e(table.pool.size(), 0);
    std::size_t dependent = 0;
    for (std::uint64_t m = x; m != 0; m &= m - 1) {
      if (e.insert(columns[std::countr_zero(m)]) && ++dependent > 1) return false;
    }
    return dependent == 1;
  };

  auto analyse = [&](std::uint64_t x, detail::CensusShard& shard) {
    const auto weight = static_cast<std::size_t>(std::popcount(x));
    if (weight % 2 == 0) return;
    if (!is_circuit(x, weight)) return;
    std::vector<std::size_t> ids;
    ids.reserve(weight);
    for (std::uint64_t m = x; m != 0; m &= m - 1) ids.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    ++shard.total;
    ++shard.by_symbol[proof_symbol(table, ids)];
    ++shard.by_basis_count[weight];
    if (shard.kept.size() < options.keep) shard.kept.push_back(std::move(ids));
  };

  // Shard on the top kernel coordinates; each shard walks the low ones by Gray code.
  const std::size_t dim = basis64.size();
  const std::size_t high = std::min<std::size_t>(dim, 6);
  const std::size_t low = dim - high;
  const std::uint64_t shards = std::uint64_t{1} << high;
  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  detail::CensusShard merged;
  auto worker = [&] {
    detail::CensusShard local;
    for (std::uint64_t s = next++; s < shards; s = next++) {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < high; ++i) {
        if ((s >> i) & 1U) x ^= basis64[low + i];
      }
      if (x != 0) analyse(x, local);
      const std::uint64_t count = std::uint64_t{1} << low;
      for (std::uint64_t i = 1; i < count; ++i) {
        x ^= basis64[static_cast<std::size_t>(std::countr_zero(i))];
        analyse(x, local);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    merged.merge(std::move(local));
  };
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  census.total = merged.total;
  census.by_symbol = std::move(merged.by_symbol);
  census.by_basis_count = std::move(merged.by_basis_count);
  std::sort(merged.kept.begin(), merged.kept.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  if (merged.kept.size() > options.keep) merged.kept.resize(options.keep);
  census.kept = std::move(merged.kept);
  return census;
}

/// Critical parity proofs among the bases listed in `subset` (at most 20),
/// found by testing every subset directly: parity by incidence XOR and
/// criticality by a superset-closure sweep over all subset masks.
inline std::vector<std::vector<std::size_t>> brute_force_parity_proofs(
    const BasisTable& table, const std::vector<std::size_t>& subset) {
  const std::size_t k = subset.size();
  if (k > 20) throw ResourceError("brute-force proof enumeration is limited to 20 bases");
  std::vector<BitVec> cols;
  for (auto b : subset) cols.push_back(table.column(b));
  const std::uint64_t count = std::uint64_t{1} << k;
  // contains[mask]: some parity proof is a subset of mask.
  std::vector<std::uint8_t> is_proof(count, 0), contains(count, 0);
  std::vector<BitVec> acc(count);
  acc[0] = BitVec(table.pool.size());
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    acc[mask] = acc[mask & (mask - 1)] ^ cols[low];
    is_proof[mask] = (std::popcount(mask) % 2 == 1) && acc[mask].none();
    contains[mask] = is_proof[mask];
  }
  for (std::size_t bit = 0; bit < k; ++bit) {
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if ((mask >> bit) & 1U) contains[mask] |= contains[mask ^ (std::uint64_t{1} << bit)];
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    if (!is_proof[mask]) continue;
    bool critical = true;
    for (std::uint64_t m = mask; m != 0 && critical; m &= m - 1) {
      if (contains[mask ^ (m & (~m + 1))]) critical = false;
    }
    if (!critical) continue;
    std::vector<std::size_t> ids;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) ids.push_back(subset[std::countr_zero(m)]);
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct TwoPowerReport {
  std::size_t hybrid_bases = 0;
  std::optional<std::size_t> half_hybrid;  // H; empty when the hybrid count is odd
  std::uint64_t total = 0;
  bool holds = false;
};

/// Compares the census total with 2^H, H being half the hybrid basis count.
inline TwoPowerReport check_two_power_h(const BasisTable& table, const ProofCensus& census) {
  if (census.partial) throw DomainError("2^H check needs a complete census");
  TwoPowerReport r;
  r.hybrid_bases = table.num_hybrid();
  r.total = census.total;
  if (r.hybrid_bases % 2 == 0) {
    r.half_hybrid = r.hybrid_bases / 2;
    r.holds = *r.half_hybrid < 64 && census.total == (std::uint64_t{1} << *r.half_hybrid);
  }
  return r;
}

}  // namespace ksp
