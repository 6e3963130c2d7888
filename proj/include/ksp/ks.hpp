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

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/gf2.hpp"
#include "ksp/pauli.hpp"
#include "ksp/stabilizer.hpp"

namespace ksp {

// ---------------------------------------------------------------------------
// Value-assignment contradictions
// ---------------------------------------------------------------------------

/// Odd number of negative contexts and every observable on an even number of
/// contexts. Either condition failing returns false.
inline bool parity_witness(const ContextSystem& sys) {
  std::vector<std::size_t> degree(sys.observables().size(), 0);
  std::size_t negative = 0;
  for (const auto& c : sys.contexts()) {
    if (c.sign < 0) ++negative;
    for (auto m : c.members) ++degree[m];
  }
  if (negative % 2 == 0) return false;
  for (auto d : degree) {
    if (d % 2 != 0) return false;
  }
  return true;
}

/// True iff no +-1 assignment to the observables makes every context's value
/// product equal its sign (one GF(2) equation per context).
inline bool gf2_infeasible(const ContextSystem& sys) {
  const std::size_t vars = sys.observables().size();
  std::vector<BitVec> rows;
  BitVec rhs(sys.contexts().size());
  for (std::size_t ci = 0; ci < sys.contexts().size(); ++ci) {
    BitVec row(vars);
    for (auto m : sys.contexts()[ci].members) row.flip(m);
    rows.push_back(std::move(row));
    if (sys.contexts()[ci].sign < 0) rhs.set(ci);
  }
  return !gf2::is_consistent(rows, rhs);
}

/// Adds every single-qubit factor as an observable of its own, and one
/// positive context per multiqubit observable tying it to its factors
/// (v(ZXXI) = v(Z_1) v(X_2) v(X_3)). The original contexts are kept.
inline ContextSystem lift_to_single_qubit(const ContextSystem& sys) {
  const std::size_t n = sys.num_qubits();
  std::vector<PauliWord> observables = sys.observables();
  std::map<std::pair<std::size_t, Letter>, std::size_t> slot_index;
  auto single = [&](std::size_t q, Letter l) {
    PauliWord w(n);
    w.set_letter(q, l);
    return w;
  };
  // Single-qubit observables already present stand for their own slot.
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].weight() == 1) {
      const std::size_t q = (observables[i].x() | observables[i].z()).first();
      slot_index[{q, observables[i].letter(q)}] = i;
    }
  }
  std::vector<std::pair<std::size_t, Letter>> new_slots;
  for (const auto& w : sys.observables()) {
    if (w.weight() < 2) continue;
    for (std::size_t q = 0; q < n; ++q) {
      const Letter l = w.letter(q);
      if (l != Letter::I && !slot_index.count({q, l})) {
        slot_index[{q, l}] = 0;
        new_slots.emplace_back(q, l);
      }
    }
  }
  std::sort(new_slots.begin(), new_slots.end());
  for (const auto& s : new_slots) {
    slot_index[s] = observables.size();
    observables.push_back(single(s.first, s.second));
  }
  std::vector<Context> contexts;
  for (std::size_t i = 0; i < sys.observables().size(); ++i) {
    const auto& w = sys.observables()[i];
    if (w.weight() < 2) continue;
    Context c;
    for (std::size_t q = 0; q < n; ++q) {
      if (w.letter(q) != Letter::I) c.members.push_back(slot_index.at({q, w.letter(q)}));
    }
    c.members.push_back(i);
    c.sign = 1;
    contexts.push_back(std::move(c));
  }
  for (const auto& c : sys.contexts()) contexts.push_back(c);
  return ContextSystem(n, std::move(observables), std::move(contexts));
}

/// -1 on the last observable, +1 elsewhere.
inline std::vector<int> default_signature(std::size_t count) {
  std::vector<int> s(count, 1);
  if (count > 0) s.back() = -1;
  return s;
}

struct GhzOptions {
  /// Largest number of single-qubit assignments enumerated exhaustively.
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 24;
};

struct GhzCheck {
  bool infeasible = false;
  bool gf2_infeasible = false;
  /// Number of single-qubit value slots (qubit, letter) in the table.
  std::size_t slots = 0;
  bool exhaustive_ran = false;
  std::uint64_t assignments = 0;
  std::uint64_t satisfying = 0;
  bool methods_agree = true;
};

/// Whether no +-1 values for the single-qubit slots reproduce the given
/// eigenvalues of a single-context table. Decided by GF(2) elimination, and
/// additionally by exhaustive enumeration when within the cap.
inline GhzCheck ghz_infeasible(const ContextSystem& sys, std::span<const int> eigenvalues,
                               const GhzOptions& options = {}) {
  if (!sys.is_single_context()) {
    throw DomainError("GHZ check needs a single context containing every observable");
  }
  const auto& rows = sys.observables();
  if (eigenvalues.size() != rows.size()) {
    throw DomainError("expected " + std::to_string(rows.size()) + " eigenvalues, got " +
                      std::to_string(eigenvalues.size()));
  }
  int prod = 1;
  for (int e : eigenvalues) {
    if (e != 1 && e != -1) throw DomainError("eigenvalues must be +1 or -1");
    prod *= e;
  }
  const int sign = sys.contexts().front().sign;
  if (prod != sign) {
    throw InconsistencyError("eigenvalue product " + std::to_string(prod) +
                             " differs from operator product sign " + std::to_string(sign));
  }
  {
    SignedStabilizerGroup group(sys.num_qubits());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      group.add(eigenvalues[i] < 0 ? rows[i].negated() : rows[i]);
    }
  }

  const std::size_t n = sys.num_qubits();
  std::map<std::pair<std::size_t, unsigned>, std::size_t> slot_of;
  for (const auto& w : rows) {
    for (std::size_t q = 0; q < n; ++q) {
      if (w.letter(q) != Letter::I) slot_of.emplace(std::pair{q, static_cast<unsigned>(w.letter(q))}, 0);
    }
  }
  std::size_t next = 0;
  for (auto& [key, idx] : slot_of) idx = next++;

  GhzCheck out;
  out.slots = slot_of.size();
  std::vector<BitVec> equations;
  BitVec rhs(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    BitVec eq(out.slots);
    for (std::size_t q = 0; q < n; ++q) {
      if (rows[r].letter(q) != Letter::I) {
        eq.set(slot_of.at({q, static_cast<unsigned>(rows[r].letter(q))}));
      }
    }
    equations.push_back(std::move(eq));
    if (eigenvalues[r] < 0) rhs.set(r);
  }
  out.gf2_infeasible = !gf2::is_consistent(equations, rhs);
  out.infeasible = out.gf2_infeasible;

  if (out.slots < 64 && rows.size() <= 64 &&
      (std::uint64_t{1} << out.slots) <= options.exhaustive_cap) {
    // Gray-code walk: flipping one slot flips the parity of every row using it.
    std::vector<std::uint64_t> touches(out.slots, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      equations[r].for_each_set([&](std::size_t s) { touches[s] |= std::uint64_t{1} << r; });
    }
    std::uint64_t target = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rhs.test(r)) target |= std::uint64_t{1} << r;
    }
    const std::uint64_t total = std::uint64_t{1} << out.slots;
    std::uint64_t parity = 0;
    std::uint64_t hits = parity == target ? 1 : 0;
    for (std::uint64_t i = 1; i < total; ++i) {
      parity ^= touches[static_cast<std::size_t>(std::countr_zero(i))];
      if (parity == target) ++hits;
    }
    out.exhaustive_ran = true;
    out.assignments = total;
    out.satisfying = hits;
    out.methods_agree = (hits == 0) == out.gf2_infeasible;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Observable tables
// ---------------------------------------------------------------------------

/// The 2N-qubit table with 2N+1 mutually commuting rows whose product is -I.
/// N = 2 gives the five four-qubit rows ZZZZ, XXZZ, ZXXI, XZIX, IIXX.
inline ContextSystem build_star_table(std::size_t half) {
  if (half < 2) throw DomainError("star table needs N >= 2, got " + std::to_string(half));
  const std::size_t n = 2 * half;
  std::vector<PauliWord> rows;
  PauliWord all_z(n), xxz(n), zxx(n), xzix(n);
  for (std::size_t q = 0; q < n; ++q) {
    all_z.set_letter(q, Letter::Z);
    xxz.set_letter(q, q < 2 ? Letter::X : Letter::Z);
  }
  zxx.set_letter(0, Letter::Z);
  zxx.set_letter(1, Letter::X);
  zxx.set_letter(2, Letter::X);
  xzix.set_letter(0, Letter::X);
  xzix.set_letter(1, Letter::Z);
  xzix.set_letter(3, Letter::X);
  rows.push_back(all_z);
  rows.push_back(xxz);
  rows.push_back(zxx);
  rows.push_back(xzix);
  // Sliding XX pairs on qubits (4,5), (5,6), ..., (2N-1, 2N), 1-based.
  for (std::size_t q = 3; q + 1 < n; ++q) {
    PauliWord w(n);
    w.set_letter(q, Letter::X);
    w.set_letter(q + 1, Letter::X);
    rows.push_back(w);
  }
  PauliWord last(n);
  last.set_letter(2, Letter::X);
  last.set_letter(n - 1, Letter::X);
  rows.push_back(last);
  return ContextSystem::single_context(std::move(rows), -1);
}

inline std::vector<PauliWord> parse_words(std::initializer_list<std::string_view> texts) {
  std::vector<PauliWord> out;
  for (auto t : texts) out.push_back(parse_word(t));
  return out;
}

/// Named reference systems used by the tests and the CLI.
inline std::map<std::string, ContextSystem> builtin_fixtures() {
  std::map<std::string, ContextSystem> out;
  out.emplace("table1-left", build_star_table(2));
  out.emplace("table1-right-6", build_star_table(3));
  out.emplace("table2-left", ContextSystem::single_context(
                                 parse_words({"ZZZZZZ", "XXXXXX", "ZXZXII", "XZIIZX", "IIXZXZ"}), -1));
  out.emplace("table2-right",
              ContextSystem::single_context(parse_words({"ZZZZZZZI", "XXXXXXIZ", "ZXZXIIZZ",
                                                         "XZIIIIXX", "IIXZZXII", "IIIIXZXX"}),
                                            -1));
  out.emplace("kite-quadruples",
              ContextSystem(4, parse_words({"IXXZ", "YYIX", "XIYY", "ZZZI", "IXXX", "YYIZ"}),
                            {Context{{0, 1, 2, 3}, -1}, Context{{4, 5, 2, 3}, 1}}));
  return out;
}

// ---------------------------------------------------------------------------
// Genuine multipartiteness
// ---------------------------------------------------------------------------

struct SubTable {
  std::vector<std::size_t> rows;     // 0-based row indices
  std::vector<std::size_t> columns;  // 0-based qubit indices
};

struct MultipartiteOptions {
  std::size_t max_qubits = 10;
  /// Upper bound on kernel vectors examined across all column subsets.
  std::uint64_t work_cap = std::uint64_t{1} << 28;
  /// Largest per-subset kernel dimension enumerated.
  std::size_t max_kernel_dim = 24;
};

struct MultipartiteReport {
  /// The full table is pairwise commuting and contradicts every assignment.
  bool is_proof = false;
  /// is_proof and no proper sub-table is itself a proof. Meaningful only when complete.
  bool genuine = false;
  bool complete = true;
  std::optional<SubTable> witness;
  std::uint64_t column_subsets = 0;
  std::uint64_t kernel_vectors = 0;
};

namespace detail {

inline PauliWord restrict_to(const PauliWord& w, const BitVec& columns) {
  return PauliWord(w.x() & columns, w.z() & columns, 0);
}

}  // namespace detail

/// Searches every column subset and every row subset of a GHZ-type table for
/// a proper sub-table that is itself a proof. Rows restricted to identity are
/// discarded. Within one column subset, candidate row subsets are exactly the
/// left-kernel elements of the (qubit, letter) incidence, which a proof must
/// be; each is then checked for commutation and a -I product.
inline MultipartiteReport is_genuinely_multipartite(std::span<const PauliWord> rows,
                                                    const MultipartiteOptions& options = {}) {
  MultipartiteReport report;
  if (rows.empty()) return report;
  const std::size_t n = rows.front().num_qubits();
  if (n > options.max_qubits || n >= 64) {
    throw ResourceError("multipartiteness search is capped at " +
                        std::to_string(options.max_qubits) + " qubits");
  }
  if (rows.size() > 64) throw ResourceError("multipartiteness search supports at most 64 rows");
  for (const auto& r : rows) {
    if (r.num_qubits() != n) throw DimensionError("rows act on different qubit counts");
  }
  const std::uint64_t full_cols = (std::uint64_t{1} << n) - 1;
  const std::uint64_t full_rows =
      rows.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows.size()) - 1;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!commutes(rows[i], rows[j])) return report;
    }
  }

  bool proper_found = false;
  // Column subsets outer, the full set first so is_proof is settled before
  // any proper column subset is examined.
  for (std::uint64_t cols = full_cols; cols > 0 && !proper_found; --cols) {
    if (cols != full_cols && !report.is_proof) return report;
    ++report.column_subsets;
    const BitVec colmask = BitVec::from_word(n, cols);
    std::vector<std::size_t> live;  // rows not restricted to identity
    std::vector<PauliWord> restricted;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      PauliWord w = detail::restrict_to(rows[r], colmask);
      if (!w.is_identity_letters()) {
        live.push_back(r);
        restricted.push_back(std::move(w));
      }
    }
    if (live.size() < 2) continue;
    std::vector<std::uint64_t> anti(live.size(), 0);
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        if (!commutes(restricted[i], restricted[j])) {
          anti[i] |= std::uint64_t{1} << j;
          anti[j] |= std::uint64_t{1} << i;
        }
      }
    }
    std::vector<BitVec> incidence;
    for (const auto& w : restricted) {
      BitVec v(3 * n);
      for (std::size_t q = 0; q < n; ++q) {
        const auto l = static_cast<unsigned>(w.letter(q));
        if (l != 0) v.set(3 * q + l - 1);
      }
      incidence.push_back(std::move(v));
    }
    const auto kernel = gf2::left_kernel(incidence);
    if (kernel.empty()) continue;
    if (kernel.size() > options.max_kernel_dim) {
      report.complete = false;
      continue;
    }
    std::vector<std::uint64_t> basis;
    for (const auto& k : kernel) basis.push_back(k.word(0));
    std::uint64_t y = 0;
    const std::uint64_t count = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < count; ++i) {
      if (++report.kernel_vectors > options.work_cap) {
        report.complete = false;
        break;
      }
      y ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
      bool commuting = true;
      for (std::uint64_t m = y; m != 0; m &= m - 1) {
        if ((anti[static_cast<std::size_t>(std::countr_zero(m))] & y) != 0) {
          commuting = false;
          break;
        }
      }
      if (!commuting) continue;
      PauliWord prod(n);
      std::uint64_t original_rows = 0;
      for (std::uint64_t m = y; m != 0; m &= m - 1) {
        const auto idx = static_cast<std::size_t>(std::countr_zero(m));
        prod = multiply(prod, restricted[idx]);
        original_rows |= std::uint64_t{1} << live[idx];
      }
      if (prod.phase() != 2) continue;
      const bool whole = cols == full_cols && original_rows == full_rows;
      if (cols == full_cols) report.is_proof = true;
      if (!whole) {
        SubTable t;
        for (std::uint64_t m = original_rows; m != 0; m &= m - 1) {
          t.rows.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        }
        for (std::size_t q = 0; q < n; ++q) {
          if ((cols >> q) & 1U) t.columns.push_back(q);
        }
        report.witness = std::move(t);
        proper_found = true;
        break;
      }
    }
  }
  report.genuine = report.is_proof && !proper_found && report.complete;
  return report;
}

inline MultipartiteReport is_genuinely_multipartite(const ContextSystem& sys,
                                                    const MultipartiteOptions& options = {}) {
  if (!sys.is_single_context()) {
    throw DomainError("multipartiteness applies to single-context (GHZ-type) systems");
  }
  return is_genuinely_multipartite(std::span<const PauliWord>(sys.observables()), options);
}

}  // namespace ksp
