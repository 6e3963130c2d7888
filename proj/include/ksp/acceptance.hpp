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

// Acceptance checks over the built-in fixtures. Shared by the acceptance
// test binary and the `reproduce-paper` subcommand.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ksp/context_system.hpp"
#include "ksp/ks.hpp"
#include "ksp/parity.hpp"
#include "ksp/pauli.hpp"
#include "ksp/search.hpp"
#include "ksp/stabilizer.hpp"
#include "ksp/states.hpp"

namespace ksp::acceptance {

enum class Status { kPass, kFail, kSkipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkipped: return "SKIP";
  }
  return "?";
}

struct ClaimResult {
  int id = 0;
  std::string title;
  Status status = Status::kPass;
  double seconds = 0;
  double budget_seconds = 0;
  /// One line per sub-check; failing lines start with "FAIL".
  std::vector<std::string> lines;
};

struct Options {
  std::size_t max_qubits = 10;
  std::size_t workers = 1;
  bool ascii = false;
  /// Runs only the listed claim ids when non-empty.
  std::set<int> only;
};

/// Collects sub-check outcomes for one claim.
class Recorder {
 public:
  explicit Recorder(ClaimResult& r) : r_(r) {}

  bool expect(bool ok, const std::string& what) {
    r_.lines.push_back((ok ? "ok   " : "FAIL ") + what);
    if (!ok) failed_ = true;
    return ok;
  }
  void note(const std::string& what) { r_.lines.push_back("     " + what); }
  void skip(const std::string& what) {
    r_.lines.push_back("skip " + what);
    ++skipped_;
  }
  bool failed() const { return failed_; }
  std::size_t skipped() const { return skipped_; }

 private:
  ClaimResult& r_;
  bool failed_ = false;
  std::size_t skipped_ = 0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

inline bool all_commute(std::span<const PauliWord> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!commutes(rows[i], rows[j])) return false;
    }
  }
  return true;
}

inline bool is_minus_identity(const PauliWord& w) { return w.is_identity_letters() && w.phase() == 2; }
inline bool is_plus_identity(const PauliWord& w) { return w.is_identity_letters() && w.phase() == 0; }

inline bool even_columns(std::span<const PauliWord> rows) {
  const std::size_t n = rows.front().num_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t xs = 0, zs = 0, ys = 0;
    for (const auto& r : rows) {
      const Letter l = r.letter(q);
      xs += l == Letter::X;
      zs += l == Letter::Z;
      ys += l == Letter::Y;
    }
    if (xs % 2 || zs % 2 || ys % 2) return false;
  }
  return true;
}

inline BasisTable restrict_bases(const BasisTable& table, const std::vector<std::size_t>& ids) {
  BasisTable t;
  t.pool = table.pool;
  t.orthogonality = table.orthogonality;
  for (auto b : ids) t.bases.push_back(table.bases[b]);
  return t;
}

/// Kernel census on a sub-table, ids mapped back to the full table.
inline std::vector<std::vector<std::size_t>> kernel_proofs(const BasisTable& table,
                                                           const std::vector<std::size_t>& ids) {
  CensusOptions o;
  o.keep = std::size_t{1} << 22;
  const auto census = enumerate_parity_proofs(restrict_bases(table, ids), o);
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : census.kept) {
    std::vector<std::size_t> mapped;
    for (auto b : p) mapped.push_back(ids[b]);
    std::sort(mapped.begin(), mapped.end());
    out.push_back(std::move(mapped));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline PauliWord random_word(std::size_t n, std::mt19937_64& rng) {
  PauliWord w = identity_word(n);
  for (std::size_t q = 0; q < n; ++q) w.set_letter(q, static_cast<Letter>(rng() & 3U));
  return w.with_phase(static_cast<unsigned>(rng() & 3U));
}

/// Mismatches between symplectic arithmetic and dense matrices for one pair.
inline std::size_t dense_mismatches(const PauliWord& a, const PauliWord& b) {
  const DenseMatrix da = to_dense(a), db = to_dense(b);
  std::size_t bad = 0;
  if ((da * db - to_dense(a * b)).cwiseAbs().maxCoeff() > 1e-12) ++bad;
  const bool dense_commute = (da * db - db * da).cwiseAbs().maxCoeff() < 1e-12;
  if (dense_commute != commutes(a, b)) ++bad;
  return bad;
}

/// Mismatches between group-based orthogonality and tr(PQ) = 0.
inline std::size_t orthogonality_mismatches(const ProjectorPool& pool) {
  std::vector<DenseMatrix> dense;
  for (const auto& p : pool.projectors) dense.push_back(to_dense(p.group));
  std::size_t bad = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const bool trace_zero = std::abs((dense[i] * dense[j]).trace()) < 1e-9;
      if (trace_zero != orthogonal(pool.projectors[i], pool.projectors[j])) ++bad;
    }
  }
  return bad;
}

/// Ψ6 from its Bell-pair formula on (12)(34)(56).
inline DenseState psi6_bell_pairs() {
  using B = BellLabel;
  auto t = [](double c, B a, B b, B d) {
    return ProductTerm{c, {bell_factor(a, 0, 1), bell_factor(b, 2, 3), bell_factor(d, 4, 5)}};
  };
  return from_terms(6, {t(1, B::kPhiPlus, B::kPhiMinus, B::kPhiPlus), t(1, B::kPhiPlus, B::kPsiMinus, B::kPsiPlus),
                        t(-1, B::kPsiMinus, B::kPhiMinus, B::kPsiPlus),
                        t(-1, B::kPsiMinus, B::kPsiMinus, B::kPhiPlus)});
}

/// Ψ6 from its mixed formula: computational on {1,3}, Bell on (24)(56).
inline DenseState psi6_mixed() {
  using B = BellLabel;
  auto t = [](double c, std::uint64_t bits, B a, B b) {
    return ProductTerm{c, {basis_factor({0, 2}, bits), bell_factor(a, 1, 3), bell_factor(b, 4, 5)}};
  };
  return from_terms(6, {t(1, 0b00, B::kPhiMinus, B::kPhiPlus), t(1, 0b00, B::kPsiMinus, B::kPsiPlus),
                        t(-1, 0b01, B::kPsiMinus, B::kPhiPlus), t(-1, 0b01, B::kPhiMinus, B::kPsiPlus),
                        t(1, 0b10, B::kPsiPlus, B::kPhiPlus), t(1, 0b10, B::kPhiPlus, B::kPsiPlus),
                        t(-1, 0b11, B::kPhiPlus, B::kPhiPlus), t(-1, 0b11, B::kPsiPlus, B::kPsiPlus)});
}

inline DenseState psi4_formula() {
  using B = BellLabel;
  return from_terms(4, {{1, {bell_factor(B::kPhiPlus, 0, 1), bell_factor(B::kPhiMinus, 2, 3)}},
                        {-1, {bell_factor(B::kPsiMinus, 0, 1), bell_factor(B::kPsiMinus, 2, 3)}}});
}

inline DenseState star_state(std::size_t half) {
  const auto sys = build_star_table(half);
  return *joint_eigenstate(sys, default_signature(sys.observables().size())).state;
}

inline std::string symbol_text(const ProofSymbol& s, bool ascii) { return ascii ? s.ascii() : s.utf8(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual claims
// ---------------------------------------------------------------------------

inline void claim_table1_product(Recorder& r, const Options&) {
  const auto sys = builtin_fixtures().at("table1-left");
  const auto& rows = sys.observables();
  r.expect(rows.size() == 5, "five observables");
  r.expect(detail::all_commute(rows), "pairwise commuting");
  r.expect(detail::is_minus_identity(product_of(rows)), "ordered product is -I");
}

inline void claim_ghz4(Recorder& r, const Options&) {
  const auto sys = builtin_fixtures().at("table1-left");
  const auto check = ghz_infeasible(sys, default_signature(5));
  r.expect(check.exhaustive_ran && check.assignments == 256,
           "exhaustive enumeration over " + std::to_string(check.assignments) + " assignments");
  r.expect(check.satisfying == 0, std::to_string(check.satisfying) + " satisfying assignments");
  r.expect(check.gf2_infeasible && check.methods_agree, "GF(2) elimination agrees");
}

inline void claim_star_family(Recorder& r, const Options&) {
  for (std::size_t half = 2; half <= 8; ++half) {
    const std::string tag = "N=" + std::to_string(half) + ": ";
    const auto sys = build_star_table(half);
    const auto& rows = sys.observables();
    const auto ghz = ghz_infeasible(sys, default_signature(rows.size()));
    r.expect(rows.size() == 2 * half + 1 && detail::all_commute(rows) &&
                 detail::is_minus_identity(product_of(rows)) && detail::even_columns(rows) && ghz.infeasible,
             tag + std::to_string(rows.size()) + " rows, commuting, product -I, even columns, GHZ-infeasible");
  }
}

inline void claim_multipartite(Recorder& r, const Options& o) {
  for (std::size_t half : {2, 3, 4, 5}) {
    const std::string tag = std::to_string(2 * half) + " qubits: ";
    if (2 * half > o.max_qubits) {
      r.skip(tag + "beyond --max-qubits");
      continue;
    }
    const auto report = is_genuinely_multipartite(build_star_table(half));
    r.expect(report.is_proof && report.genuine && report.complete,
             tag + "genuine after " + std::to_string(report.column_subsets) + " column subsets, " +
                 std::to_string(report.kernel_vectors) + " kernel vectors");
  }
}

inline void claim_psi4(Recorder& r, const Options&) {
  const auto sys = builtin_fixtures().at("table1-left");
  const auto eig = joint_eigenstate(sys, default_signature(5));
  r.expect(eig.state.has_value() && eig.max_residual < 1e-10,
           "unique joint eigenstate, residual " + detail::fmt(eig.max_residual));
  if (!eig.state) return;
  const auto psi4 = detail::psi4_formula();
  r.expect(eig.state->distance(psi4) < 1e-10, "matches Bell-pair formula, distance " +
                                                  detail::fmt(eig.state->distance(psi4)));
  std::size_t bell = 0, cases = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      for (int o1 = 0; o1 < 2; ++o1) {
        for (int o2 = 0; o2 < 2; ++o2) {
          ++cases;
          const auto m = measure_computational(*eig.state, {a, b}, {o1, o2});
          if (m.residual && classify_residual(*m.residual, *m.residual) == ResidualVerdict::kBellState) ++bell;
        }
      }
    }
  }
  r.expect(cases == 24 && bell == 24, std::to_string(bell) + "/" + std::to_string(cases) +
                                          " two-qubit measurements leave a Bell state");
}

inline void claim_psi6(Recorder& r, const Options& o) {
  if (o.max_qubits < 6) {
    r.skip("6 qubits beyond --max-qubits");
    return;
  }
  const auto a = detail::psi6_bell_pairs();
  const auto b = detail::psi6_mixed();
  r.expect(a.distance(b) < 1e-10, "both Bell decompositions agree, distance " + detail::fmt(a.distance(b)));
  const auto sys = build_star_table(3);
  const auto sig = default_signature(7);
  double worst = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    const auto ov = apply_word(sig[i] < 0 ? sys.observable(i).negated() : sys.observable(i), a.amplitudes());
    double res = 0;
    for (std::size_t k = 0; k < ov.size(); ++k) res += std::norm(ov[k] - a[k]);
    worst = std::max(worst, std::sqrt(res));
  }
  r.expect(worst < 1e-10, "all 7 signed eigen-equations hold, residual " + detail::fmt(worst));
  const auto eig = joint_eigenstate(sys, sig);
  r.expect(eig.state && eig.state->distance(a) < 1e-10, "equals the computed joint eigenstate");
}

inline void claim_psi8(Recorder& r, const Options& o) {
  if (o.max_qubits < 8) {
    r.skip("8 qubits beyond --max-qubits");
    return;
  }
  const auto support = bell_support(detail::star_state(4), adjacent_pairing(8));
  r.expect(support.terms == 8, std::to_string(support.terms) + " Bell-product terms");
  const double spread = support.magnitudes.empty() ? 1 : support.magnitudes.front() - support.magnitudes.back();
  r.expect(spread < 1e-10, "equal magnitudes " + detail::fmt(support.magnitudes.empty() ? 0 : support.magnitudes[0]));
}

inline void claim_table2(Recorder& r, const Options& o) {
  const auto fx = builtin_fixtures();
  for (const auto& [name, half, expected] : {std::tuple{"table2-left", 3, 5}, std::tuple{"table2-right", 4, 6}}) {
    const auto& sys = fx.at(name);
    if (sys.num_qubits() > o.max_qubits) {
      r.skip(std::string(name) + ": beyond --max-qubits");
      continue;
    }
    const auto& rows = sys.observables();
    const auto ghz = ghz_infeasible(sys, default_signature(rows.size()));
    r.expect(verify_system(sys).ok() && detail::is_minus_identity(product_of(rows)) && ghz.infeasible &&
                 rows.size() == static_cast<std::size_t>(expected),
             std::string(name) + ": " + std::to_string(rows.size()) + " rows (2N" +
                 (half == 3 ? "-1" : "-2") + "), commuting, product -I, GHZ-infeasible");
  }
}

inline void claim_kite_quadruples(Recorder& r, const Options&) {
  const auto a = parse_words({"IXXZ", "YYIX", "XIYY", "ZZZI"});
  const auto b = parse_words({"IXXX", "YYIZ", "XIYY", "ZZZI"});
  r.expect(detail::all_commute(a) && detail::is_minus_identity(product_of(a)), "{IXXZ,YYIX,XIYY,ZZZI} -> -I");
  r.expect(detail::all_commute(b) && detail::is_plus_identity(product_of(b)), "{IXXX,YYIZ,XIYY,ZZZI} -> +I");
}

inline void claim_kite_census(Recorder& r, const Options& o) {
  SearchOptions so;
  so.workers = o.workers;
  const auto found = search_completions(builtin_fixtures().at("kite-quadruples"), {3, 3, 3, 3}, so);
  r.note(std::to_string(found.systems.size()) + " inequivalent completions, " + std::to_string(found.nodes) +
         " search nodes" + (found.partial ? " (partial)" : ""));
  if (!r.expect(!found.systems.empty(), "completion search found a kite system")) return;
  const auto& sys = found.systems.front();
  const auto table = enumerate_bases(projectors_of(sys));
  r.expect(table.pool.size() == 32, std::to_string(table.pool.size()) + " projectors (32)");
  r.expect(table.bases.size() == 36 && table.num_pure() == 6 && table.num_hybrid() == 30,
           std::to_string(table.bases.size()) + " bases: " + std::to_string(table.num_pure()) + " pure, " +
               std::to_string(table.num_hybrid()) + " hybrid (36: 6 + 30)");
  CensusOptions co;
  co.workers = o.workers;
  co.keep = 64;
  const auto census = enumerate_parity_proofs(table, co);
  if (!r.expect(!census.partial, "census complete, kernel dimension " + std::to_string(census.kernel_dimension))) {
    return;
  }
  const auto best = census.smallest();
  if (!r.expect(best.has_value(), "parity proofs exist")) return;
  const auto& smallest = *best;
  const std::string expected = "12²₂12⁴₂−4₄4₆1₈";
  r.expect(smallest.utf8() == expected && census.by_basis_count.begin()->first == 9,
           "smallest proof " + smallest.short_form() + " " + detail::symbol_text(smallest, o.ascii));
  bool all_odd = true;
  for (std::size_t k = 9; k <= 17; k += 2) all_odd = all_odd && census.by_basis_count.count(k) > 0;
  std::string counts;
  for (const auto& [k, v] : census.by_basis_count) counts += " " + std::to_string(k) + ":" + std::to_string(v);
  r.expect(all_odd && census.by_basis_count.rbegin()->first == 17, "proofs at every odd basis count 9..17 (" +
                                                                     counts.substr(1) + ")");
  r.expect(census.num_types() == 33, std::to_string(census.num_types()) + " symbol types (33)");
  r.expect(census.total == 33152, std::to_string(census.total) + " critical proofs (33152)");
  const auto two = check_two_power_h(table, census);
  r.note("H = " + std::to_string(two.half_hybrid.value_or(0)) + ", 2^H = " +
         std::to_string(std::uint64_t{1} << two.half_hybrid.value_or(0)) + ", total = 2^H: " +
         (two.holds ? "yes" : "no"));
  // Cross-check on two 20-basis windows.
  for (std::size_t start : {std::size_t{0}, table.bases.size() - 20}) {
    std::vector<std::size_t> ids(20);
    std::iota(ids.begin(), ids.end(), start);
    const auto brute = brute_force_parity_proofs(table, ids);
    r.expect(brute == detail::kernel_proofs(table, ids),
             "bases " + std::to_string(start) + ".." + std::to_string(start + 19) +
                 ": kernel and brute force agree on " + std::to_string(brute.size()) + " proofs");
  }
}

inline void claim_mermin(Recorder& r, const Options& o) {
  SearchOptions so;
  so.workers = o.workers;
  const auto found = search_completions(ContextSystem(2, {}, {}), {3, 3, 3, 3, 3, 3}, so);
  r.note(std::to_string(found.systems.size()) + " inequivalent two-qubit arrays");
  bool located = false;
  for (const auto& sys : found.systems) {
    std::size_t negative = 0;
    for (const auto& c : sys.contexts()) negative += c.sign < 0;
    if (sys.observables().size() != 9 || sys.contexts().size() != 6 || negative % 2 == 0) continue;
    const auto table = enumerate_bases(projectors_of(sys));
    const auto census = enumerate_parity_proofs(table);
    for (const auto& [sym, count] : census.by_symbol) {
      if (sym.projectors.size() == 1 && sym.projectors[0].rank == 1 && sym.projectors[0].count == 18 &&
          sym.num_bases() == 9) {
        located = true;
        r.note(detail::symbol_text(sym, o.ascii) + " occurs " + std::to_string(count) + " times among " +
               std::to_string(census.total) + " proofs");
        break;
      }
    }
    if (located) break;
  }
  r.expect(located, "9-observable 6-context array with an 18-projector, 9-basis proof");
}

inline void claim_oracles(Recorder& r, const Options&) {
  std::size_t bad = 0, cases = 0;
  for (std::size_t n = 1; n <= 2; ++n) {
    std::vector<PauliWord> all;
    for (unsigned code = 0; code < (1U << (2 * n)); ++code) {
      PauliWord w = identity_word(n);
      for (std::size_t q = 0; q < n; ++q) w.set_letter(q, static_cast<Letter>((code >> (2 * q)) & 3U));
      for (unsigned ph = 0; ph < 4; ++ph) all.push_back(w.with_phase(ph));
    }
    for (const auto& a : all) {
      for (const auto& b : all) {
        bad += detail::dense_mismatches(a, b);
        ++cases;
      }
    }
  }
  std::mt19937_64 rng(20260923);
  for (std::size_t n = 3; n <= 4; ++n) {
    for (int k = 0; k < 10000; ++k) {
      bad += detail::dense_mismatches(detail::random_word(n, rng), detail::random_word(n, rng));
      ++cases;
    }
  }
  r.expect(bad == 0, "symplectic vs dense: " + std::to_string(bad) + " mismatches in " + std::to_string(cases) +
                         " products");

  std::vector<std::pair<std::string, ContextSystem>> systems;
  const auto fx = builtin_fixtures();
  for (const auto& [name, sys] : fx) {
    if (sys.num_qubits() <= 4) systems.emplace_back(name, sys);
  }
  systems.emplace_back("table1-left lifted", lift_to_single_qubit(fx.at("table1-left")));
  const auto kite = search_completions(fx.at("kite-quadruples"), {3, 3, 3, 3});
  if (!kite.systems.empty()) systems.emplace_back("kite completion", kite.systems.front());
  const auto mermin = search_completions(ContextSystem(2, {}, {}), {3, 3, 3, 3, 3, 3});
  if (!mermin.systems.empty()) systems.emplace_back("two-qubit array", mermin.systems.front());
  std::size_t orth_bad = 0, pools = 0;
  for (const auto& [name, sys] : systems) {
    orth_bad += detail::orthogonality_mismatches(projectors_of(sys));
    ++pools;
  }
  r.expect(orth_bad == 0, "orthogonality vs tr(PQ)=0: " + std::to_string(orth_bad) + " mismatches over " +
                              std::to_string(pools) + " pools");

  std::size_t tables = 0, census_bad = 0, proofs = 0;
  std::mt19937_64 pick(7);
  for (const auto& [name, sys] : systems) {
    const auto table = enumerate_bases(projectors_of(sys));
    std::vector<std::vector<std::size_t>> windows;
    std::vector<std::size_t> all(table.bases.size());
    std::iota(all.begin(), all.end(), 0);
    if (all.size() <= 20) {
      windows.push_back(all);
    } else {
      for (int k = 0; k < 3; ++k) {
        std::shuffle(all.begin(), all.end(), pick);
        windows.emplace_back(all.begin(), all.begin() + 20);
        std::sort(windows.back().begin(), windows.back().end());
      }
    }
    for (const auto& ids : windows) {
      const auto brute = brute_force_parity_proofs(table, ids);
      census_bad += brute != detail::kernel_proofs(table, ids);
      proofs += brute.size();
      ++tables;
    }
  }
  r.expect(census_bad == 0, "kernel vs brute-force census: " + std::to_string(census_bad) + " mismatches over " +
                                std::to_string(tables) + " tables (" + std::to_string(proofs) + " proofs)");
}

inline void claim_two_power(Recorder& r, const Options& o) {
  const auto sys = lift_to_single_qubit(builtin_fixtures().at("table1-left"));
  const auto table = enumerate_bases(projectors_of(sys));
  CensusOptions co;
  co.workers = o.workers;
  const auto census = enumerate_parity_proofs(table, co);
  r.note("table1-left, single-qubit contexts: " + std::to_string(table.pool.size()) + " projectors, " +
         std::to_string(table.bases.size()) + " bases (" + std::to_string(table.num_pure()) + " pure, " +
         std::to_string(table.num_hybrid()) + " hybrid), kernel dimension " +
         std::to_string(census.kernel_dimension));
  if (!r.expect(!census.partial, "census complete")) return;
  const auto two = check_two_power_h(table, census);
  r.expect(two.half_hybrid.has_value(), "H = " + std::to_string(two.half_hybrid.value_or(0)) + ", total " +
                                            std::to_string(census.total) + ", " +
                                            std::to_string(census.num_types()) + " types");
  r.note(std::string("total = 2^H: ") + (two.holds ? "yes" : "no") + "; H = 12: " +
         (two.half_hybrid == 12 ? "yes" : "no") + " (confirmatory only)");
}

// ---------------------------------------------------------------------------

struct ClaimSpec {
  int id;
  const char* title;
  double budget_seconds;
  void (*run)(Recorder&, const Options&);
};

inline const std::vector<ClaimSpec>& claims() {
  static const std::vector<ClaimSpec> list = {
      {1, "Table 1 left commutes with product -I", 1e-3, claim_table1_product},
      {2, "four-qubit GHZ infeasibility", 10e-3, claim_ghz4},
      {3, "star family N=2..8", 1.0, claim_star_family},
      {4, "genuine multipartiteness 4, 6, 8 (10) qubits", 600.0, claim_multipartite},
      {5, "Psi4 formula and Bell residuals", 1.0, claim_psi4},
      {6, "Psi6 decompositions and eigen-equations", 1.0, claim_psi6},
      {7, "Psi8 eight-term Bell support", 2.0, claim_psi8},
      {8, "Table 2 economical paradoxes", 1.0, claim_table2},
      {9, "kite quadruple products", 1e-3, claim_kite_quadruples},
      {10, "kite basis table and proof census", 1800.0, claim_kite_census},
      {11, "two-qubit array and 18-9 proof", 60.0, claim_mermin},
      {12, "oracle equivalence suite", 600.0, claim_oracles},
      {13, "2^H report for Table 1 left", 600.0, claim_two_power},
  };
  return list;
}

inline ClaimResult run_claim(const ClaimSpec& spec, const Options& options) {
  ClaimResult result;
  result.id = spec.id;
  result.title = spec.title;
  result.budget_seconds = spec.budget_seconds;
  Recorder rec(result);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    spec.run(rec, options);
  } catch (const std::exception& e) {
    rec.expect(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool any_check = std::any_of(result.lines.begin(), result.lines.end(), [](const std::string& l) {
    return l.rfind("ok", 0) == 0 || l.rfind("FAIL", 0) == 0;
  });
  if (rec.failed()) {
    result.status = Status::kFail;
  } else if (!any_check) {
    result.status = Status::kSkipped;
  } else if (result.seconds > result.budget_seconds) {
    result.status = Status::kFail;
    result.lines.push_back("FAIL runtime " + detail::fmt(result.seconds) + " s over budget " +
                           detail::fmt(result.budget_seconds) + " s");
  }
  return result;
}

inline std::vector<ClaimResult> run_all(const Options& options,
                                        const std::function<void(const ClaimResult&)>& on_result = {}) {
  std::vector<ClaimResult> out;
  for (const auto& spec : claims()) {
    if (!options.only.empty() && !options.only.count(spec.id)) continue;
    out.push_back(run_claim(spec, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace ksp::acceptance
