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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ksp/context_system.hpp"
#include "ksp/error.hpp"
#include "ksp/pauli.hpp"
#include "ksp/stabilizer.hpp"

namespace ksp {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr std::size_t kDefaultDenseStateCap = 14;

/// Bit of the computational-basis index holding qubit q; qubit 0 (printed
/// as qubit 1) is the most significant.
inline std::uint64_t qubit_bit(std::size_t q, std::size_t n) { return std::uint64_t{1} << (n - 1 - q); }

/// Unit-norm state vector with its global phase fixed so the first
/// non-negligible amplitude is real and positive.
class DenseState {
 public:
  DenseState() = default;

  /// Normalises and fixes the global phase. Throws on a zero vector.
  static DenseState from_amplitudes(std::size_t num_qubits, Amplitudes amps) {
    if (amps.size() != (std::size_t{1} << num_qubits)) {
      throw DimensionError("amplitude vector length does not match 2^n");
    }
    double norm = 0;
    for (const auto& a : amps) norm += std::norm(a);
    norm = std::sqrt(norm);
    if (norm < 1e-14) throw DomainError("cannot normalise the zero vector");
    std::size_t lead = 0;
    while (lead < amps.size() && std::abs(amps[lead]) < 1e-9 * norm) ++lead;
    const Complex phase = std::conj(amps[lead]) / std::abs(amps[lead]);
    for (auto& a : amps) a *= phase / norm;
    DenseState s;
    s.n_ = num_qubits;
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  const Amplitudes& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  /// Largest amplitude difference, after both states are phase-fixed.
  double distance(const DenseState& o) const {
    if (o.n_ != n_) throw DimensionError("states on different qubit counts");
    double d = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) d = std::max(d, std::abs(amps_[i] - o.amps_[i]));
    return d;
  }

 private:
  std::size_t n_ = 0;
  Amplitudes amps_;
};

/// word |psi>, computed from the X^x Z^z form of the word.
inline Amplitudes apply_word(const PauliWord& word, std::span<const Complex> amps) {
  const std::size_t n = word.num_qubits();
  if (amps.size() != (std::size_t{1} << n)) throw DimensionError("word and state sizes differ");
  std::uint64_t xm = 0, zm = 0;
  word.x().for_each_set([&](std::size_t q) { xm |= qubit_bit(q, n); });
  word.z().for_each_set([&](std::size_t q) { zm |= qubit_bit(q, n); });
  static const Complex kPhase[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  const Complex phase = kPhase[word.xz_phase()];
  Amplitudes out(amps.size());
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const double s = (std::popcount(zm & b) & 1) ? -1.0 : 1.0;
    out[b ^ xm] = phase * s * amps[b];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Joint eigenstates
// ---------------------------------------------------------------------------

struct EigenstateResult {
  /// Present when the signed words fix a unique state.
  std::optional<DenseState> state;
  std::uint64_t eigenspace_dimension = 0;
  /// max_i || s_i O_i psi - psi || for the returned state.
  double max_residual = 0;
};

/// Common eigenstate of signed Hermitian words, found by projecting basis
/// vectors with prod (I + s_i O_i) / 2 until one survives.
inline EigenstateResult joint_eigenstate(std::size_t num_qubits, std::span<const PauliWord> signed_words,
                                         std::size_t cap = kDefaultDenseStateCap) {
  if (num_qubits > cap) {
    throw ResourceError("dense state on " + std::to_string(num_qubits) + " qubits exceeds cap of " +
                        std::to_string(cap));
  }
  SignedStabilizerGroup group(num_qubits, signed_words);
  EigenstateResult r;
  r.eigenspace_dimension = group.projector_rank();
  if (group.size() != num_qubits) return r;
  const std::size_t dim = std::size_t{1} << num_qubits;
  for (std::size_t seed = 0; seed < dim; ++seed) {
    Amplitudes v(dim, Complex(0));
    v[seed] = 1;
    for (const auto& g : group.generators()) {
      Amplitudes gv = apply_word(g, v);
      for (std::size_t i = 0; i < dim; ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    double norm = 0;
    for (const auto& a : v) norm += std::norm(a);
    if (norm > 1e-6) {
      r.state = DenseState::from_amplitudes(num_qubits, std::move(v));
      break;
    }
  }
  for (const auto& w : signed_words) {
    const Amplitudes wv = apply_word(w, r.state->amplitudes());
    double res = 0;
    for (std::size_t i = 0; i < dim; ++i) res += std::norm(wv[i] - r.state->amplitudes()[i]);
    r.max_residual = std::max(r.max_residual, std::sqrt(res));
  }
  return r;
}

/// Joint eigenstate of a single-context system with the given eigenvalues.
inline EigenstateResult joint_eigenstate(const ContextSystem& sys, std::span<const int> eigenvalues,
                                         std::size_t cap = kDefaultDenseStateCap) {
  if (eigenvalues.size() != sys.observables().size()) {
    throw DomainError("expected one eigenvalue per observable");
  }
  std::vector<PauliWord> signed_words;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] != 1 && eigenvalues[i] != -1) throw DomainError("eigenvalues must be +1 or -1");
    signed_words.push_back(eigenvalues[i] < 0 ? sys.observable(i).negated() : sys.observable(i));
  }
  return joint_eigenstate(sys.num_qubits(), signed_words, cap);
}

// ---------------------------------------------------------------------------
// Bell-pair decompositions
// ---------------------------------------------------------------------------

enum class BellLabel : std::uint8_t { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

inline std::string bell_name(BellLabel l, bool ascii = false) {
  static const char* kUtf8[4] = {"Φ+", "Φ-", "Ψ+", "Ψ-"};
  static const char* kAscii[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};
  return (ascii ? kAscii : kUtf8)[static_cast<unsigned>(l)];
}

/// Amplitudes of a Bell state over |00>, |01>, |10>, |11> (first qubit high).
inline std::array<double, 4> bell_vector(BellLabel l) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (l) {
    case BellLabel::kPhiPlus: return {h, 0, 0, h};
    case BellLabel::kPhiMinus: return {h, 0, 0, -h};
    case BellLabel::kPsiPlus: return {0, h, h, 0};
    case BellLabel::kPsiMinus: return {0, h, -h, 0};
  }
  return {};
}

/// Disjoint qubit pairs, 0-based.
using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

inline void validate_pairing(const Pairing& pairing, std::size_t n) {
  std::vector<bool> used(n, false);
  for (const auto& [a, b] : pairing) {
    if (a >= n || b >= n || a == b || used[a] || used[b]) {
      throw DomainError("pairing must cover every qubit exactly once");
    }
    used[a] = used[b] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw DomainError("pairing must cover every qubit exactly once");
  }
}

/// (1,2)(3,4)... in 0-based form.
inline Pairing adjacent_pairing(std::size_t n) {
  Pairing p;
  for (std::size_t q = 0; q + 1 < n; q += 2) p.emplace_back(q, q + 1);
  return p;
}

struct BellDecomposition {
  std::size_t num_qubits = 0;
  Pairing pairing;
  /// Coefficient of each product of Bell states, one label per pair.
  std::map<std::vector<BellLabel>, Complex> coefficients;
};

namespace detail {

// Rotates the amplitudes of one pair between the computational and Bell bases.
// Bell label l is stored at the pair bits (l >> 1, l & 1). The change of
// basis is real orthogonal, so `inverse` applies the transpose.
inline void bell_rotate(Amplitudes& amps, std::size_t n, std::size_t a, std::size_t b, bool inverse) {
  const std::uint64_t ba = qubit_bit(a, n), bb = qubit_bit(b, n);
  std::array<std::array<double, 4>, 4> m{};
  for (unsigned l = 0; l < 4; ++l) m[l] = bell_vector(static_cast<BellLabel>(l));
  auto index = [&](std::uint64_t base, unsigned k) {
    return base | ((k & 2U) ? ba : 0) | ((k & 1U) ? bb : 0);
  };
  for (std::uint64_t base = 0; base < amps.size(); ++base) {
    if ((base & (ba | bb)) != 0) continue;
    Complex in[4], out[4];
    for (unsigned k = 0; k < 4; ++k) in[k] = amps[index(base, k)];
    for (unsigned r = 0; r < 4; ++r) {
      out[r] = 0;
      for (unsigned k = 0; k < 4; ++k) out[r] += (inverse ? m[k][r] : m[r][k]) * in[k];
    }
    for (unsigned k = 0; k < 4; ++k) amps[index(base, k)] = out[k];
  }
}

}  // namespace detail

/// Coefficients of `state` in the product Bell basis of the given pairing.
/// Coefficients with magnitude below `drop` are omitted.
inline BellDecomposition bell_decompose(const DenseState& state, const Pairing& pairing,
                                        double drop = 1e-14) {
  const std::size_t n = state.num_qubits();
  validate_pairing(pairing, n);
  Amplitudes amps = state.amplitudes();
  for (const auto& [a, b] : pairing) detail::bell_rotate(amps, n, a, b, false);
  BellDecomposition d;
  d.num_qubits = n;
  d.pairing = pairing;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) < drop) continue;
    std::vector<BellLabel> labels;
    for (const auto& [a, b] : pairing) {
      const unsigned hi = (i & qubit_bit(a, n)) ? 2U : 0U;
      const unsigned lo = (i & qubit_bit(b, n)) ? 1U : 0U;
      labels.push_back(static_cast<BellLabel>(hi | lo));
    }
    d.coefficients.emplace(std::move(labels), amps[i]);
  }
  return d;
}

/// Amplitude vector sum_k c_k |B_k>, unnormalised.
inline Amplitudes reconstruct(const BellDecomposition& d) {
  const std::size_t n = d.num_qubits;
  Amplitudes amps(std::size_t{1} << n, Complex(0));
  for (const auto& [labels, c] : d.coefficients) {
    std::uint64_t i = 0;
    for (std::size_t p = 0; p < d.pairing.size(); ++p) {
      const auto l = static_cast<unsigned>(labels[p]);
      if (l & 2U) i |= qubit_bit(d.pairing[p].first, n);
      if (l & 1U) i |= qubit_bit(d.pairing[p].second, n);
    }
    amps[i] = c;
  }
  for (auto it = d.pairing.rbegin(); it != d.pairing.rend(); ++it) {
    detail::bell_rotate(amps, n, it->first, it->second, true);
  }
  return amps;
}

struct BellSupport {
  std::size_t terms = 0;
  std::vector<double> magnitudes;  // descending
};

inline BellSupport bell_support(const DenseState& state, const Pairing& pairing, double threshold = 1e-10) {
  BellSupport s;
  for (const auto& [labels, c] : bell_decompose(state, pairing, threshold).coefficients) {
    ++s.terms;
    s.magnitudes.push_back(std::abs(c));
  }
  std::sort(s.magnitudes.rbegin(), s.magnitudes.rend());
  return s;
}

/// One tensor factor: a state on the listed qubits (first listed is the
/// most significant within `amplitudes`).
struct Factor {
  std::vector<std::size_t> qubits;
  Amplitudes amplitudes;
};

inline Factor bell_factor(BellLabel l, std::size_t a, std::size_t b) {
  const auto v = bell_vector(l);
  return {{a, b}, {v[0], v[1], v[2], v[3]}};
}

/// |bits> on the listed qubits, bits given most significant first.
inline Factor basis_factor(std::vector<std::size_t> qubits, std::uint64_t bits) {
  Amplitudes a(std::size_t{1} << qubits.size(), Complex(0));
  a[bits] = 1;
  return {std::move(qubits), std::move(a)};
}

struct ProductTerm {
  Complex coefficient;
  std::vector<Factor> factors;
};

/// Normalised sum of tensor-product terms whose factors cover all qubits.
inline DenseState from_terms(std::size_t n, const std::vector<ProductTerm>& terms) {
  Amplitudes total(std::size_t{1} << n, Complex(0));
  for (const auto& t : terms) {
    Amplitudes prod{t.coefficient};
    std::vector<std::size_t> order;
    for (const auto& f : t.factors) {
      Amplitudes next(prod.size() * f.amplitudes.size());
      for (std::size_t i = 0; i < prod.size(); ++i) {
        for (std::size_t j = 0; j < f.amplitudes.size(); ++j) next[i * f.amplitudes.size() + j] = prod[i] * f.amplitudes[j];
      }
      prod = std::move(next);
      order.insert(order.end(), f.qubits.begin(), f.qubits.end());
    }
    if (order.size() != n) throw DomainError("product term does not cover every qubit");
    for (std::uint64_t i = 0; i < prod.size(); ++i) {
      std::uint64_t idx = 0;
      for (std::size_t k = 0; k < order.size(); ++k) {
        if ((i >> (order.size() - 1 - k)) & 1U) idx |= qubit_bit(order[k], n);
      }
      total[idx] += prod[i];
    }
  }
  return DenseState::from_amplitudes(n, std::move(total));
}

// ---------------------------------------------------------------------------
// Measurement and entanglement
// ---------------------------------------------------------------------------

struct MeasurementOutcome {
  double probability = 0;
  /// State of the unmeasured qubits (in ascending order); absent when the
  /// outcome has zero probability or every qubit was measured.
  std::optional<DenseState> residual;
};

/// Projects the listed qubits onto |outcome> (outcome[k] for qubits[k]).
inline MeasurementOutcome measure_computational(const DenseState& state, const std::vector<std::size_t>& qubits,
                                                const std::vector<int>& outcome) {
  const std::size_t n = state.num_qubits();
  if (qubits.size() != outcome.size()) throw DomainError("outcome length must match measured qubits");
  std::uint64_t mask = 0, want = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (qubits[k] >= n) throw DomainError("measured qubit out of range");
    if ((mask & qubit_bit(qubits[k], n)) != 0) throw DomainError("qubit measured twice");
    mask |= qubit_bit(qubits[k], n);
    if (outcome[k] != 0 && outcome[k] != 1) throw DomainError("outcomes must be 0 or 1");
    if (outcome[k]) want |= qubit_bit(qubits[k], n);
  }
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n; ++q) {
    if ((mask & qubit_bit(q, n)) == 0) rest.push_back(q);
  }
  MeasurementOutcome out;
  Amplitudes branch(std::size_t{1} << rest.size(), Complex(0));
  for (std::uint64_t b = 0; b < state.amplitudes().size(); ++b) {
    if ((b & mask) != want) continue;
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (b & qubit_bit(rest[k], n)) r |= qubit_bit(k, rest.size());
    }
    branch[r] = state[b];
    out.probability += std::norm(state[b]);
  }
  if (out.probability > 1e-14 && !rest.empty()) {
    out.residual = DenseState::from_amplitudes(rest.size(), std::move(branch));
  }
  return out;
}

/// Sorted eigenvalues (descending) of the reduced density matrix on `subset`.
inline std::vector<double> reduced_spectrum(const DenseState& state, const std::vector<std::size_t>& subset) {
  const std::size_t n = state.num_qubits();
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(subset.begin(), subset.end(), q) == subset.end()) rest.push_back(q);
  }
  const Eigen::Index da = Eigen::Index{1} << subset.size(), db = Eigen::Index{1} << rest.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(da, db);
  for (std::uint64_t b = 0; b < state.amplitudes().size(); ++b) {
    std::uint64_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < subset.size(); ++k) {
      if (b & qubit_bit(subset[k], n)) ia |= qubit_bit(k, subset.size());
    }
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (b & qubit_bit(rest[k], n)) ib |= qubit_bit(k, rest.size());
    }
    m(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)) = state[b];
  }
  const Eigen::MatrixXcd rho = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + da);
  for (auto& e : ev) {
    if (std::abs(e) < 1e-13) e = 0;
  }
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

/// For each subset size k <= n/2, the sorted list of reduced spectra over all
/// k-qubit subsets. Local-unitary invariant.
using EntanglementProfile = std::map<std::size_t, std::vector<std::vector<double>>>;

inline EntanglementProfile entanglement_profile(const DenseState& state, std::size_t cap = kDefaultDenseStateCap) {
  const std::size_t n = state.num_qubits();
  if (n > cap) throw ResourceError("entanglement profile exceeds dense cap");
  EntanglementProfile profile;
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    auto& list = profile[k];
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> subset;
      for (std::size_t q = 0; q < n; ++q) {
        if (pick[q]) subset.push_back(q);
      }
      auto spec = reduced_spectrum(state, subset);
      for (auto& e : spec) e = std::round(e * 1e12) / 1e12;
      list.push_back(std::move(spec));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(list.begin(), list.end());
  }
  return profile;
}

inline bool profiles_match(const EntanglementProfile& a, const EntanglementProfile& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, list] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second.size() != list.size()) return false;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].size() != it->second[i].size()) return false;
      for (std::size_t j = 0; j < list[i].size(); ++j) {
        if (std::abs(list[i][j] - it->second[i][j]) > tol) return false;
      }
    }
  }
  return true;
}

enum class ResidualVerdict { kBellState, kProfileMatch, kMismatch };

inline std::string to_string(ResidualVerdict v) {
  switch (v) {
    case ResidualVerdict::kBellState: return "bell-state";
    case ResidualVerdict::kProfileMatch: return "profile-match";
    case ResidualVerdict::kMismatch: return "mismatch";
  }
  return "?";
}

/// "bell-state" for a two-qubit residual with maximally mixed marginals,
/// else "profile-match" when its entanglement profile equals the
/// reference's, else "mismatch".
inline ResidualVerdict classify_residual(const DenseState& residual, const DenseState& reference) {
  if (residual.num_qubits() == 2) {
    const auto s0 = reduced_spectrum(residual, {0});
    if (std::abs(s0[0] - 0.5) < 1e-9 && std::abs(s0[1] - 0.5) < 1e-9) return ResidualVerdict::kBellState;
  }
  if (residual.num_qubits() != reference.num_qubits()) return ResidualVerdict::kMismatch;
  return profiles_match(entanglement_profile(residual), entanglement_profile(reference))
             ? ResidualVerdict::kProfileMatch
             : ResidualVerdict::kMismatch;
}

}  // namespace ksp
