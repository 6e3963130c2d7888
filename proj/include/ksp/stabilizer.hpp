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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksp/bitvec.hpp"
#include "ksp/error.hpp"
#include "ksp/gf2.hpp"
#include "ksp/pauli.hpp"

namespace ksp {

/// Symplectic vector (x_1..x_n, z_1..z_n) of a word's letters.
inline BitVec symplectic_vector(const PauliWord& w) {
  const std::size_t n = w.num_qubits();
  BitVec v(2 * n);
  w.x().for_each_set([&](std::size_t q) { v.set(q); });
  w.z().for_each_set([&](std::size_t q) { v.set(n + q); });
  return v;
}

/// An abelian group of signed Hermitian Pauli words that excludes -I, kept
/// in reduced row-echelon form over the symplectic vectors. Two groups are
/// equal iff their canonical generator lists are equal.
class SignedStabilizerGroup {
 public:
  explicit SignedStabilizerGroup(std::size_t num_qubits) : n_(num_qubits) {}

  /// Throws InconsistencyError when the words fail to commute or generate -I.
  SignedStabilizerGroup(std::size_t num_qubits, std::span<const PauliWord> generators)
      : n_(num_qubits) {
    for (const auto& g : generators) add(g);
  }

  /// Adds one signed generator. Returns false when it was already implied.
  bool add(const PauliWord& word) {
    if (word.num_qubits() != n_) throw DimensionError("generator has wrong qubit count");
    if (!word.is_hermitian()) throw InconsistencyError("generator " + word.render() + " is not Hermitian");
    for (const auto& g : gens_) {
      if (!commutes(g, word)) {
        throw InconsistencyError("generators " + g.render() + " and " + word.render() +
                                 " do not commute");
      }
    }
    PauliWord w = word;
    BitVec v = symplectic_vector(w);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (v.test(pivots_[i])) {
        w = multiply(w, gens_[i]);
        v ^= vecs_[i];
      }
    }
    if (v.none()) {
      if (w.phase() != 0) {
        throw InconsistencyError("signed generators imply -I (inconsistent signs)");
      }
      return false;
    }
    const std::size_t pivot = v.first();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (vecs_[i].test(pivot)) {
        gens_[i] = multiply(gens_[i], w);
        vecs_[i] ^= v;
      }
    }
    // Keep rows sorted by pivot.
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
    gens_.insert(gens_.begin() + pos, std::move(w));
    vecs_.insert(vecs_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, pivot);
    return true;
  }

  std::size_t num_qubits() const { return n_; }
  /// Number of independent generators.
  std::size_t size() const { return gens_.size(); }
  const std::vector<PauliWord>& generators() const { return gens_; }
  const std::vector<BitVec>& vectors() const { return vecs_; }

  /// Rank of the projector onto the group's joint +1 eigenspace, 2^(n - size).
  std::uint64_t projector_rank() const {
    if (n_ - gens_.size() >= 64) throw ResourceError("projector rank overflows 64 bits");
    return std::uint64_t{1} << (n_ - gens_.size());
  }

  /// Sign with which the letters of `word` occur in the group, if they do.
  std::optional<int> sign_of(const PauliWord& word) const {
    PauliWord w = word.letters_only();
    BitVec v = symplectic_vector(w);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (v.test(pivots_[i])) {
        w = multiply(w, gens_[i]);
        v ^= vecs_[i];
      }
    }
    if (v.any()) return std::nullopt;
    // letters * g_1...g_k == c I, hence g_1...g_k == c * letters.
    return w.phase() == 0 ? 1 : -1;
  }

  /// Product of the generators selected by `mask` (indexed as generators()).
  PauliWord element(const BitVec& mask) const {
    PauliWord acc(n_);
    mask.for_each_set([&](std::size_t i) { acc = multiply(acc, gens_[i]); });
    return acc;
  }

  std::string render() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i != 0) s += ", ";
      s += gens_[i].sign() > 0 ? "+" : "";
      s += gens_[i].render();
    }
    return s + ">";
  }

  friend bool operator==(const SignedStabilizerGroup& a, const SignedStabilizerGroup& b) {
    return a.n_ == b.n_ && a.gens_ == b.gens_;
  }
  friend bool operator<(const SignedStabilizerGroup& a, const SignedStabilizerGroup& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.gens_.size() != b.gens_.size()) return a.gens_.size() < b.gens_.size();
    for (std::size_t i = 0; i < a.gens_.size(); ++i) {
      if (a.pivots_[i] != b.pivots_[i]) return a.pivots_[i] < b.pivots_[i];
    }
    return std::lexicographical_compare(a.gens_.begin(), a.gens_.end(), b.gens_.begin(), b.gens_.end());
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (const auto& g : gens_) h = h * 1000003U ^ g.hash();
    return h;
  }

 private:
  std::size_t n_ = 0;
  std::vector<PauliWord> gens_;
  std::vector<BitVec> vecs_;
  std::vector<std::size_t> pivots_;
};

/// True iff the two groups share some letters with opposite signs, which is
/// exactly when the projectors onto their eigenspaces multiply to zero.
inline bool have_opposite_element(const SignedStabilizerGroup& a, const SignedStabilizerGroup& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("groups on different qubit counts");
  std::vector<BitVec> stacked;
  stacked.reserve(a.size() + b.size());
  for (const auto& v : a.vectors()) stacked.push_back(v);
  for (const auto& v : b.vectors()) stacked.push_back(v);
  // Each kernel element pairs an element of a with an element of b having the
  // same letters; the pairing is a homomorphism so checking a basis suffices.
  for (const auto& combo : gf2::left_kernel(stacked)) {
    BitVec ma(a.size()), mb(b.size());
    combo.for_each_set([&](std::size_t i) {
      if (i < a.size()) {
        ma.set(i);
      } else {
        mb.set(i - a.size());
      }
    });
    if (a.element(ma).phase() != b.element(mb).phase()) return true;
  }
  return false;
}

/// Dense projector prod_i (I + g_i) / 2.
inline DenseMatrix to_dense(const SignedStabilizerGroup& g, std::size_t cap = kDefaultDenseMatrixCap) {
  const auto dim = Eigen::Index{1} << g.num_qubits();
  if (g.num_qubits() > cap) throw ResourceError("dense projector exceeds cap");
  DenseMatrix p = DenseMatrix::Identity(dim, dim);
  for (const auto& w : g.generators()) {
    p = p * (0.5 * (DenseMatrix::Identity(dim, dim) + to_dense(w, cap)));
  }
  return p;
}

}  // namespace ksp
