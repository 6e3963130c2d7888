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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ksp/bitvec.hpp"
#include "ksp/error.hpp"

namespace ksp {

/// Single-qubit letters. The numeric value is the (x, z) bit pair x | z << 1.
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Z: return 'Z';
    case Letter::Y: return 'Y';
  }
  return '?';
}

/// A phase-tracked N-qubit Pauli operator i^phase * P_1 (x) ... (x) P_n.
///
/// Qubit q (0-based) carries X or Y iff bit q of the x mask is set, and Z or
/// Y iff bit q of the z mask is set. The phase counts powers of i relative to
/// the letter form, so "-IIXX" has phase 2 and Z*X == iY has phase 1.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::size_t num_qubits) : x_(num_qubits), z_(num_qubits) {}
  PauliWord(BitVec x, BitVec z, unsigned phase = 0)
      : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3U) {
    if (x_.size() != z_.size()) throw DimensionError("x and z masks differ in length");
  }

  std::size_t num_qubits() const { return x_.size(); }
  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }
  /// Power of i in front of the letter form, in [0, 4).
  unsigned phase() const { return phase_; }

  Letter letter(std::size_t q) const {
    return static_cast<Letter>((x_.test(q) ? 1U : 0U) | (z_.test(q) ? 2U : 0U));
  }
  void set_letter(std::size_t q, Letter l) {
    const auto v = static_cast<unsigned>(l);
    x_.set(q, (v & 1U) != 0);
    z_.set(q, (v & 2U) != 0);
  }

  bool is_hermitian() const { return (phase_ & 1U) == 0; }
  /// True when every letter is I, regardless of phase.
  bool is_identity_letters() const { return x_.none() && z_.none(); }
  /// +1 or -1 for Hermitian words.
  int sign() const {
    if (!is_hermitian()) throw DomainError("sign() of a non-Hermitian Pauli word");
    return phase_ == 0 ? 1 : -1;
  }
  /// Number of qubits carrying a non-identity letter.
  std::size_t weight() const { return (x_ | z_).count(); }

  /// Same letters with phase +1.
  PauliWord letters_only() const { return PauliWord(x_, z_, 0); }
  PauliWord with_phase(unsigned phase) const { return PauliWord(x_, z_, phase); }
  PauliWord negated() const { return PauliWord(x_, z_, phase_ + 2); }

  /// Canonical text: "" / "-" / "i" / "-i" prefix then one letter per qubit.
  std::string render() const {
    static constexpr std::string_view kPrefix[4] = {"", "i", "-", "-i"};
    std::string s(kPrefix[phase_]);
    s.reserve(s.size() + num_qubits());
    for (std::size_t q = 0; q < num_qubits(); ++q) s.push_back(letter_char(letter(q)));
    return s;
  }

  friend bool operator==(const PauliWord& a, const PauliWord& b) {
    return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator<(const PauliWord& a, const PauliWord& b) {
    if (a.num_qubits() != b.num_qubits()) return a.num_qubits() < b.num_qubits();
    if (!(a.x_ == b.x_)) return a.x_ < b.x_;
    if (!(a.z_ == b.z_)) return a.z_ < b.z_;
    return a.phase_ < b.phase_;
  }

  std::size_t hash() const { return x_.hash() * 31 + z_.hash() * 7 + phase_; }

  // Phase in the X^x Z^z form: word == i^k X^x Z^z with Y == iXZ.
  unsigned xz_phase() const { return (phase_ + static_cast<unsigned>(and_count(x_, z_))) & 3U; }

 private:
  BitVec x_;
  BitVec z_;
  unsigned phase_ = 0;
};

struct PauliWordHash {
  std::size_t operator()(const PauliWord& w) const { return w.hash(); }
};

/// Parses an optionally signed Pauli string such as "ZZZZ", "-IIXX" or "iY".
/// Accepts a leading '+', '-' or U+2212 MINUS SIGN, optionally followed by 'i'.
inline PauliWord parse_word(std::string_view text) {
  std::size_t pos = 0;
  unsigned phase = 0;
  if (text.substr(0, 3) == "\xE2\x88\x92") {
    phase = 2;
    pos = 3;
  } else if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    phase = text[0] == '-' ? 2 : 0;
    pos = 1;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  if (pos >= text.size()) throw ParseError("Pauli word has no letters", pos + 1);
  PauliWord w(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
    switch (text[pos]) {
      case 'I': break;
      case 'X': w.set_letter(q, Letter::X); break;
      case 'Y': w.set_letter(q, Letter::Y); break;
      case 'Z': w.set_letter(q, Letter::Z); break;
      default:
        throw ParseError("invalid character '" + std::string(1, text[pos]) +
                             "' at position " + std::to_string(pos + 1) + " of Pauli word \"" +
                             std::string(text) + "\"",
                         pos + 1);
    }
  }
  return w.with_phase(phase);
}

inline PauliWord identity_word(std::size_t num_qubits) { return PauliWord(num_qubits); }

/// Exact operator product a * b.
inline PauliWord multiply(const PauliWord& a, const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("cannot multiply Pauli words on " + std::to_string(a.num_qubits()) +
                         " and " + std::to_string(b.num_qubits()) + " qubits");
  }
  // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2}
  BitVec x = a.x() ^ b.x();
  BitVec z = a.z() ^ b.z();
  const unsigned k = a.xz_phase() + b.xz_phase() + 2U * static_cast<unsigned>(and_count(a.z(), b.x()));
  const unsigned back = static_cast<unsigned>(and_count(x, z));
  return PauliWord(std::move(x), std::move(z), (k + 4U - (back & 3U)) & 3U);
}

inline PauliWord operator*(const PauliWord& a, const PauliWord& b) { return multiply(a, b); }

/// Left-to-right product of a nonempty list.
inline PauliWord product_of(std::span<const PauliWord> words) {
  if (words.empty()) throw DomainError("product_of requires a nonempty list");
  PauliWord acc = words.front();
  for (std::size_t i = 1; i < words.size(); ++i) acc = multiply(acc, words[i]);
  return acc;
}

/// True iff the symplectic form of a and b vanishes.
inline bool commutes(const PauliWord& a, const PauliWord& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("cannot compare Pauli words on " + std::to_string(a.num_qubits()) +
                         " and " + std::to_string(b.num_qubits()) + " qubits");
  }
  return ((and_count(a.x(), b.z()) + and_count(a.z(), b.x())) & 1U) == 0;
}

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultDenseMatrixCap = 10;

/// Dense 2^n x 2^n matrix built as a Kronecker product of single-qubit
/// matrices. Qubit 1 is the most significant tensor factor.
inline DenseMatrix to_dense(const PauliWord& word, std::size_t cap = kDefaultDenseMatrixCap) {
  using C = std::complex<double>;
  const std::size_t n = word.num_qubits();
  if (n > cap) {
    throw ResourceError("dense matrix for " + std::to_string(n) + " qubits exceeds cap of " +
                        std::to_string(cap));
  }
  auto single = [](Letter l) {
    Eigen::Matrix2cd m;
    switch (l) {
      case Letter::I: m << 1, 0, 0, 1; break;
      case Letter::X: m << 0, 1, 1, 0; break;
      case Letter::Y: m << 0, C(0, -1), C(0, 1), 0; break;
      case Letter::Z: m << 1, 0, 0, -1; break;
    }
    return m;
  };
  DenseMatrix acc = DenseMatrix::Identity(1, 1);
  for (std::size_t q = 0; q < n; ++q) {
    const Eigen::Matrix2cd s = single(word.letter(q));
    DenseMatrix next(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index r = 0; r < acc.rows(); ++r) {
      for (Eigen::Index c = 0; c < acc.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = acc(r, c) * s;
      }
    }
    acc = std::move(next);
  }
  static const C kPhase[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  return kPhase[word.phase()] * acc;
}

}  // namespace ksp
