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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ksp/error.hpp"
#include "ksp/pauli.hpp"

namespace ksp {

/// A set of mutually commuting observables whose product is sign * identity.
struct Context {
  std::vector<std::size_t> members;
  int sign = 1;

  friend bool operator==(const Context&, const Context&) = default;
};

/// Observables plus contexts over them (a "KS system").
///
/// Observables are distinct Hermitian words with phase +1 and at least one
/// non-identity letter. Structural invariants are enforced here; the
/// commutation and product conditions are checked by verify_system().
class ContextSystem {
 public:
  ContextSystem() = default;
  ContextSystem(std::size_t num_qubits, std::vector<PauliWord> observables,
                std::vector<Context> contexts)
      : n_(num_qubits), observables_(std::move(observables)), contexts_(std::move(contexts)) {
    std::unordered_map<PauliWord, std::size_t, PauliWordHash> seen;
    for (std::size_t i = 0; i < observables_.size(); ++i) {
      const auto& w = observables_[i];
      if (w.num_qubits() != n_) {
        throw DimensionError("observable " + w.render() + " does not act on " +
                             std::to_string(n_) + " qubits");
      }
      if (w.phase() != 0) throw DomainError("observable " + w.render() + " must have phase +1");
      if (w.is_identity_letters()) throw DomainError("the identity is not an observable");
      if (!seen.emplace(w, i).second) throw DomainError("duplicate observable " + w.render());
    }
    index_ = std::move(seen);
    for (const auto& c : contexts_) {
      if (c.members.empty()) throw DomainError("empty context");
      if (c.sign != 1 && c.sign != -1) throw DomainError("context sign must be +1 or -1");
      for (auto m : c.members) {
        if (m >= observables_.size()) throw DomainError("context member index out of range");
      }
      auto sorted = c.members;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("context lists an observable twice");
      }
    }
  }

  /// One context holding every observable, in order.
  static ContextSystem single_context(std::vector<PauliWord> rows, int sign) {
    if (rows.empty()) throw DomainError("a single-context system needs at least one row");
    const std::size_t n = rows.front().num_qubits();
    Context c;
    for (std::size_t i = 0; i < rows.size(); ++i) c.members.push_back(i);
    c.sign = sign;
    return ContextSystem(n, std::move(rows), {std::move(c)});
  }

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliWord>& observables() const { return observables_; }
  const std::vector<Context>& contexts() const { return contexts_; }
  const PauliWord& observable(std::size_t i) const { return observables_[i]; }

  std::optional<std::size_t> index_of(const PauliWord& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<PauliWord> members_of(const Context& c) const {
    std::vector<PauliWord> out;
    out.reserve(c.members.size());
    for (auto m : c.members) out.push_back(observables_[m]);
    return out;
  }

  /// True when there is exactly one context and it covers every observable.
  bool is_single_context() const {
    return contexts_.size() == 1 && contexts_.front().members.size() == observables_.size();
  }

 private:
  std::size_t n_ = 0;
  std::vector<PauliWord> observables_;
  std::vector<Context> contexts_;
  std::unordered_map<PauliWord, std::size_t, PauliWordHash> index_;
};

struct Violation {
  enum class Kind { kNotCommuting, kNotIdentity, kSignMismatch };
  std::size_t context = 0;
  Kind kind = Kind::kNotCommuting;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks pairwise commutation and the declared product sign of every context.
inline ValidationReport verify_system(const ContextSystem& sys) {
  ValidationReport report;
  for (std::size_t ci = 0; ci < sys.contexts().size(); ++ci) {
    const auto& c = sys.contexts()[ci];
    const auto words = sys.members_of(c);
    bool commuting = true;
    for (std::size_t i = 0; i < words.size() && commuting; ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        if (!commutes(words[i], words[j])) {
          report.violations.push_back({ci, Violation::Kind::kNotCommuting,
                                       "members do not commute: " + words[i].render() + " and " +
                                           words[j].render()});
          commuting = false;
          break;
        }
      }
    }
    if (!commuting) continue;
    const PauliWord prod = product_of(words);
    if (!prod.is_identity_letters()) {
      report.violations.push_back({ci, Violation::Kind::kNotIdentity,
                                   "product is " + prod.render() + ", not a multiple of identity"});
    } else if (prod.sign() != c.sign) {
      report.violations.push_back({ci, Violation::Kind::kSignMismatch,
                                   "product sign mismatch: declared " + std::to_string(c.sign) +
                                       ", actual " + std::to_string(prod.sign())});
    }
  }
  return report;
}

/// Builds a context from member words, computing its sign from the product.
/// Returns nullopt if the words do not commute or do not multiply to +-I.
inline std::optional<int> product_sign(std::span<const PauliWord> words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (!commutes(words[i], words[j])) return std::nullopt;
    }
  }
  const PauliWord prod = product_of(words);
  if (!prod.is_identity_letters()) return std::nullopt;
  return prod.sign();
}

}  // namespace ksp
