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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ksp/bitvec.hpp"

namespace ksp::gf2 {

/// Incremental Gaussian elimination over GF(2).
///
/// Each inserted vector carries a tag vector recording which inputs were
/// combined to produce it, so dependent insertions yield left-kernel elements.
class Eliminator {
 public:
  Eliminator(std::size_t width, std::size_t max_inputs) : width_(width), tag_width_(max_inputs) {}

  /// Reduces `v` against the current basis. Returns the combination tag that
  /// annihilates it when dependent, nullopt when it extended the basis.
  std::optional<BitVec> insert(BitVec v) {
    BitVec tag(tag_width_);
    if (inserted_ < tag_width_) tag.set(inserted_);
    ++inserted_;
    reduce(v, tag);
    if (v.none()) return tag;
    rows_.push_back({std::move(v), std::move(tag), 0});
    rows_.back().pivot = rows_.back().row.first();
    return std::nullopt;
  }

  /// Reduces `v` in place; `tag` accumulates the basis tags used.
  void reduce(BitVec& v, BitVec& tag) const {
    for (const auto& r : rows_) {
      if (v.test(r.pivot)) {
        v ^= r.row;
        tag ^= r.tag;
      }
    }
  }
  void reduce(BitVec& v) const {
    for (const auto& r : rows_) {
      if (v.test(r.pivot)) v ^= r.row;
    }
  }

  bool in_span(BitVec v) const {
    reduce(v);
    return v.none();
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

 private:
  struct Row {
    BitVec row;
    BitVec tag;
    std::size_t pivot;
  };
  std::size_t width_;
  std::size_t tag_width_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
};

inline std::size_t rank(std::span<const BitVec> vectors) {
  if (vectors.empty()) return 0;
  Eliminator e(vectors.front().size(), 0);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

/// Basis of { c : sum_i c_i * vectors[i] == 0 }, as indicator vectors over the inputs.
inline std::vector<BitVec> left_kernel(std::span<const BitVec> vectors) {
  std::vector<BitVec> kernel;
  if (vectors.empty()) return kernel;
  Eliminator e(vectors.front().size(), vectors.size());
  for (const auto& v : vectors) {
    if (auto tag = e.insert(v)) kernel.push_back(std::move(*tag));
  }
  return kernel;
}

/// Whether the linear system  sum_j rows[i][j] * x_j == rhs[i]  has a solution.
/// Each row is one equation over the variable positions.
inline bool is_consistent(std::span<const BitVec> rows, const BitVec& rhs) {
  if (rows.empty()) return true;
  const std::size_t width = rows.front().size();
  Eliminator e(width + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BitVec aug(width + 1);
    rows[i].for_each_set([&](std::size_t j) { aug.set(j); });
    if (rhs.test(i)) aug.set(width);
    e.insert(std::move(aug));
  }
  // Consistent iff appending the right-hand side does not raise the rank.
  Eliminator plain(width + 1, 0);
  for (const auto& r : rows) {
    BitVec aug(width + 1);
    r.for_each_set([&](std::size_t j) { aug.set(j); });
    plain.insert(std::move(aug));
  }
  return e.rank() == plain.rank();
}

}  // namespace ksp::gf2
