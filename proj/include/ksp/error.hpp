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

#include <stdexcept>
#include <string>

namespace ksp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (Pauli strings, JSON documents, pairings).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  /// 1-based character position, or 0 when the error has no position.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// Operands disagree on qubit count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (dense size, search budget, kernel size) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Signs or eigenvalues that cannot belong to any joint eigenstate.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ksp
