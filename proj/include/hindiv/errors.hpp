// Copyright 2026 The hindiv Authors
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
#include <stdexcept>
#include <string>

namespace hindiv {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution or input vector violates its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two vectors that must be aligned have different lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// p_i > 0 where the baseline q_i == 0.
class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

/// An edge record or start distribution refers to the wrong vertex type.
class TypeMismatchError : public Error {
 public:
  using Error::Error;
};

/// A type or vertex identifier is out of range.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Walk mass reached a vertex with no outgoing edge in a non-augmented network.
class WalkabilityError : public Error {
 public:
  using Error::Error;
};

/// Consecutive meta-path steps do not chain.
class ChainingError : public Error {
 public:
  ChainingError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Path counts exceeded 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of probability zero.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hindiv
