// Copyright 2026 The TRE Authors.
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

#ifndef TRE_ERROR_HPP_
#define TRE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tre {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed derivation text or dataset file. `offset` is a byte offset into
// the parsed text; `line` is 1-based and 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0)
      : Error(what), offset_(offset), line_(line) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// Cosine distance (or its gradient) requested with a zero-norm operand.
class ZeroNormError : public Error {
 public:
  using Error::Error;
};

class MissingPrimitiveError : public Error {
 public:
  explicit MissingPrimitiveError(const std::string& symbol)
      : Error("no table entry for primitive '" + symbol + "'"),
        symbol_(symbol) {}

  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

// Table composition asked for an operand pair that was never registered.
class TableMissError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// A correlation is undefined because one side has zero variance or too few
// samples.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

// The hypotheses of the distance bound do not hold for the given inputs.
class ConditionsUnmetError : public Error {
 public:
  using Error::Error;
};

}  // namespace tre

#endif  // TRE_ERROR_HPP_
