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

#ifndef TRE_SPACE_HPP_
#define TRE_SPACE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tre {

// Layout of a representation. A vector of dimension d is stored as a d x 1
// matrix; a code matrix has one row per message position and one column per
// vocabulary item. Storage is row-major, so flattening is position-major.
class Shape {
 public:
  enum class Kind { vector, code_matrix };

  static Shape vector(std::size_t dim);
  static Shape code_matrix(std::size_t length, std::size_t vocab);

  Kind kind() const { return kind_; }
  // Axis mixed by linear composition: dim for vectors, length for codes.
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  Shape(Kind kind, std::size_t rows, std::size_t cols)
      : kind_(kind), rows_(rows), cols_(cols) {}

  Kind kind_;
  std::size_t rows_;
  std::size_t cols_;
};

// A finite-valued point in representation space.
class Representation {
 public:
  // Throws ShapeError on a size mismatch and Error on a non-finite entry.
  Representation(Shape shape, std::vector<double> values);

  static Representation vector(std::vector<double> values);
  static Representation zeros(Shape shape);

  const Shape& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * shape_.cols() + col];
  }

  // Equal shapes and elementwise-equal values.
  friend bool operator==(const Representation&, const Representation&) =
      default;

 private:
  Shape shape_;
  std::vector<double> values_;
};

// Dense row-major matrix used for linear composition parameters.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  static Matrix zeros(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  double& operator()(std::size_t r, std::size_t c) {
    return values[r * cols + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

enum class Distance { cosine, l1, squared_l2 };

std::string_view distance_name(Distance d);
// Accepts "cosine", "l1", "squared_l2". Throws ConfigError otherwise.
Distance parse_distance(std::string_view name);

// cosine: 1 - <r,s> / (|r| |s|) on the flattened values, an error when
// either norm is zero. l1: sum |r - s|. squared_l2: sum (r - s)^2.
double distance(Distance kind, const Representation& r,
                const Representation& s);

// Gradient of distance(kind, r, s) with respect to r. The l1 subgradient is
// 0 where r and s tie.
Representation distance_subgradient(Distance kind, const Representation& r,
                                    const Representation& s);

// Parameters of the map (x, y) -> A x + B y. Both matrices act on the row
// axis of a representation and never mix columns.
struct LinearParams {
  Matrix a;
  Matrix b;

  friend bool operator==(const LinearParams&, const LinearParams&) = default;
};

// Exact lookup from an operand pair to an output. Keys compare the operands
// bit for bit.
class CompositionTable {
 public:
  // Throws Error if the pair is already mapped to a different output.
  void insert(const Representation& left, const Representation& right,
              Representation out);
  const Representation* find(const Representation& left,
                             const Representation& right) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Representation> entries_;
};

class Composition {
 public:
  enum class Kind { additive, linear, table };

  static Composition additive();
  static Composition linear(LinearParams params);
  static Composition linear_identity(std::size_t n);
  static Composition table(CompositionTable table);

  Kind kind() const { return kind_; }
  // Precondition: kind() == Kind::linear.
  const LinearParams& linear_params() const { return *linear_; }
  // Precondition: kind() == Kind::table.
  const CompositionTable& lookup() const { return *table_; }

 private:
  explicit Composition(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::optional<LinearParams> linear_;
  std::shared_ptr<const CompositionTable> table_;
};

std::string_view composition_name(Composition::Kind kind);

Representation compose(const Composition& comp, const Representation& r,
                       const Representation& s);

struct CompositionGradients {
  Representation left;
  Representation right;
  // Present for linear composition only.
  std::optional<Matrix> a;
  std::optional<Matrix> b;
};

// Adjoints of compose(comp, r, s) given the upstream gradient. Table
// composition has no gradient and throws Error.
CompositionGradients composition_gradients(const Composition& comp,
                                           const Representation& r,
                                           const Representation& s,
                                           const Representation& upstream);

// Span-level forms used by the optimizer. All spans have the same length.
double distance_values(Distance kind, std::span<const double> r,
                       std::span<const double> s);
void distance_gradient_values(Distance kind, std::span<const double> r,
                              std::span<const double> s, std::span<double> out);

}  // namespace tre

#endif  // TRE_SPACE_HPP_
