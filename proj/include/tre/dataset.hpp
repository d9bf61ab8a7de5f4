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

#ifndef TRE_DATASET_HPP_
#define TRE_DATASET_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tre/derivation.hpp"
#include "tre/space.hpp"

namespace tre {

// One observed input: its model representation and its oracle derivation.
struct Record {
  std::string id;
  Representation repr;
  Derivation derivation;
};

// Non-empty list of records with unique ids and one common shape.
class Dataset {
 public:
  // Throws Error (or ShapeError) when the invariants do not hold.
  Dataset(Shape shape, std::vector<Record> records);

  const Shape& shape() const { return shape_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const Record& operator[](std::size_t i) const { return records_[i]; }

  // Union of the records' leaf symbols, lexicographic.
  std::vector<Symbol> primitives() const;

  const Record* find(std::string_view id) const;

 private:
  Shape shape_;
  std::vector<Record> records_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Learned parameters: one entry per primitive plus, for learnable linear
// composition, the fitted mixing matrices.
class PrimitiveTable {
 public:
  explicit PrimitiveTable(Shape shape) : shape_(shape) {}

  const Shape& shape() const { return shape_; }

  // Throws ShapeError if the entry does not have the table's shape.
  void set(const Symbol& symbol, Representation value);
  // Throws MissingPrimitiveError.
  const Representation& at(const Symbol& symbol) const;
  const Representation* find(const Symbol& symbol) const;
  const std::map<Symbol, Representation>& entries() const { return entries_; }

  const std::optional<LinearParams>& composition_params() const {
    return composition_params_;
  }
  void set_composition_params(LinearParams params);

 private:
  Shape shape_;
  std::map<Symbol, Representation> entries_;
  std::optional<LinearParams> composition_params_;
};

}  // namespace tre

#endif  // TRE_DATASET_HPP_
