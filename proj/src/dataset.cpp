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

#include "tre/dataset.hpp"

#include "tre/error.hpp"

namespace tre {

Dataset::Dataset(Shape shape, std::vector<Record> records)
    : shape_(shape), records_(std::move(records)) {
  if (records_.empty()) throw Error("dataset has no records");
  by_id_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    if (r.repr.shape() != shape_) {
      throw ShapeError("record '" + r.id + "' has shape " +
                       r.repr.shape().to_string() + ", dataset declares " +
                       shape_.to_string());
    }
    if (!by_id_.emplace(r.id, i).second) {
      throw Error("duplicate record id '" + r.id + "'");
    }
  }
}

std::vector<Symbol> Dataset::primitives() const {
  std::vector<Derivation> ds;
  ds.reserve(records_.size());
  for (const auto& r : records_) ds.push_back(r.derivation);
  return primitives_of(ds);
}

const Record* Dataset::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

void PrimitiveTable::set(const Symbol& symbol, Representation value) {
  if (value.shape() != shape_) {
    throw ShapeError("entry for '" + symbol.name() + "' has shape " +
                     value.shape().to_string() + ", table holds " +
                     shape_.to_string());
  }
  entries_.insert_or_assign(symbol, std::move(value));
}

const Representation& PrimitiveTable::at(const Symbol& symbol) const {
  const Representation* r = find(symbol);
  if (r == nullptr) throw MissingPrimitiveError(symbol.name());
  return *r;
}

const Representation* PrimitiveTable::find(const Symbol& symbol) const {
  auto it = entries_.find(symbol);
  return it == entries_.end() ? nullptr : &it->second;
}

void PrimitiveTable::set_composition_params(LinearParams params) {
  if (params.a.rows != shape_.rows() || params.a.cols != shape_.rows() ||
      params.b.rows != shape_.rows() || params.b.cols != shape_.rows()) {
    throw ShapeError("composition parameters must be " +
                     std::to_string(shape_.rows()) + "x" +
                     std::to_string(shape_.rows()));
  }
  composition_params_ = std::move(params);
}

}  // namespace tre
