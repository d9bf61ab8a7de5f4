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

#include "tre/space.hpp"

#include <cmath>
#include <cstring>
#include <utility>

#include "linear_ops.hpp"
#include "tre/error.hpp"
#include "tre/kernels.hpp"

namespace tre {

Shape Shape::vector(std::size_t dim) {
  if (dim == 0) throw ShapeError("vector dimension must be positive");
  return Shape(Kind::vector, dim, 1);
}

Shape Shape::code_matrix(std::size_t length, std::size_t vocab) {
  if (length == 0 || vocab == 0) {
    throw ShapeError("code matrix length and vocabulary must be positive");
  }
  return Shape(Kind::code_matrix, length, vocab);
}

std::string Shape::to_string() const {
  if (kind_ == Kind::vector) return "vector(" + std::to_string(rows_) + ")";
  return "code(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
}

Representation::Representation(Shape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  if (values_.size() != shape_.size()) {
    throw ShapeError("representation has " + std::to_string(values_.size()) +
                     " values, shape " + shape_.to_string() + " needs " +
                     std::to_string(shape_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("representation has a non-finite entry");
  }
}

Representation Representation::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Representation(Shape::vector(n), std::move(values));
}

Representation Representation::zeros(Shape shape) {
  return Representation(shape, std::vector<double>(shape.size(), 0.0));
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) {
  return Matrix{rows, cols, std::vector<double>(rows * cols, 0.0)};
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string_view distance_name(Distance d) {
  switch (d) {
    case Distance::cosine:
      return "cosine";
    case Distance::l1:
      return "l1";
    case Distance::squared_l2:
      return "squared_l2";
  }
  return "unknown";
}

Distance parse_distance(std::string_view name) {
  if (name == "cosine") return Distance::cosine;
  if (name == "l1") return Distance::l1;
  if (name == "squared_l2") return Distance::squared_l2;
  throw ConfigError("unknown distance '" + std::string(name) + "'");
}

namespace {

void require_same_shape(const Representation& r, const Representation& s) {
  if (r.shape() != s.shape()) {
    throw ShapeError("shape mismatch: " + r.shape().to_string() + " vs " +
                     s.shape().to_string());
  }
}

struct Norms {
  double r;
  double s;
  double dot;
};

Norms cosine_terms(std::span<const double> r, std::span<const double> s) {
  const auto& k = kernels::active();
  Norms n{std::sqrt(k.dot(r.data(), r.data(), r.size())),
          std::sqrt(k.dot(s.data(), s.data(), s.size())),
          k.dot(r.data(), s.data(), r.size())};
  if (n.r == 0.0 || n.s == 0.0) {
    throw ZeroNormError("cosine distance is undefined for a zero vector");
  }
  return n;
}

}  // namespace

double distance_values(Distance kind, std::span<const double> r,
                       std::span<const double> s) {
  const auto& k = kernels::active();
  switch (kind) {
    case Distance::l1:
      return k.l1_distance(r.data(), s.data(), r.size());
    case Distance::squared_l2:
      return k.squared_l2_distance(r.data(), s.data(), r.size());
    case Distance::cosine: {
      const Norms n = cosine_terms(r, s);
      return 1.0 - n.dot / (n.r * n.s);
    }
  }
  return 0.0;
}

void distance_gradient_values(Distance kind, std::span<const double> r,
                              std::span<const double> s,
                              std::span<double> out) {
  const auto& k = kernels::active();
  switch (kind) {
    case Distance::l1:
      k.sign_diff(r.data(), s.data(), out.data(), r.size());
      return;
    case Distance::squared_l2:
      k.scaled_diff(2.0, r.data(), s.data(), out.data(), r.size());
      return;
    case Distance::cosine: {
      // d/dr [1 - <r,s>/(|r||s|)] = -s/(|r||s|) + <r,s> r/(|r|^3 |s|)
      const Norms n = cosine_terms(r, s);
      const double inv = 1.0 / (n.r * n.s);
      std::fill(out.begin(), out.end(), 0.0);
      k.axpy(-inv, s.data(), out.data(), out.size());
      k.axpy(n.dot * inv / (n.r * n.r), r.data(), out.data(), out.size());
      return;
    }
  }
}

double distance(Distance kind, const Representation& r,
                const Representation& s) {
  require_same_shape(r, s);
  return distance_values(kind, r.values(), s.values());
}

Representation distance_subgradient(Distance kind, const Representation& r,
                                    const Representation& s) {
  require_same_shape(r, s);
  std::vector<double> out(r.values().size());
  distance_gradient_values(kind, r.values(), s.values(), out);
  return Representation(r.shape(), std::move(out));
}

namespace {

std::string table_key(const Representation& left, const Representation& right) {
  const auto append = [](std::string& key, const Representation& r) {
    const std::size_t dims[2] = {r.shape().rows(), r.shape().cols()};
    key.append(reinterpret_cast<const char*>(dims), sizeof(dims));
    key.append(reinterpret_cast<const char*>(r.values().data()),
               r.values().size() * sizeof(double));
  };
  std::string key;
  append(key, left);
  append(key, right);
  return key;
}

}  // namespace

void CompositionTable::insert(const Representation& left,
                              const Representation& right, Representation out) {
  auto [it, inserted] = entries_.try_emplace(table_key(left, right), out);
  if (!inserted && !(it->second == out)) {
    throw Error("composition table already maps this operand pair elsewhere");
  }
}

const Representation* CompositionTable::find(
    const Representation& left, const Representation& right) const {
  auto it = entries_.find(table_key(left, right));
  return it == entries_.end() ? nullptr : &it->second;
}

Composition Composition::additive() { return Composition(Kind::additive); }

Composition Composition::linear(LinearParams params) {
  if (params.a.rows != params.a.cols || params.b.rows != params.b.cols ||
      params.a.rows != params.b.rows) {
    throw ShapeError("linear composition needs two square matrices of equal size");
  }
  Composition c(Kind::linear);
  c.linear_ = std::move(params);
  return c;
}

Composition Composition::linear_identity(std::size_t n) {
  return linear(LinearParams{Matrix::identity(n), Matrix::identity(n)});
}

Composition Composition::table(CompositionTable table) {
  Composition c(Kind::table);
  c.table_ = std::make_shared<const CompositionTable>(std::move(table));
  return c;
}

std::string_view composition_name(Composition::Kind kind) {
  switch (kind) {
    case Composition::Kind::additive:
      return "additive";
    case Composition::Kind::linear:
      return "linear";
    case Composition::Kind::table:
      return "table";
  }
  return "unknown";
}

namespace {

void require_linear_fit(const LinearParams& p, const Shape& shape) {
  if (p.a.rows != shape.rows()) {
    throw ShapeError("linear composition is " + std::to_string(p.a.rows) +
                     "x" + std::to_string(p.a.rows) + " but representations " +
                     shape.to_string() + " have " +
                     std::to_string(shape.rows()) + " rows");
  }
}

}  // namespace

Representation compose(const Composition& comp, const Representation& r,
                       const Representation& s) {
  require_same_shape(r, s);
  const Shape shape = r.shape();
  switch (comp.kind()) {
    case Composition::Kind::additive: {
      std::vector<double> out(shape.size());
      kernels::add(r.values(), s.values(), out);
      return Representation(shape, std::move(out));
    }
    case Composition::Kind::linear: {
      const LinearParams& p = comp.linear_params();
      require_linear_fit(p, shape);
      std::vector<double> out(shape.size(), 0.0);
      detail::mix_rows_acc(p.a, r.values().data(), out.data(), shape.rows(),
                           shape.cols());
      detail::mix_rows_acc(p.b, s.values().data(), out.data(), shape.rows(),
                           shape.cols());
      return Representation(shape, std::move(out));
    }
    case Composition::Kind::table: {
      const Representation* out = comp.lookup().find(r, s);
      if (out == nullptr) {
        throw TableMissError("composition table has no entry for this pair");
      }
      return *out;
    }
  }
  throw Error("unreachable composition kind");
}

CompositionGradients composition_gradients(const Composition& comp,
                                           const Representation& r,
                                           const Representation& s,
                                           const Representation& upstream) {
  require_same_shape(r, s);
  require_same_shape(r, upstream);
  const Shape shape = r.shape();
  switch (comp.kind()) {
    case Composition::Kind::additive:
      return {upstream, upstream, std::nullopt, std::nullopt};
    case Composition::Kind::linear: {
      const LinearParams& p = comp.linear_params();
      require_linear_fit(p, shape);
      const std::size_t rows = shape.rows();
      const std::size_t cols = shape.cols();
      const double* g = upstream.values().data();
      std::vector<double> gl(shape.size(), 0.0);
      std::vector<double> gr(shape.size(), 0.0);
      detail::mix_rows_transposed_acc(p.a, g, gl.data(), rows, cols);
      detail::mix_rows_transposed_acc(p.b, g, gr.data(), rows, cols);
      Matrix ga = Matrix::zeros(rows, rows);
      Matrix gb = Matrix::zeros(rows, rows);
      detail::outer_acc(g, r.values().data(), ga.values.data(), rows, cols);
      detail::outer_acc(g, s.values().data(), gb.values.data(), rows, cols);
      return {Representation(shape, std::move(gl)),
              Representation(shape, std::move(gr)), std::move(ga),
              std::move(gb)};
    }
    case Composition::Kind::table:
      throw Error("table composition has no gradient");
  }
  throw Error("unreachable composition kind");
}

}  // namespace tre
