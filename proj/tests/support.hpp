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

#ifndef TRE_TESTS_SUPPORT_HPP_
#define TRE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tre/dataset.hpp"
#include "tre/derivation.hpp"
#include "tre/space.hpp"

namespace tre::testing {

// Every derivation with exactly `size` leaves over `alphabet`.
inline std::vector<Derivation> derivations_of_size(
    std::size_t size, const std::vector<std::string>& alphabet) {
  std::vector<Derivation> out;
  if (size == 1) {
    for (const auto& s : alphabet) out.push_back(Derivation::leaf(s));
    return out;
  }
  for (std::size_t k = 1; k < size; ++k) {
    const auto lefts = derivations_of_size(k, alphabet);
    const auto rights = derivations_of_size(size - k, alphabet);
    for (const auto& l : lefts) {
      for (const auto& r : rights) out.push_back(Derivation::node(l, r));
    }
  }
  return out;
}

inline std::vector<Derivation> derivations_up_to(
    std::size_t max_size, const std::vector<std::string>& alphabet) {
  std::vector<Derivation> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    auto v = derivations_of_size(s, alphabet);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// Plain recursion over the three tree-pair cases, without memoization.
inline double naive_edit_distance(const Derivation& x, const Derivation& y) {
  const auto sz = [](const Derivation& d) { return static_cast<double>(d.size()); };
  if (x.is_leaf() && y.is_leaf()) return x.symbol() == y.symbol() ? 0.0 : 1.0;
  if (!x.is_leaf() && y.is_leaf()) return naive_edit_distance(y, x);
  if (x.is_leaf()) {
    return std::min(naive_edit_distance(x, y.left()) + sz(y.right()),
                    naive_edit_distance(x, y.right()) + sz(y.left()));
  }
  const Derivation &i = x.left(), &j = x.right(), &k = y.left(), &l = y.right();
  return std::min({naive_edit_distance(i, k) + naive_edit_distance(j, l),
                   naive_edit_distance(x, k) + sz(l),
                   naive_edit_distance(x, l) + sz(k),
                   naive_edit_distance(y, i) + sz(j),
                   naive_edit_distance(y, j) + sz(i)});
}

inline Derivation random_derivation(std::mt19937_64& rng, std::size_t size,
                                    const std::vector<std::string>& alphabet) {
  if (size <= 1) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    return Derivation::leaf(alphabet[pick(rng)]);
  }
  std::uniform_int_distribution<std::size_t> split(1, size - 1);
  const std::size_t k = split(rng);
  auto left = random_derivation(rng, k, alphabet);
  return Derivation::node(std::move(left),
                          random_derivation(rng, size - k, alphabet));
}

// Builds a vector-shaped dataset from (derivation text, values) pairs with
// ids "x0", "x1", ...
inline Dataset vector_dataset(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  std::vector<Record> records;
  const std::size_t dim = rows.front().second.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    records.push_back(Record{"x" + std::to_string(i),
                             Representation::vector(rows[i].second),
                             parse_derivation(rows[i].first)});
  }
  return Dataset(Shape::vector(dim), std::move(records));
}

// The three-record least-squares instance: a -> [1,0], b -> [0,1],
// (a b) -> [1,3]. Optimum a = [1, 2/3], b = [0, 5/3]; every record's
// squared residual is 4/9.
inline Dataset three_record_instance() {
  return vector_dataset({{"a", {1.0, 0.0}},
                         {"b", {0.0, 1.0}},
                         {"(a b)", {1.0, 3.0}}});
}

}  // namespace tre::testing

#endif  // TRE_TESTS_SUPPORT_HPP_
