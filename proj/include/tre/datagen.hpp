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

#ifndef TRE_DATAGEN_HPP_
#define TRE_DATAGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "tre/dataset.hpp"
#include "tre/space.hpp"

namespace tre {

struct GenSpec {
  std::size_t num_primitives = 8;
  Shape shape = Shape::vector(16);
  // Tree height, a single leaf having depth 1. Each record draws its depth
  // uniformly from [min_depth, max_depth].
  std::size_t min_depth = 1;
  std::size_t max_depth = 3;
  std::size_t num_records = 60;
  double noise_sigma = 0.0;
  Composition composition = Composition::additive();
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
};

// Primitive entries ~ N(0, 1); each representation is the exact composition
// of its derivation plus N(0, noise_sigma^2) per coordinate. Returns the
// dataset and the generating table.
std::pair<Dataset, PrimitiveTable> generate_compositional(const GenSpec& spec);

// Same derivations as generate_compositional for the same spec, with
// representations drawn i.i.d. N(0, 1) independently of them.
Dataset generate_random(const GenSpec& spec);

// Identity plus N(0, noise^2) perturbations, for generating data with a
// non-trivial linear composition.
LinearParams random_linear_params(std::size_t n, std::uint64_t seed,
                                  double noise);

// An emergent-language fragment: eight referents, each a pair of
// (colour shape) objects, with the 4-character message one speaker sent.
struct LanguageFragment {
  Dataset dataset;
  // Symbol for each of the 16 vocabulary columns.
  std::string alphabet;
};

inline constexpr std::size_t kFig5MessageLength = 4;
inline constexpr std::size_t kFig5Vocabulary = 16;

// The two published fragments ("A" and "B"). Messages are one-hot 4 x 16
// code matrices; the alphabet is the observed letters in sorted order,
// padded with unused letters to 16 symbols.
std::pair<LanguageFragment, LanguageFragment> fig5_languages();

// One-hot code matrix for `message` over `alphabet`. Throws ParseError on a
// character outside the alphabet or a length mismatch.
Representation encode_message(std::string_view message,
                              std::string_view alphabet, std::size_t length);

}  // namespace tre

#endif  // TRE_DATAGEN_HPP_
