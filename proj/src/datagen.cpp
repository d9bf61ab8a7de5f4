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

#include "tre/datagen.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <vector>

#include "seeding.hpp"
#include "tre/error.hpp"
#include "tre/solver.hpp"

namespace tre {

void GenSpec::validate() const {
  if (num_primitives == 0) throw ConfigError("need at least one primitive");
  if (num_records == 0) throw ConfigError("need at least one record");
  if (min_depth == 0 || max_depth < min_depth) {
    throw ConfigError("depth range must satisfy 1 <= min <= max");
  }
  if (!(noise_sigma >= 0.0)) throw ConfigError("noise must be non-negative");
  if (composition.kind() == Composition::Kind::table) {
    throw ConfigError("cannot generate data from a table composition");
  }
  if (composition.kind() == Composition::Kind::linear &&
      composition.linear_params().a.rows != shape.rows()) {
    throw ConfigError("linear composition does not match the shape's rows");
  }
}

namespace {

std::string padded(char prefix, std::size_t i, std::size_t count) {
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(i);
  return std::string(1, prefix) + std::string(width - digits.size(), '0') + digits;
}

std::vector<Symbol> make_primitives(std::size_t n) {
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(padded('p', i, n));
  return out;
}

Derivation random_tree(std::size_t depth, const std::vector<Symbol>& prims,
                       std::mt19937_64& gen) {
  if (depth <= 1) {
    std::uniform_int_distribution<std::size_t> pick(0, prims.size() - 1);
    return Derivation::leaf(prims[pick(gen)]);
  }
  std::uniform_int_distribution<std::size_t> other_depth(1, depth - 1);
  std::bernoulli_distribution deep_left(0.5);
  const bool left_is_deep = deep_left(gen);
  const std::size_t shallow = other_depth(gen);
  Derivation deep = random_tree(depth - 1, prims, gen);
  Derivation other = random_tree(shallow, prims, gen);
  return left_is_deep ? Derivation::node(std::move(deep), std::move(other))
                      : Derivation::node(std::move(other), std::move(deep));
}

std::vector<Derivation> random_derivations(const GenSpec& spec,
                                           const std::vector<Symbol>& prims) {
  std::mt19937_64 gen(detail::derive_seed(spec.seed, "derivations"));
  std::uniform_int_distribution<std::size_t> depth(spec.min_depth, spec.max_depth);
  std::vector<Derivation> out;
  out.reserve(spec.num_records);
  for (std::size_t i = 0; i < spec.num_records; ++i) {
    out.push_back(random_tree(depth(gen), prims, gen));
  }
  return out;
}

std::vector<double> gaussian(std::size_t n, double sigma, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> out(n);
  for (double& v : out) v = normal(gen);
  return out;
}

}  // namespace

std::pair<Dataset, PrimitiveTable> generate_compositional(const GenSpec& spec) {
  spec.validate();
  const std::vector<Symbol> prims = make_primitives(spec.num_primitives);
  PrimitiveTable truth(spec.shape);
  std::mt19937_64 table_gen(detail::derive_seed(spec.seed, "table"));
  for (const auto& p : prims) {
    truth.set(p, Representation(spec.shape, gaussian(spec.shape.size(), 1.0, table_gen)));
  }

  std::mt19937_64 noise_gen(detail::derive_seed(spec.seed, "noise"));
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  std::vector<Record> records;
  records.reserve(spec.num_records);
  const std::vector<Derivation> derivations = random_derivations(spec, prims);
  for (std::size_t i = 0; i < derivations.size(); ++i) {
    const Representation exact =
        eval_compositional(truth, spec.composition, derivations[i]);
    std::vector<double> values(exact.values().begin(), exact.values().end());
    if (spec.noise_sigma > 0.0) {
      for (double& v : values) v += noise(noise_gen);
    }
    records.push_back({padded('r', i, spec.num_records),
                       Representation(spec.shape, std::move(values)),
                       derivations[i]});
  }
  return {Dataset(spec.shape, std::move(records)), std::move(truth)};
}

Dataset generate_random(const GenSpec& spec) {
  spec.validate();
  const std::vector<Symbol> prims = make_primitives(spec.num_primitives);
  std::mt19937_64 gen(detail::derive_seed(spec.seed, "random-representations"));
  std::vector<Record> records;
  records.reserve(spec.num_records);
  const std::vector<Derivation> derivations = random_derivations(spec, prims);
  for (std::size_t i = 0; i < derivations.size(); ++i) {
    records.push_back({padded('r', i, spec.num_records),
                       Representation(spec.shape, gaussian(spec.shape.size(), 1.0, gen)),
                       derivations[i]});
  }
  return Dataset(spec.shape, std::move(records));
}

LinearParams random_linear_params(std::size_t n, std::uint64_t seed,
                                  double noise) {
  std::mt19937_64 gen(detail::derive_seed(seed, "linear-composition"));
  std::normal_distribution<double> normal(0.0, noise);
  LinearParams p{Matrix::identity(n), Matrix::identity(n)};
  for (double& v : p.a.values) v += normal(gen);
  for (double& v : p.b.values) v += normal(gen);
  return p;
}

Representation encode_message(std::string_view message,
                              std::string_view alphabet, std::size_t length) {
  if (message.size() != length) {
    throw ParseError("message '" + std::string(message) + "' has length " +
                         std::to_string(message.size()) + ", expected " +
                         std::to_string(length),
                     0);
  }
  const Shape shape = Shape::code_matrix(length, alphabet.size());
  std::vector<double> values(shape.size(), 0.0);
  for (std::size_t pos = 0; pos < message.size(); ++pos) {
    const std::size_t col = alphabet.find(message[pos]);
    if (col == std::string_view::npos) {
      throw ParseError(std::string("token '") + message[pos] +
                           "' is not in the alphabet",
                       pos);
    }
    values[pos * shape.cols() + col] = 1.0;
  }
  return Representation(shape, std::move(values));
}

namespace {

struct FragmentRow {
  const char* referent;
  const char* language_a;
  const char* language_b;
};

constexpr std::array<FragmentRow, 8> kFragmentRows = {{
    {"((red circle) (blue triangle))", "jjjj", "jeoo"},
    {"((red circle) (blue star))", "oppp", "jjjj"},
    {"((red circle) (blue circle))", "oopp", "jjjj"},
    {"((red circle) (blue square))", "oopp", "jjjb"},
    {"((red square) (blue triangle))", "jjjj", "jbjj"},
    {"((red square) (blue star))", "oooo", "jbjj"},
    {"((red square) (blue circle))", "oooo", "jbbb"},
    {"((red square) (blue square))", "oooo", "jbbb"},
}};

std::string fragment_alphabet(bool language_b) {
  std::set<char> seen;
  for (const auto& row : kFragmentRows) {
    for (const char* c = language_b ? row.language_b : row.language_a; *c; ++c) {
      seen.insert(*c);
    }
  }
  std::string alphabet(seen.begin(), seen.end());
  for (char c = 'a'; c <= 'z' && alphabet.size() < kFig5Vocabulary; ++c) {
    if (!seen.count(c)) alphabet += c;
  }
  return alphabet;
}

LanguageFragment fragment_language(bool language_b) {
  const std::string alphabet = fragment_alphabet(language_b);
  std::vector<Record> records;
  for (std::size_t i = 0; i < kFragmentRows.size(); ++i) {
    const auto& row = kFragmentRows[i];
    records.push_back(
        {std::string(language_b ? "B" : "A") + std::to_string(i),
         encode_message(language_b ? row.language_b : row.language_a, alphabet,
                        kFig5MessageLength),
         parse_derivation(row.referent)});
  }
  return {Dataset(Shape::code_matrix(kFig5MessageLength, kFig5Vocabulary),
                  std::move(records)),
          alphabet};
}

}  // namespace

std::pair<LanguageFragment, LanguageFragment> fig5_languages() {
  return {fragment_language(false), fragment_language(true)};
}

}  // namespace tre
