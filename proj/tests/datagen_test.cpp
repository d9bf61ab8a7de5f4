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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "tre/datagen.hpp"
#include "tre/error.hpp"
#include "tre/solver.hpp"

namespace tre {
namespace {

std::size_t depth(const Derivation& d) {
  if (d.is_leaf()) return 1;
  return 1 + std::max(depth(d.left()), depth(d.right()));
}

TEST(Generate, ShapeCountsAndDepths) {
  GenSpec spec;
  spec.num_primitives = 12;
  spec.shape = Shape::vector(5);
  spec.num_records = 200;
  spec.min_depth = 2;
  spec.max_depth = 4;
  spec.seed = 3;
  const auto [data, truth] = generate_compositional(spec);
  EXPECT_EQ(data.size(), 200u);
  EXPECT_EQ(data.shape(), Shape::vector(5));
  EXPECT_EQ(truth.entries().size(), 12u);
  std::vector<bool> seen_depth(5, false);
  for (const auto& r : data.records()) {
    const std::size_t dd = depth(r.derivation);
    ASSERT_GE(dd, 2u);
    ASSERT_LE(dd, 4u);
    seen_depth[dd] = true;
    for (const auto& sym : primitives_of(r.derivation)) {
      EXPECT_NE(truth.find(sym), nullptr) << sym.name();
    }
  }
  EXPECT_TRUE(seen_depth[2] && seen_depth[3] && seen_depth[4]);
  EXPECT_EQ(truth.entries().begin()->first.name(), "p00");
  EXPECT_EQ(data[0].id, "r000");
}

TEST(Generate, NoiselessRecordsAreExactCompositions) {
  for (const bool linear : {false, true}) {
    GenSpec spec;
    spec.shape = Shape::code_matrix(3, 4);
    spec.seed = 9;
    if (linear) spec.composition = Composition::linear(random_linear_params(3, 1, 0.2));
    const auto [data, truth] = generate_compositional(spec);
    for (const auto& r : data.records()) {
      EXPECT_EQ(eval_compositional(truth, spec.composition, r.derivation), r.repr);
    }
  }
}

TEST(Generate, NoiseHasRequestedScale) {
  GenSpec spec;
  spec.shape = Shape::vector(50);
  spec.num_records = 100;
  spec.noise_sigma = 0.3;
  const auto [noisy, truth] = generate_compositional(spec);
  double sum = 0, count = 0;
  for (const auto& r : noisy.records()) {
    const auto clean = eval_compositional(truth, spec.composition, r.derivation);
    for (std::size_t i = 0; i < clean.values().size(); ++i) {
      const double e = r.repr.values()[i] - clean.values()[i];
      sum += e * e;
      ++count;
    }
  }
  EXPECT_NEAR(std::sqrt(sum / count), 0.3, 0.01);
}

TEST(Generate, DeterministicAndSeedSensitive) {
  GenSpec spec;
  spec.noise_sigma = 0.1;
  const auto a = generate_compositional(spec).first;
  const auto b = generate_compositional(spec).first;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].repr, b[i].repr);
    EXPECT_EQ(a[i].derivation, b[i].derivation);
  }
  spec.seed = 1;
  const auto c = generate_compositional(spec).first;
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || !(a[i].repr == c[i].repr);
  EXPECT_TRUE(differs);
}

TEST(Generate, RandomSharesDerivationsOnly) {
  GenSpec spec;
  spec.seed = 4;
  const auto comp = generate_compositional(spec).first;
  const auto rand = generate_random(spec);
  ASSERT_EQ(comp.size(), rand.size());
  for (std::size_t i = 0; i < comp.size(); ++i) {
    EXPECT_EQ(comp[i].derivation, rand[i].derivation);
    EXPECT_EQ(comp[i].id, rand[i].id);
    EXPECT_FALSE(comp[i].repr == rand[i].repr);
  }
}

TEST(Generate, Validation) {
  const auto bad = [](const std::function<void(GenSpec&)>& edit) {
    GenSpec spec;
    edit(spec);
    EXPECT_THROW(generate_compositional(spec), ConfigError);
  };
  bad([](GenSpec& s) { s.num_primitives = 0; });
  bad([](GenSpec& s) { s.num_records = 0; });
  bad([](GenSpec& s) { s.min_depth = 0; });
  bad([](GenSpec& s) { s.min_depth = 4; });
  bad([](GenSpec& s) { s.noise_sigma = -1; });
  bad([](GenSpec& s) { s.composition = Composition::linear_identity(3); });
  bad([](GenSpec& s) { s.composition = Composition::table(CompositionTable{}); });
}

TEST(LinearParams, IdentityPlusNoise) {
  const auto p = random_linear_params(4, 2, 0.0);
  EXPECT_EQ(p.a, Matrix::identity(4));
  EXPECT_EQ(p.b, Matrix::identity(4));
  const auto q = random_linear_params(4, 2, 0.1);
  EXPECT_FALSE(q.a == Matrix::identity(4));
  EXPECT_EQ(q, random_linear_params(4, 2, 0.1));
}

TEST(LanguageFragments, Contents) {
  const auto [a, b] = fig5_languages();
  ASSERT_EQ(a.dataset.size(), 8u);
  ASSERT_EQ(b.dataset.size(), 8u);
  EXPECT_EQ(a.alphabet.size(), kFig5Vocabulary);
  EXPECT_EQ(a.dataset.shape(), Shape::code_matrix(4, 16));
  const auto text = [](const LanguageFragment& f, std::size_t i) {
    std::string out;
    const auto& r = f.dataset[i].repr;
    for (std::size_t row = 0; row < 4; ++row) {
      for (std::size_t c = 0; c < 16; ++c) {
        if (r.at(row, c) == 1.0) out += f.alphabet[c];
      }
    }
    return out;
  };
  EXPECT_EQ(format_derivation(a.dataset[0].derivation), "((red circle) (blue triangle))");
  EXPECT_EQ(text(a, 0), "jjjj");
  EXPECT_EQ(text(b, 0), "jeoo");
  EXPECT_EQ(format_derivation(a.dataset[5].derivation), "((red square) (blue star))");
  EXPECT_EQ(text(a, 5), "oooo");
  EXPECT_EQ(format_derivation(b.dataset[1].derivation), "((red circle) (blue star))");
  EXPECT_EQ(text(b, 1), "jjjj");
  EXPECT_EQ(text(b, 7), "jbbb");
  EXPECT_EQ(a.alphabet.substr(0, 3), "jop");
  EXPECT_EQ(b.alphabet.substr(0, 4), "bejo");
}

TEST(EncodeMessage, OneHotRows) {
  const auto r = encode_message("ba", "abc", 2);
  EXPECT_EQ(r, Representation(Shape::code_matrix(2, 3), {0, 1, 0, 1, 0, 0}));
  EXPECT_THROW(encode_message("bz", "abc", 2), ParseError);
  EXPECT_THROW(encode_message("abc", "abc", 2), ParseError);
}

}  // namespace
}  // namespace tre
