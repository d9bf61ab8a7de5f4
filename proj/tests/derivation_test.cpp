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

#include <random>
#include <unordered_set>

#include "support.hpp"
#include "tre/derivation.hpp"
#include "tre/error.hpp"

namespace tre {
namespace {

using testing::derivations_up_to;
using testing::naive_edit_distance;
using testing::random_derivation;

TEST(Symbol, InternedEqualityAndHash) {
  const Symbol a("red");
  const Symbol b(std::string("re") + "d");
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::hash<Symbol>{}(a), std::hash<Symbol>{}(b));
  EXPECT_NE(a, Symbol("Red"));
  EXPECT_LT(Symbol("a"), Symbol("b"));
}

TEST(Symbol, RejectsInvalidNames) {
  EXPECT_THROW(Symbol(""), Error);
  EXPECT_THROW(Symbol("a b"), Error);
  EXPECT_THROW(Symbol("a("), Error);
  EXPECT_THROW(Symbol("a)"), Error);
  EXPECT_THROW(Symbol("a\tb"), Error);
}

TEST(Parse, Leaf) {
  const Derivation d = parse_derivation("a");
  ASSERT_TRUE(d.is_leaf());
  EXPECT_EQ(d.symbol().name(), "a");
  EXPECT_EQ(d.size(), 1u);
}

TEST(Parse, NestedReferent) {
  const Derivation d = parse_derivation("((red circle) (blue triangle))");
  const Derivation expected = Derivation::node(
      Derivation::node(Derivation::leaf("red"), Derivation::leaf("circle")),
      Derivation::node(Derivation::leaf("blue"), Derivation::leaf("triangle")));
  EXPECT_EQ(d, expected);
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(d.node_count(), 7u);
}

TEST(Parse, ArbitraryWhitespace) {
  EXPECT_EQ(parse_derivation("  (\ta\n  (b c) ) "), parse_derivation("(a (b c))"));
}

TEST(Parse, Errors) {
  const auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      parse_derivation(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no error for '" << text << "'";
    return 0;
  };
  EXPECT_LE(offset_of("(a b c)"), 7u);
  EXPECT_EQ(offset_of(""), 0u);
  EXPECT_LE(offset_of("   "), 3u);
  EXPECT_LE(offset_of("(a b"), 4u);
  EXPECT_EQ(offset_of("a b"), 2u);
  EXPECT_EQ(offset_of("(a b))"), 5u);
  EXPECT_EQ(offset_of(")"), 0u);
  EXPECT_LE(offset_of("(a)"), 3u);
  EXPECT_LE(offset_of("()"), 2u);
}

TEST(Parse, DeepTreeDoesNotOverflow) {
  std::string text;
  const int depth = 100000;
  for (int i = 0; i < depth; ++i) text += "(a ";
  text += "b";
  for (int i = 0; i < depth; ++i) text += ")";
  const Derivation d = parse_derivation(text);
  EXPECT_EQ(d.size(), static_cast<std::size_t>(depth) + 1);
  EXPECT_EQ(d, parse_derivation(format_derivation(d)));
}

TEST(Format, Canonical) {
  EXPECT_EQ(format_derivation(parse_derivation("(  a (b   c))")), "(a (b c))");
  EXPECT_EQ(format_derivation(Derivation::leaf("x")), "x");
}

TEST(Format, RoundTripRandomTrees) {
  std::mt19937_64 rng(42);
  const std::vector<std::string> alphabet{"a", "b", "red", "x1", "Z"};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 32;
    const Derivation d = random_derivation(rng, n, alphabet);
    ASSERT_EQ(parse_derivation(format_derivation(d)), d);
    ASSERT_EQ(size(d), n);
  }
}

TEST(Size, Additive) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Derivation d = random_derivation(rng, 2 + rng() % 20, {"a", "b"});
    EXPECT_EQ(d.size(), d.left().size() + d.right().size());
  }
}

TEST(Primitives, SortedAndDeduplicated) {
  const auto of = [](const char* s) {
    std::vector<std::string> names;
    for (const auto& sym : primitives_of(parse_derivation(s))) names.push_back(sym.name());
    return names;
  };
  EXPECT_EQ(of("a"), (std::vector<std::string>{"a"}));
  EXPECT_EQ(of("((a b) a)"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(of("(z (y x))"), (std::vector<std::string>{"x", "y", "z"}));
  const auto all = primitives_of(std::vector<Derivation>{
      parse_derivation("(c a)"), parse_derivation("(b a)")});
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].name(), "a");
  EXPECT_EQ(all[2].name(), "c");
}

TEST(EditDistance, HandValues) {
  const auto d = [](const char* a, const char* b) {
    return tree_edit_distance(parse_derivation(a), parse_derivation(b));
  };
  EXPECT_EQ(d("a", "a"), 0.0);
  EXPECT_EQ(d("a", "b"), 1.0);
  EXPECT_EQ(d("(a b)", "(a c)"), 1.0);
  EXPECT_EQ(d("a", "(a b)"), 1.0);
  EXPECT_EQ(d("(a b)", "a"), 1.0);
  EXPECT_EQ(d("(a b)", "(b a)"), 2.0);
}

TEST(EditDistance, MatchesNaiveRecursionExhaustively) {
  const auto trees = derivations_up_to(4, {"a", "b", "c"});
  for (const auto& x : trees) {
    for (const auto& y : trees) {
      ASSERT_EQ(tree_edit_distance(x, y), naive_edit_distance(x, y))
          << format_derivation(x) << " vs " << format_derivation(y);
    }
  }
}

TEST(EditDistance, MatchesNaiveRecursionOnLargerRandomTrees) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_derivation(rng, 1 + rng() % 7, {"a", "b", "c"});
    const auto y = random_derivation(rng, 1 + rng() % 7, {"a", "b", "c"});
    ASSERT_EQ(tree_edit_distance(x, y), naive_edit_distance(x, y));
  }
}

TEST(EditDistance, MetricAxiomsExhaustive) {
  const auto trees = derivations_up_to(4, {"a", "b", "c"});
  const std::size_t n = trees.size();
  ASSERT_EQ(n, 3u + 9u + 54u + 405u);
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = tree_edit_distance(trees[i], trees[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_EQ(dist[i * n + i], 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = dist[i * n + j];
      ASSERT_EQ(dij, dist[j * n + i]);
      ASSERT_EQ(dij == 0.0, i == j);
      ASSERT_LE(dij, static_cast<double>(trees[i].size() + trees[j].size()));
      for (std::size_t k = 0; k < n; ++k) {
        ASSERT_LE(dist[i * n + k], dij + dist[j * n + k]);
      }
    }
  }
}

TEST(EditDistance, DeepTrees) {
  std::string a = "x";
  std::string b = "y";
  for (int i = 0; i < 500; ++i) {
    a = "(a " + a + ")";
    b = "(a " + b + ")";
  }
  EXPECT_EQ(tree_edit_distance(parse_derivation(a), parse_derivation(b)), 1.0);
}

}  // namespace
}  // namespace tre
