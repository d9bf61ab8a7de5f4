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

#ifndef TRE_DERIVATION_HPP_
#define TRE_DERIVATION_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tre {

// An interned primitive name. Two symbols with the same name share storage,
// so equality and hashing are pointer operations. Ordering is lexicographic
// on the name.
class Symbol {
 public:
  // Throws ParseError if `name` is empty or contains whitespace or parens.
  explicit Symbol(std::string_view name);

  const std::string& name() const { return *name_; }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name_ == b.name_;
  }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name() <=> b.name();
  }

 private:
  friend struct std::hash<Symbol>;
  const std::string* name_;
};

// Immutable binary tree over primitive symbols. Copies share structure.
class Derivation {
 public:
  static Derivation leaf(Symbol symbol);
  static Derivation leaf(std::string_view name) { return leaf(Symbol(name)); }
  static Derivation node(Derivation left, Derivation right);

  bool is_leaf() const;
  // Precondition: is_leaf().
  const Symbol& symbol() const;
  // Precondition: !is_leaf().
  const Derivation& left() const;
  const Derivation& right() const;

  // Number of leaves.
  std::size_t size() const;
  // Number of nodes, leaves included.
  std::size_t node_count() const;

  friend bool operator==(const Derivation& a, const Derivation& b);

 private:
  struct Node;
  explicit Derivation(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar: D ::= SYMBOL | "(" D D ")", whitespace between tokens is free.
// Throws ParseError carrying the byte offset of the problem.
Derivation parse_derivation(std::string_view text);

// Canonical text: "a", "(a b)", "((a b) c)".
std::string format_derivation(const Derivation& d);

inline std::size_t size(const Derivation& d) { return d.size(); }

// Distinct leaf symbols, ordered lexicographically.
std::vector<Symbol> primitives_of(const Derivation& d);
std::vector<Symbol> primitives_of(const std::vector<Derivation>& ds);

// Tree edit distance. Leaf/leaf costs 0 when the symbols match and 1
// otherwise; a leaf against a node keeps the best child and deletes the
// other; two nodes either align child-wise or collapse one side onto a
// child of the other. Evaluated bottom-up over all subtree pairs.
double tree_edit_distance(const Derivation& a, const Derivation& b);

}  // namespace tre

template <>
struct std::hash<tre::Symbol> {
  std::size_t operator()(const tre::Symbol& s) const noexcept {
    return std::hash<const std::string*>{}(s.name_);
  }
};

#endif  // TRE_DERIVATION_HPP_
