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

#include "tre/derivation.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_set>
#include <utility>

#include "tre/error.hpp"

namespace tre {
namespace {

bool is_delimiter(char c) {
  return c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c));
}

const std::string* intern(std::string_view name) {
  static std::mutex mu;
  static std::unordered_set<std::string> pool;
  std::lock_guard<std::mutex> lock(mu);
  return &*pool.emplace(name).first;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  if (name.empty()) throw ParseError("empty symbol name", 0);
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (is_delimiter(name[i])) {
      throw ParseError("symbol '" + std::string(name) +
                           "' contains whitespace or parentheses",
                       i);
    }
  }
  name_ = intern(name);
}

struct Derivation::Node {
  std::optional<Symbol> symbol;
  std::optional<Derivation> left;
  std::optional<Derivation> right;
  std::size_t size = 1;
  std::size_t node_count = 1;
};

Derivation Derivation::leaf(Symbol symbol) {
  auto n = std::make_shared<Node>();
  n->symbol = symbol;
  return Derivation(std::move(n));
}

Derivation Derivation::node(Derivation left, Derivation right) {
  auto n = std::make_shared<Node>();
  n->size = left.size() + right.size();
  n->node_count = left.node_count() + right.node_count() + 1;
  n->left = std::move(left);
  n->right = std::move(right);
  return Derivation(std::move(n));
}

bool Derivation::is_leaf() const { return node_->symbol.has_value(); }
const Symbol& Derivation::symbol() const { return *node_->symbol; }

const Derivation& Derivation::left() const { return *node_->left; }
const Derivation& Derivation::right() const { return *node_->right; }

std::size_t Derivation::size() const { return node_->size; }
std::size_t Derivation::node_count() const { return node_->node_count; }

bool operator==(const Derivation& a, const Derivation& b) {
  std::vector<std::pair<const Derivation*, const Derivation*>> stack{{&a, &b}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x->node_ == y->node_) continue;
    if (x->size() != y->size() || x->is_leaf() != y->is_leaf()) return false;
    if (x->is_leaf()) {
      if (!(x->symbol() == y->symbol())) return false;
      continue;
    }
    stack.emplace_back(&x->left(), &y->left());
    stack.emplace_back(&x->right(), &y->right());
  }
  return true;
}

Derivation parse_derivation(std::string_view text) {
  struct Frame {
    std::size_t open_offset;
    std::vector<Derivation> children;
  };
  std::vector<Frame> stack;
  std::optional<Derivation> result;

  auto attach = [&](Derivation d, std::size_t offset) {
    if (stack.empty()) {
      if (result) throw ParseError("trailing tokens after derivation", offset);
      result = std::move(d);
      return;
    }
    auto& children = stack.back().children;
    if (children.size() == 2) {
      throw ParseError("bracket has more than two children", offset);
    }
    children.push_back(std::move(d));
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      if (stack.empty() && result) {
        throw ParseError("trailing tokens after derivation", i);
      }
      stack.push_back(Frame{i, {}});
      ++i;
    } else if (c == ')') {
      if (stack.empty()) throw ParseError("unbalanced ')'", i);
      Frame frame = std::move(stack.back());
      stack.pop_back();
      if (frame.children.size() != 2) {
        throw ParseError("bracket has " + std::to_string(frame.children.size()) +
                             " children, expected 2",
                         frame.open_offset);
      }
      attach(Derivation::node(std::move(frame.children[0]),
                              std::move(frame.children[1])),
             frame.open_offset);
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !is_delimiter(text[i])) ++i;
      attach(Derivation::leaf(Symbol(text.substr(start, i - start))), start);
    }
  }
  if (!stack.empty()) {
    throw ParseError("unbalanced '('", stack.back().open_offset);
  }
  if (!result) throw ParseError("empty derivation", 0);
  return *std::move(result);
}

namespace {

void format_into(const Derivation& d, std::string& out) {
  if (d.is_leaf()) {
    out += d.symbol().name();
    return;
  }
  out += '(';
  format_into(d.left(), out);
  out += ' ';
  format_into(d.right(), out);
  out += ')';
}

void collect_leaves(const Derivation& d, std::set<Symbol>& out) {
  std::vector<const Derivation*> stack{&d};
  while (!stack.empty()) {
    const Derivation* x = stack.back();
    stack.pop_back();
    if (x->is_leaf()) {
      out.insert(x->symbol());
    } else {
      stack.push_back(&x->left());
      stack.push_back(&x->right());
    }
  }
}

// Post-order flattening: children always precede their parent.
struct FlatTree {
  struct Entry {
    const Derivation* tree;
    std::size_t left = 0;
    std::size_t right = 0;
  };
  std::vector<Entry> nodes;

  explicit FlatTree(const Derivation& root) {
    nodes.reserve(root.node_count());
    push(root);
  }

 private:
  std::size_t push(const Derivation& d) {
    if (d.is_leaf()) {
      nodes.push_back({&d});
      return nodes.size() - 1;
    }
    const std::size_t l = push(d.left());
    const std::size_t r = push(d.right());
    nodes.push_back({&d, l, r});
    return nodes.size() - 1;
  }
};

}  // namespace

std::string format_derivation(const Derivation& d) {
  std::string out;
  format_into(d, out);
  return out;
}

std::vector<Symbol> primitives_of(const Derivation& d) {
  std::set<Symbol> leaves;
  collect_leaves(d, leaves);
  return {leaves.begin(), leaves.end()};
}

std::vector<Symbol> primitives_of(const std::vector<Derivation>& ds) {
  std::set<Symbol> leaves;
  for (const auto& d : ds) collect_leaves(d, leaves);
  return {leaves.begin(), leaves.end()};
}

double tree_edit_distance(const Derivation& a, const Derivation& b) {
  const FlatTree s(a);
  const FlatTree t(b);
  const std::size_t m = t.nodes.size();
  std::vector<double> dist(s.nodes.size() * m);
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return dist[i * m + j];
  };
  auto sz = [](const FlatTree& f, std::size_t i) {
    return static_cast<double>(f.nodes[i].tree->size());
  };

  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& si = s.nodes[i];
    const bool si_leaf = si.tree->is_leaf();
    for (std::size_t j = 0; j < m; ++j) {
      const auto& tj = t.nodes[j];
      const bool tj_leaf = tj.tree->is_leaf();
      double d;
      if (si_leaf && tj_leaf) {
        d = si.tree->symbol() == tj.tree->symbol() ? 0.0 : 1.0;
      } else if (si_leaf) {
        d = std::min(at(i, tj.left) + sz(t, tj.right),
                     at(i, tj.right) + sz(t, tj.left));
      } else if (tj_leaf) {
        d = std::min(at(si.left, j) + sz(s, si.right),
                     at(si.right, j) + sz(s, si.left));
      } else {
        d = std::min({at(si.left, tj.left) + at(si.right, tj.right),
                      at(i, tj.left) + sz(t, tj.right),
                      at(i, tj.right) + sz(t, tj.left),
                      at(si.left, j) + sz(s, si.right),
                      at(si.right, j) + sz(s, si.left)});
      }
      at(i, j) = d;
    }
  }
  return at(s.nodes.size() - 1, m - 1);
}

}  // namespace tre
