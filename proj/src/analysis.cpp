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

#include "tre/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "tre/derivation.hpp"
#include "tre/error.hpp"
#include "tre/solver.hpp"

namespace tre {
namespace {

void require_pairable(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error("correlation inputs have different lengths");
  }
  if (xs.size() < 3) {
    throw UndefinedCorrelationError("correlation needs at least 3 samples, got " +
                                    std::to_string(xs.size()));
  }
}

double pearson_coefficient(std::span<const double> xs,
                           std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("correlation undefined: constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double t_test_p_value(double r, std::size_t n) {
  if (std::fabs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n) - 2.0;
  const double t = r * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))),
                    0.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

CorrelationResult pearson(std::span<const double> xs,
                          std::span<const double> ys) {
  require_pairable(xs, ys);
  const double r = pearson_coefficient(xs, ys);
  return {r, t_test_p_value(r, xs.size()), xs.size()};
}

CorrelationResult spearman(std::span<const double> xs,
                           std::span<const double> ys) {
  require_pairable(xs, ys);
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  const double r = pearson_coefficient(rx, ry);
  return {r, t_test_p_value(r, xs.size()), xs.size()};
}

double permutation_p_value(std::span<const double> xs,
                           std::span<const double> ys, bool rank_based) {
  require_pairable(xs, ys);
  if (xs.size() > 10) {
    throw Error("exact permutation test is limited to 10 samples");
  }
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  if (rank_based) {
    a = average_ranks(a);
    b = average_ranks(b);
  }
  const double observed = std::fabs(pearson_coefficient(a, b));
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> shuffled(b.size());
  std::size_t extreme = 0;
  std::size_t total = 0;
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = b[perm[i]];
    if (std::fabs(pearson_coefficient(a, shuffled)) >= observed - 1e-12) ++extreme;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

PairwiseDistances pairwise_distances(const Dataset& dataset,
                                     Distance distance) {
  PairwiseDistances out;
  const std::size_t n = dataset.size();
  const std::size_t count = n * (n - 1) / 2;
  out.pairs.reserve(count);
  out.representation.reserve(count);
  out.derivation.reserve(count);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.pairs.emplace_back(i, j);
      out.representation.push_back(
          tre::distance(distance, dataset[i].repr, dataset[j].repr));
      out.derivation.push_back(
          tree_edit_distance(dataset[i].derivation, dataset[j].derivation));
    }
  }
  return out;
}

CorrelationResult topographic_similarity(const Dataset& dataset,
                                         Distance distance, bool rank_based) {
  if (dataset.size() < 3) {
    throw UndefinedCorrelationError(
        "topographic similarity needs at least 3 records, got " +
        std::to_string(dataset.size()));
  }
  const PairwiseDistances d = pairwise_distances(dataset, distance);
  return rank_based ? spearman(d.representation, d.derivation)
                    : pearson(d.representation, d.derivation);
}

BoundCheckReport bound_check(const Dataset& dataset, const PrimitiveTable& table,
                             const Composition& comp, Distance distance) {
  if (distance != Distance::l1) {
    throw ConditionsUnmetError(
        "conditions unmet: the bound needs a translation-invariant metric (l1), "
        "got " + std::string(distance_name(distance)));
  }
  if (comp.kind() != Composition::Kind::additive) {
    throw ConditionsUnmetError(
        "conditions unmet: the bound is checked for additive composition only");
  }
  constexpr double kUnit = 1.0 + 1e-12;
  const Representation zero = Representation::zeros(table.shape());
  const auto& entries = table.entries();
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    const double norm = tre::distance(distance, it->second, zero);
    if (norm > kUnit) {
      throw ConditionsUnmetError("conditions unmet: entry '" + it->first.name() +
                                 "' is at distance " + std::to_string(norm) +
                                 " from the identity element");
    }
    for (auto jt = std::next(it); jt != entries.end(); ++jt) {
      const double d = tre::distance(distance, it->second, jt->second);
      if (d > kUnit) {
        throw ConditionsUnmetError("conditions unmet: entries '" +
                                   it->first.name() + "' and '" +
                                   jt->first.name() + "' are " +
                                   std::to_string(d) + " apart");
      }
    }
  }

  BoundCheckReport report;
  std::vector<Representation> approx;
  approx.reserve(dataset.size());
  for (const auto& r : dataset.records()) {
    approx.push_back(eval_compositional(table, comp, r.derivation));
    report.epsilon =
        std::max(report.epsilon, tre::distance(distance, r.repr, approx.back()));
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t j = i + 1; j < dataset.size(); ++j) {
      const double lhs = tre::distance(distance, dataset[i].repr, dataset[j].repr);
      const double rhs =
          tree_edit_distance(dataset[i].derivation, dataset[j].derivation) +
          2.0 * report.epsilon;
      if (lhs > rhs + kBoundSlack * (1.0 + rhs)) {
        report.violations.push_back({dataset[i].id, dataset[j].id, lhs, rhs});
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

namespace {

template <typename Key>
double entropy_bits(const std::map<Key, std::size_t>& counts, double total) {
  double h = 0.0;
  for (const auto& [key, c] : counts) {
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double mutual_information_binned(std::span<const std::string> inputs,
                                 std::span<const Representation> representations,
                                 std::size_t bins) {
  if (inputs.size() != representations.size()) {
    throw Error("inputs and representations have different lengths");
  }
  if (inputs.empty()) throw Error("mutual information of an empty sample");
  if (bins < 2) throw ConfigError("mutual information needs at least 2 bins");
  const Shape shape = representations.front().shape();
  for (const auto& r : representations) {
    if (r.shape() != shape) throw ShapeError("representations differ in shape");
  }

  const std::size_t n = representations.size();
  const std::size_t dims = shape.size();
  std::vector<std::vector<std::size_t>> patterns(n, std::vector<std::size_t>(dims));
  for (std::size_t c = 0; c < dims; ++c) {
    double lo = representations[0].values()[c];
    double hi = lo;
    for (const auto& r : representations) {
      lo = std::min(lo, r.values()[c]);
      hi = std::max(hi, r.values()[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t b = 0;
      if (hi > lo) {
        const double x = (representations[i].values()[c] - lo) / (hi - lo);
        b = std::min(bins - 1, static_cast<std::size_t>(x * static_cast<double>(bins)));
      }
      patterns[i][c] = b;
    }
  }

  std::map<std::vector<std::size_t>, std::size_t> joint;
  std::map<std::string, std::map<std::vector<std::size_t>, std::size_t>> by_label;
  for (std::size_t i = 0; i < n; ++i) {
    ++joint[patterns[i]];
    ++by_label[inputs[i]][patterns[i]];
  }
  const double total = static_cast<double>(n);
  const double h_repr = entropy_bits(joint, total);
  double h_cond = 0.0;
  for (const auto& [label, counts] : by_label) {
    double label_total = 0.0;
    for (const auto& [key, c] : counts) label_total += static_cast<double>(c);
    h_cond += label_total / total * entropy_bits(counts, label_total);
  }
  return std::max(0.0, h_repr - h_cond);
}

}  // namespace tre
