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

#ifndef TRE_ANALYSIS_HPP_
#define TRE_ANALYSIS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tre/dataset.hpp"
#include "tre/space.hpp"

namespace tre {

struct CorrelationResult {
  double coefficient = 0.0;
  // Two-sided, from the t approximation with n - 2 degrees of freedom.
  double p_value = 1.0;
  std::size_t n = 0;
};

// Both throw UndefinedCorrelationError when n < 3 or either side has zero
// variance. Spearman assigns average ranks to ties.
CorrelationResult pearson(std::span<const double> xs,
                          std::span<const double> ys);
CorrelationResult spearman(std::span<const double> xs,
                           std::span<const double> ys);

// Exact two-sided permutation p-value: the fraction of all orderings of ys
// whose coefficient is at least as extreme as the observed one. Limited to
// n <= 10.
double permutation_p_value(std::span<const double> xs,
                           std::span<const double> ys, bool rank_based);

struct PairwiseDistances {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> representation;
  std::vector<double> derivation;
};

// Distances over all unordered record pairs (i < j), row-major order.
PairwiseDistances pairwise_distances(const Dataset& dataset,
                                     Distance distance);

// Correlation between representation distances and tree edit distances
// over all record pairs; n in the result counts pairs.
CorrelationResult topographic_similarity(const Dataset& dataset,
                                         Distance distance, bool rank_based);

struct BoundViolation {
  std::string first_id;
  std::string second_id;
  double lhs;  // distance between the two representations
  double rhs;  // tree edit distance + 2 epsilon
};

struct BoundCheckReport {
  double epsilon = 0.0;
  std::vector<BoundViolation> violations;
  bool holds = true;
};

// Relative slack allowed for floating-point rounding when comparing the
// two sides of the bound.
inline constexpr double kBoundSlack = 1e-9;

// Checks delta(f(x), f(x')) <= edit_distance(e, e') + 2 epsilon over all
// record pairs, where epsilon is the largest per-record reconstruction
// error under `table`. Requires l1 distance, additive composition, and
// table entries that lie in the unit ball and within distance 1 of each
// other; throws ConditionsUnmetError otherwise.
BoundCheckReport bound_check(const Dataset& dataset, const PrimitiveTable& table,
                             const Composition& comp, Distance distance);

// Plug-in estimate, in bits, of I(binned representation; input label).
// Each coordinate is cut into `bins` equal-width bins over its observed
// range; a constant coordinate falls entirely in bin 0.
double mutual_information_binned(std::span<const std::string> inputs,
                                 std::span<const Representation> representations,
                                 std::size_t bins = 30);

}  // namespace tre

#endif  // TRE_ANALYSIS_HPP_
