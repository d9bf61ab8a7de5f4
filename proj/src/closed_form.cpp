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

// Least-squares oracle for additive composition under squared_l2. The
// prediction for a record is sum_p count(p in derivation) * entry_p, so the
// optimum solves counts * entries = targets column by column.

#include <Eigen/Dense>

#include <unordered_map>

#include "tre/error.hpp"
#include "tre/solver.hpp"

namespace tre {
namespace {

void count_leaves(const Derivation& d,
                  const std::unordered_map<Symbol, Eigen::Index>& index,
                  Eigen::MatrixXd& counts, Eigen::Index row) {
  if (d.is_leaf()) {
    counts(row, index.at(d.symbol())) += 1.0;
    return;
  }
  count_leaves(d.left(), index, counts, row);
  count_leaves(d.right(), index, counts, row);
}

}  // namespace

TreReport closed_form_fit(const Dataset& dataset, Distance distance,
                          const Composition& composition) {
  if (distance != Distance::squared_l2) {
    throw ConfigError("closed-form fit requires squared_l2 distance");
  }
  if (composition.kind() != Composition::Kind::additive) {
    throw ConfigError("closed-form fit requires additive composition");
  }
  const std::vector<Symbol> primitives = dataset.primitives();
  std::unordered_map<Symbol, Eigen::Index> index;
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    index[primitives[i]] = static_cast<Eigen::Index>(i);
  }

  const auto n = static_cast<Eigen::Index>(dataset.size());
  const auto p = static_cast<Eigen::Index>(primitives.size());
  const auto s = static_cast<Eigen::Index>(dataset.shape().size());
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, p);
  Eigen::MatrixXd targets(n, s);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Record& r = dataset[static_cast<std::size_t>(i)];
    count_leaves(r.derivation, index, counts, i);
    for (Eigen::Index j = 0; j < s; ++j) {
      targets(i, j) = r.repr.values()[static_cast<std::size_t>(j)];
    }
  }

  // Complete orthogonal decomposition yields the minimum-norm solution when
  // counts is rank deficient.
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(counts);
  const Eigen::MatrixXd entries = cod.solve(targets);

  PrimitiveTable table(dataset.shape());
  for (Eigen::Index i = 0; i < p; ++i) {
    std::vector<double> v(static_cast<std::size_t>(s));
    for (Eigen::Index j = 0; j < s; ++j) v[static_cast<std::size_t>(j)] = entries(i, j);
    table.set(primitives[static_cast<std::size_t>(i)],
              Representation(dataset.shape(), std::move(v)));
  }

  FitConfig config;
  config.distance = distance;
  config.composition = composition;
  TreReport report(std::move(table));
  report.composition = composition;
  double sum = 0.0;
  for (const auto& r : dataset.records()) {
    const double t = tre_datum(report.table, config, r);
    report.per_datum.emplace_back(r.id, t);
    sum += t;
  }
  report.final_objective = sum;
  report.aggregate = sum / static_cast<double>(dataset.size());
  report.converged = true;
  return report;
}

}  // namespace tre
