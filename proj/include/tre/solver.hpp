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

#ifndef TRE_SOLVER_HPP_
#define TRE_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tre/dataset.hpp"
#include "tre/derivation.hpp"
#include "tre/space.hpp"

namespace tre {

// Optimizer settings for fit(). Defaults are the library's own choices.
struct FitConfig {
  Distance distance = Distance::squared_l2;
  Composition composition = Composition::additive();
  // Fit the linear composition matrices jointly with the primitives. The
  // configured matrices are the centre of the random initialization.
  bool learn_composition = false;
  std::size_t steps = 1000;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
  double init_scale = 0.01;
  // Stop when the objective improves by less than this fraction over
  // kConvergenceWindow steps.
  double convergence_tol = 1e-8;
  // Unset: 1, or 5 when learning the composition.
  std::optional<std::size_t> restarts;

  static constexpr std::size_t kConvergenceWindow = 50;
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  std::size_t effective_restarts() const {
    return restarts.value_or(learn_composition ? 5 : 1);
  }

  // Throws ConfigError.
  void validate() const;
};

struct TreReport {
  explicit TreReport(PrimitiveTable fitted) : table(std::move(fitted)) {}

  // (id, TRE(x)) in dataset order.
  std::vector<std::pair<std::string, double>> per_datum;
  // Mean of per_datum.
  double aggregate = 0.0;
  PrimitiveTable table;
  // Composition the table is meant to be evaluated with.
  Composition composition = Composition::additive();
  // (step, objective) samples of the selected restart.
  std::vector<std::pair<std::size_t, double>> objective_trace;
  bool converged = false;
  std::size_t steps_run = 0;
  // Sum of per-datum TRE at the reported table.
  double final_objective = 0.0;
  std::size_t best_restart = 0;
  std::vector<std::string> diagnostics;

  // Throws Error if `id` is not part of the report.
  double tre_of(const std::string& id) const;
};

// Bottom-up evaluation of the compositional approximation. Throws
// MissingPrimitiveError naming the first uncovered leaf.
Representation eval_compositional(const PrimitiveTable& table,
                                  const Composition& comp,
                                  const Derivation& d);

// The table's learned matrices when present, otherwise the configured
// composition.
Composition effective_composition(const PrimitiveTable& table,
                                  const Composition& configured);

double tre_datum(const PrimitiveTable& table, const FitConfig& config,
                 const Record& record);

// Sum over records of tre_datum.
double objective(const PrimitiveTable& table, const FitConfig& config,
                 const Dataset& dataset);

// Minimizes the objective with an Adam-style first-order method, keeping
// the best of `restarts` runs. Deterministic for a given dataset order and
// config. Throws DivergenceError when the objective stops being finite and
// ZeroNormError when a cosine fit meets a zero target representation.
TreReport fit(const Dataset& dataset, const FitConfig& config);

// Exact least-squares optimum for additive composition under squared_l2,
// using the minimum-norm solution when primitives are not identifiable.
// Throws ConfigError for any other distance or composition.
TreReport closed_form_fit(const Dataset& dataset,
                          Distance distance = Distance::squared_l2,
                          const Composition& composition =
                              Composition::additive());

// Worst relative error (over `trials` random parameter points) between the
// analytic gradient of the objective and central finite differences with
// step 1e-5. For l1, coordinates whose perturbation flips the sign of any
// residual are skipped.
double gradient_check(const Dataset& dataset, const FitConfig& config,
                      std::size_t trials);

struct HomomorphismResidual {
  std::string id;
  std::string left_id;
  std::string right_id;
  double residual;
};

// For every record whose derivation is a bracket of two derivations that
// themselves label records, the distance between the record's
// representation and the composition of its parts' representations.
std::vector<HomomorphismResidual> homomorphism_residuals(
    const Dataset& dataset, const Composition& comp, Distance distance);

// Builds a lookup composition and primitive table that reproduce every
// record exactly, which is always possible when distinct records have
// distinct derivations. Throws Error when two records share a derivation
// but not a representation, or the lookup would need conflicting entries.
std::pair<Composition, PrimitiveTable> trivial_composition(
    const Dataset& dataset);

}  // namespace tre

#endif  // TRE_SOLVER_HPP_
