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

#include "tre/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <unordered_map>

#include "linear_ops.hpp"
#include "seeding.hpp"
#include "tre/error.hpp"
#include "tre/kernels.hpp"

namespace tre {

void FitConfig::validate() const {
  if (steps == 0) throw ConfigError("steps must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive");
  }
  if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
    throw ConfigError("init scale must be positive");
  }
  if (!(convergence_tol >= 0.0)) {
    throw ConfigError("convergence tolerance must be non-negative");
  }
  if (restarts && *restarts == 0) throw ConfigError("restarts must be positive");
  if (composition.kind() == Composition::Kind::table) {
    throw ConfigError("table composition cannot be fitted by gradient descent");
  }
  if (learn_composition && composition.kind() != Composition::Kind::linear) {
    throw ConfigError("only linear composition has learnable parameters");
  }
}

double TreReport::tre_of(const std::string& id) const {
  for (const auto& [rid, value] : per_datum) {
    if (rid == id) return value;
  }
  throw Error("no record '" + id + "' in report");
}

Representation eval_compositional(const PrimitiveTable& table,
                                  const Composition& comp,
                                  const Derivation& d) {
  if (d.is_leaf()) return table.at(d.symbol());
  return compose(comp, eval_compositional(table, comp, d.left()),
                 eval_compositional(table, comp, d.right()));
}

Composition effective_composition(const PrimitiveTable& table,
                                  const Composition& configured) {
  if (table.composition_params()) {
    return Composition::linear(*table.composition_params());
  }
  return configured;
}

double tre_datum(const PrimitiveTable& table, const FitConfig& config,
                 const Record& record) {
  const Composition comp = effective_composition(table, config.composition);
  return distance(config.distance, record.repr,
                  eval_compositional(table, comp, record.derivation));
}

double objective(const PrimitiveTable& table, const FitConfig& config,
                 const Dataset& dataset) {
  double total = 0.0;
  for (const auto& r : dataset.records()) total += tre_datum(table, config, r);
  return total;
}

namespace {

constexpr double kMatrixInitNoise = 0.01;
constexpr std::size_t kTraceEvery = 10;
constexpr std::size_t kMaxReinitializations = 100;

// Flat parameter vector: one block per primitive (lexicographic), then A
// and B when the composition is learned.
struct Layout {
  std::size_t rows;
  std::size_t cols;
  std::size_t num_primitives;
  bool learn;

  std::size_t entry_size() const { return rows * cols; }
  std::size_t entry_offset(std::size_t p) const { return p * entry_size(); }
  std::size_t a_offset() const { return num_primitives * entry_size(); }
  std::size_t b_offset() const { return a_offset() + rows * rows; }
  std::size_t total() const {
    return a_offset() + (learn ? 2 * rows * rows : 0);
  }
};

// Post-order instruction list for one derivation.
struct Program {
  struct Op {
    bool leaf;
    std::size_t primitive = 0;
    std::size_t left = 0;
    std::size_t right = 0;
  };
  std::vector<Op> ops;
  std::vector<std::size_t> leaves;  // distinct primitive indices
};

std::size_t compile_into(const Derivation& d,
                         const std::unordered_map<Symbol, std::size_t>& index,
                         Program& prog) {
  if (d.is_leaf()) {
    prog.ops.push_back({true, index.at(d.symbol())});
    return prog.ops.size() - 1;
  }
  const std::size_t l = compile_into(d.left(), index, prog);
  const std::size_t r = compile_into(d.right(), index, prog);
  prog.ops.push_back({false, 0, l, r});
  return prog.ops.size() - 1;
}

// Thrown by the evaluator when a cosine prediction has zero norm.
class ZeroPrediction : public ZeroNormError {
 public:
  explicit ZeroPrediction(std::size_t record)
      : ZeroNormError("zero-norm prediction"), record(record) {}
  std::size_t record;
};

class Evaluator {
 public:
  Evaluator(const Dataset& dataset, const FitConfig& config,
            const std::vector<Symbol>& primitives)
      : dataset_(dataset),
        distance_(config.distance),
        kind_(config.composition.kind()),
        layout_{dataset.shape().rows(), dataset.shape().cols(),
                primitives.size(), config.learn_composition} {
    std::unordered_map<Symbol, std::size_t> index;
    for (std::size_t i = 0; i < primitives.size(); ++i) index[primitives[i]] = i;
    std::size_t max_ops = 0;
    for (const auto& rec : dataset.records()) {
      Program prog;
      compile_into(rec.derivation, index, prog);
      for (const auto& op : prog.ops) {
        if (op.leaf) prog.leaves.push_back(op.primitive);
      }
      std::sort(prog.leaves.begin(), prog.leaves.end());
      prog.leaves.erase(std::unique(prog.leaves.begin(), prog.leaves.end()),
                        prog.leaves.end());
      max_ops = std::max(max_ops, prog.ops.size());
      programs_.push_back(std::move(prog));
    }
    const std::size_t n = layout_.entry_size();
    values_.resize(max_ops * n);
    grads_.resize(max_ops * n);
    value_ptr_.resize(max_ops);
    if (kind_ == Composition::Kind::linear) {
      a_ = config.composition.linear_params().a;
      b_ = config.composition.linear_params().b;
      if (a_.rows != layout_.rows) {
        throw ConfigError("linear composition is " + std::to_string(a_.rows) +
                          "x" + std::to_string(a_.rows) + " but the dataset " +
                          dataset.shape().to_string() + " has " +
                          std::to_string(layout_.rows) + " rows");
      }
    }
  }

  const Layout& layout() const { return layout_; }
  const Program& program(std::size_t record) const { return programs_[record]; }

  // Objective at `params`. Fills `grad` (overwritten) when non-empty. When
  // `signs` is given, appends the sign of every l1 residual coordinate.
  double run(std::span<const double> params, std::span<double> grad,
             std::vector<std::int8_t>* signs = nullptr) {
    const auto& k = kernels::active();
    const std::size_t n = layout_.entry_size();
    const std::size_t rows = layout_.rows;
    const std::size_t cols = layout_.cols;
    const bool want_grad = !grad.empty();
    if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
    if (layout_.learn) {
      std::copy_n(params.begin() + layout_.a_offset(), rows * rows,
                  a_.values.begin());
      std::copy_n(params.begin() + layout_.b_offset(), rows * rows,
                  b_.values.begin());
    }
    std::vector<double> residual_grad(n);

    double total = 0.0;
    for (std::size_t ri = 0; ri < programs_.size(); ++ri) {
      const Program& prog = programs_[ri];
      const auto& ops = prog.ops;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto& op = ops[i];
        if (op.leaf) {
          value_ptr_[i] = params.data() + layout_.entry_offset(op.primitive);
          continue;
        }
        double* out = values_.data() + i * n;
        value_ptr_[i] = out;
        if (kind_ == Composition::Kind::additive) {
          k.add(value_ptr_[op.left], value_ptr_[op.right], out, n);
        } else {
          std::fill_n(out, n, 0.0);
          detail::mix_rows_acc(a_, value_ptr_[op.left], out, rows, cols);
          detail::mix_rows_acc(b_, value_ptr_[op.right], out, rows, cols);
        }
      }
      const std::size_t root = ops.size() - 1;
      const std::span<const double> pred(value_ptr_[root], n);
      const std::span<const double> target = dataset_[ri].repr.values();
      try {
        total += distance_values(distance_, pred, target);
      } catch (const ZeroNormError&) {
        throw ZeroPrediction(ri);
      }
      if (signs != nullptr && distance_ == Distance::l1) {
        for (std::size_t j = 0; j < n; ++j) {
          const double d = pred[j] - target[j];
          signs->push_back(d > 0.0 ? 1 : (d < 0.0 ? -1 : 0));
        }
      }
      if (!want_grad) continue;

      double* g_root = grads_.data() + root * n;
      distance_gradient_values(distance_, pred, target,
                               std::span<double>(g_root, n));
      for (std::size_t i = 0; i < root; ++i) {
        std::fill_n(grads_.data() + i * n, n, 0.0);
      }
      for (std::size_t i = root + 1; i-- > 0;) {
        const auto& op = ops[i];
        const double* g = grads_.data() + i * n;
        if (op.leaf) {
          k.axpy(1.0, g, grad.data() + layout_.entry_offset(op.primitive), n);
          continue;
        }
        double* gl = grads_.data() + op.left * n;
        double* gr = grads_.data() + op.right * n;
        if (kind_ == Composition::Kind::additive) {
          k.axpy(1.0, g, gl, n);
          k.axpy(1.0, g, gr, n);
        } else {
          detail::mix_rows_transposed_acc(a_, g, gl, rows, cols);
          detail::mix_rows_transposed_acc(b_, g, gr, rows, cols);
          if (layout_.learn) {
            detail::outer_acc(g, value_ptr_[op.left],
                              grad.data() + layout_.a_offset(), rows, cols);
            detail::outer_acc(g, value_ptr_[op.right],
                              grad.data() + layout_.b_offset(), rows, cols);
          }
        }
      }
    }
    return total;
  }

 private:
  const Dataset& dataset_;
  Distance distance_;
  Composition::Kind kind_;
  Layout layout_;
  std::vector<Program> programs_;
  std::vector<double> values_;
  std::vector<double> grads_;
  std::vector<const double*> value_ptr_;
  Matrix a_;
  Matrix b_;
};

void fill_gaussian(std::span<double> out, std::uint64_t seed, double scale) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, scale);
  for (double& v : out) v = normal(gen);
}

void init_entry(std::span<double> params, const Layout& layout,
                std::size_t p, const Symbol& symbol, std::uint64_t seed,
                std::uint64_t stream, double scale) {
  fill_gaussian(params.subspan(layout.entry_offset(p), layout.entry_size()),
                detail::derive_seed(seed, symbol.name(), stream), scale);
}

void init_matrices(std::span<double> params, const Layout& layout,
                   const LinearParams& centre, std::uint64_t seed,
                   std::uint64_t stream, double noise) {
  const std::size_t m = layout.rows * layout.rows;
  auto a = params.subspan(layout.a_offset(), m);
  auto b = params.subspan(layout.b_offset(), m);
  fill_gaussian(a, detail::derive_seed(seed, "\x01composition-a", stream),
                noise);
  fill_gaussian(b, detail::derive_seed(seed, "\x01composition-b", stream),
                noise);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] += centre.a.values[i];
    b[i] += centre.b.values[i];
  }
}

PrimitiveTable table_from_params(std::span<const double> params,
                                 const Layout& layout, const Shape& shape,
                                 const std::vector<Symbol>& primitives) {
  PrimitiveTable table(shape);
  for (std::size_t p = 0; p < primitives.size(); ++p) {
    auto block = params.subspan(layout.entry_offset(p), layout.entry_size());
    table.set(primitives[p],
              Representation(shape, {block.begin(), block.end()}));
  }
  if (layout.learn) {
    const std::size_t m = layout.rows * layout.rows;
    Matrix a{layout.rows, layout.rows,
             {params.begin() + layout.a_offset(),
              params.begin() + layout.a_offset() + m}};
    Matrix b{layout.rows, layout.rows,
             {params.begin() + layout.b_offset(),
              params.begin() + layout.b_offset() + m}};
    table.set_composition_params(LinearParams{std::move(a), std::move(b)});
  }
  return table;
}

void check_cosine_targets(const Dataset& dataset, Distance distance) {
  if (distance != Distance::cosine) return;
  for (const auto& r : dataset.records()) {
    const auto v = r.repr.values();
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
      throw ZeroNormError("record '" + r.id +
                          "' has a zero representation; cosine distance is "
                          "undefined");
    }
  }
}

struct RunResult {
  std::vector<double> params;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, double>> trace;
  bool converged = false;
  std::size_t steps_run = 0;
  std::vector<std::string> diagnostics;
};

RunResult run_once(Evaluator& eval, const Dataset& dataset,
                   const FitConfig& config,
                   const std::vector<Symbol>& primitives,
                   std::size_t restart) {
  const Layout& layout = eval.layout();
  const std::size_t total = layout.total();
  std::vector<double> params(total);
  for (std::size_t p = 0; p < primitives.size(); ++p) {
    init_entry(params, layout, p, primitives[p], config.seed, restart,
               config.init_scale);
  }
  if (layout.learn) {
    init_matrices(params, layout, config.composition.linear_params(),
                  config.seed, restart, kMatrixInitNoise);
  }

  std::vector<double> grad(total);
  std::vector<double> m(total, 0.0);
  std::vector<double> v(total, 0.0);
  // Best objective seen so far, per step.
  std::vector<double> history;
  history.reserve(config.steps);
  double last = 0.0;
  const auto& k = kernels::active();

  RunResult result;
  result.params = params;
  std::size_t reinitializations = 0;
  std::size_t adam_t = 0;

  auto consider = [&](double obj) {
    if (obj < result.objective) {
      result.objective = obj;
      result.params = params;
    }
  };

  for (std::size_t step = 0; step < config.steps; ++step) {
    double obj;
    try {
      obj = eval.run(params, grad);
    } catch (const ZeroPrediction& z) {
      if (++reinitializations > kMaxReinitializations) {
        throw ZeroNormError("cosine fit keeps producing zero-norm predictions");
      }
      std::string names;
      for (std::size_t p : eval.program(z.record).leaves) {
        init_entry(params, layout, p, primitives[p], config.seed,
                   (restart + 1) * 1000003 + step, config.init_scale);
        names += (names.empty() ? "" : ", ") + primitives[p].name();
      }
      result.diagnostics.push_back(
          "step " + std::to_string(step) + ": zero-norm prediction for record '" +
          dataset[z.record].id + "'; re-initialized " + names);
      result.steps_run = step + 1;
      continue;
    }
    result.steps_run = step + 1;
    if (!std::isfinite(obj)) {
      throw DivergenceError(
          "objective became non-finite at step " + std::to_string(step), step);
    }
    if (step % kTraceEvery == 0) result.trace.emplace_back(step, obj);
    consider(obj);
    last = obj;
    history.push_back(result.objective);

    if (obj == 0.0) {
      result.converged = true;
      break;
    }
    const std::size_t w = FitConfig::kConvergenceWindow;
    if (history.size() > w) {
      const double before = history[history.size() - 1 - w];
      if (before - result.objective <= config.convergence_tol * before) {
        result.converged = true;
        break;
      }
    }

    ++adam_t;
    const kernels::AdamStep adam{
        config.learning_rate,
        FitConfig::kBeta1,
        FitConfig::kBeta2,
        FitConfig::kEpsilon,
        1.0 - std::pow(FitConfig::kBeta1, static_cast<double>(adam_t)),
        1.0 - std::pow(FitConfig::kBeta2, static_cast<double>(adam_t)),
    };
    k.adam_update(adam, params.data(), grad.data(), m.data(), v.data(), total);
  }

  if (!result.converged) {
    try {
      const double obj = eval.run(params, {});
      if (std::isfinite(obj)) consider(obj);
    } catch (const ZeroPrediction&) {
      // The best earlier iterate stands.
    }
  }
  if (result.trace.empty() || result.trace.back().first + 1 != result.steps_run) {
    if (!history.empty()) result.trace.emplace_back(result.steps_run - 1, last);
  }
  if (!std::isfinite(result.objective)) {
    throw DivergenceError("no finite objective was reached", result.steps_run);
  }
  return result;
}

std::vector<std::pair<std::string, double>> per_datum_scores(
    const PrimitiveTable& table, const FitConfig& config,
    const Dataset& dataset) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(dataset.size());
  for (const auto& r : dataset.records()) {
    out.emplace_back(r.id, tre_datum(table, config, r));
  }
  return out;
}

void fill_scores(TreReport& report, const FitConfig& config,
                 const Dataset& dataset) {
  report.per_datum = per_datum_scores(report.table, config, dataset);
  double sum = 0.0;
  for (const auto& [id, value] : report.per_datum) sum += value;
  report.final_objective = sum;
  report.aggregate = sum / static_cast<double>(report.per_datum.size());
}

}  // namespace

TreReport fit(const Dataset& dataset, const FitConfig& config) {
  config.validate();
  check_cosine_targets(dataset, config.distance);
  const std::vector<Symbol> primitives = dataset.primitives();
  Evaluator eval(dataset, config, primitives);

  std::optional<TreReport> best;
  for (std::size_t restart = 0; restart < config.effective_restarts();
       ++restart) {
    RunResult run = run_once(eval, dataset, config, primitives, restart);
    TreReport report(table_from_params(run.params, eval.layout(),
                                       dataset.shape(), primitives));
    report.composition = effective_composition(report.table, config.composition);
    fill_scores(report, config, dataset);
    report.objective_trace = std::move(run.trace);
    report.converged = run.converged;
    report.steps_run = run.steps_run;
    report.best_restart = restart;
    report.diagnostics = std::move(run.diagnostics);
    if (!best || report.final_objective < best->final_objective) {
      if (best) {
        report.diagnostics.insert(report.diagnostics.begin(),
                                  best->diagnostics.begin(),
                                  best->diagnostics.end());
      }
      best = std::move(report);
    } else {
      best->diagnostics.insert(best->diagnostics.end(),
                               report.diagnostics.begin(),
                               report.diagnostics.end());
    }
  }
  return *std::move(best);
}

double gradient_check(const Dataset& dataset, const FitConfig& config,
                      std::size_t trials) {
  config.validate();
  check_cosine_targets(dataset, config.distance);
  const std::vector<Symbol> primitives = dataset.primitives();
  Evaluator eval(dataset, config, primitives);
  const Layout& layout = eval.layout();
  const std::size_t total = layout.total();
  constexpr double h = 1e-5;

  double worst = 0.0;
  std::vector<double> params(total);
  std::vector<double> analytic(total);
  std::vector<std::int8_t> signs_plus;
  std::vector<std::int8_t> signs_minus;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    fill_gaussian(std::span<double>(params).first(layout.a_offset()),
                  detail::derive_seed(config.seed, "gradcheck", trial), 1.0);
    if (layout.learn) {
      init_matrices(params, layout, config.composition.linear_params(),
                    config.seed, trial, 0.5);
    }
    eval.run(params, analytic);

    double diff_sq = 0.0;
    double analytic_sq = 0.0;
    double numeric_sq = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      const double saved = params[j];
      signs_plus.clear();
      signs_minus.clear();
      params[j] = saved + h;
      const double f_plus = eval.run(params, {}, &signs_plus);
      params[j] = saved - h;
      const double f_minus = eval.run(params, {}, &signs_minus);
      params[j] = saved;
      if (signs_plus != signs_minus) continue;  // crossed an l1 kink
      const double numeric = (f_plus - f_minus) / (2.0 * h);
      diff_sq += (analytic[j] - numeric) * (analytic[j] - numeric);
      analytic_sq += analytic[j] * analytic[j];
      numeric_sq += numeric * numeric;
    }
    const double scale = std::sqrt(std::max(analytic_sq, numeric_sq));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::sqrt(diff_sq) / scale);
  }
  return worst;
}

std::vector<HomomorphismResidual> homomorphism_residuals(
    const Dataset& dataset, const Composition& comp, Distance distance) {
  std::unordered_map<std::string, std::size_t> by_derivation;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_derivation.emplace(format_derivation(dataset[i].derivation), i);
  }
  std::vector<HomomorphismResidual> out;
  for (const auto& r : dataset.records()) {
    if (r.derivation.is_leaf()) continue;
    auto l = by_derivation.find(format_derivation(r.derivation.left()));
    auto rr = by_derivation.find(format_derivation(r.derivation.right()));
    if (l == by_derivation.end() || rr == by_derivation.end()) continue;
    const Record& left = dataset[l->second];
    const Record& right = dataset[rr->second];
    out.push_back({r.id, left.id, right.id,
                   tre::distance(distance, r.repr,
                                 compose(comp, left.repr, right.repr))});
  }
  return out;
}

std::pair<Composition, PrimitiveTable> trivial_composition(
    const Dataset& dataset) {
  const Shape shape = dataset.shape();
  std::unordered_map<std::string, Representation> value_of;
  for (const auto& r : dataset.records()) {
    auto [it, inserted] =
        value_of.try_emplace(format_derivation(r.derivation), r.repr);
    if (!inserted && !(it->second == r.repr)) {
      throw Error("records share derivation " + format_derivation(r.derivation) +
                  " but not a representation");
    }
  }
  // Sub-derivations that label no record get distinct placeholder values.
  double next_placeholder = 1e6;
  CompositionTable lookup;
  PrimitiveTable table(shape);
  auto visit = [&](auto& self, const Derivation& d) -> Representation {
    const std::string key = format_derivation(d);
    if (d.is_leaf()) {
      auto it = value_of.find(key);
      if (it == value_of.end()) {
        it = value_of
                 .emplace(key, Representation(shape, std::vector<double>(
                                                         shape.size(),
                                                         next_placeholder++)))
                 .first;
      }
      table.set(d.symbol(), it->second);
      return it->second;
    }
    const Representation left = self(self, d.left());
    const Representation right = self(self, d.right());
    auto it = value_of.find(key);
    if (it == value_of.end()) {
      it = value_of
               .emplace(key, Representation(shape, std::vector<double>(
                                                       shape.size(),
                                                       next_placeholder++)))
               .first;
    }
    lookup.insert(left, right, it->second);
    return it->second;
  };
  for (const auto& r : dataset.records()) visit(visit, r.derivation);
  return {Composition::table(std::move(lookup)), std::move(table)};
}

}  // namespace tre
