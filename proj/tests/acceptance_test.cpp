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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support.hpp"
#include "tre/analysis.hpp"
#include "tre/datagen.hpp"
#include "tre/io.hpp"
#include "tre/solver.hpp"

namespace {

using namespace tre;
using tre::testing::derivations_up_to;

struct Outcome {
  bool pass;
  std::string detail;
};

GenSpec base_spec(std::uint64_t seed, double noise) {
  GenSpec spec;
  spec.seed = seed;
  spec.noise_sigma = noise;
  return spec;
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

Outcome noiseless_fit() {
  const auto [data, truth] = generate_compositional(base_spec(7, 0.0));
  const auto start = std::chrono::steady_clock::now();
  const TreReport report = fit(data, FitConfig{});
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << "aggregate " << report.aggregate << ", " << secs << " s";
  return {report.aggregate < 1e-3 && secs < 10.0, d.str()};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec spec;
    spec.num_primitives = 5;
    spec.shape = Shape::vector(4);
    spec.num_records = 20;
    spec.noise_sigma = 0.3;
    spec.seed = seed;
    const Dataset data = generate_compositional(spec).first;
    FitConfig config;
    config.seed = seed;
    const double a = fit(data, config).aggregate;
    const double b = closed_form_fit(data).aggregate;
    worst = std::max(worst, std::abs(a - b));
  }
  const double hand = closed_form_fit(tre::testing::three_record_instance()).aggregate;
  std::ostringstream d;
  d << "max |fit - closed form| " << worst << ", hand instance " << hand;
  return {worst < 1e-3 && std::abs(hand - 4.0 / 9.0) < 1e-12, d.str()};
}

Outcome gradient_checks() {
  GenSpec spec;
  spec.num_primitives = 5;
  spec.shape = Shape::vector(4);
  spec.num_records = 12;
  spec.noise_sigma = 0.5;
  spec.seed = 3;
  const Dataset data = generate_compositional(spec).first;
  double worst = 0.0;
  std::ostringstream d;
  for (const bool linear : {false, true}) {
    for (Distance dist : {Distance::cosine, Distance::l1, Distance::squared_l2}) {
      FitConfig config;
      config.distance = dist;
      config.composition = linear ? Composition::linear_identity(4)
                                  : Composition::additive();
      config.learn_composition = linear;
      const double e = gradient_check(data, config, 100);
      worst = std::max(worst, e);
      d << (linear ? "linear" : "additive") << "/" << distance_name(dist) << " "
        << e << "; ";
    }
  }
  d << "max " << worst;
  return {worst < 1e-4, d.str()};
}

Outcome edit_distance_metric() {
  const auto trees = derivations_up_to(4, {"a", "b", "c"});
  const std::size_t n = trees.size();
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i * n + j] = tree_edit_distance(trees[i], trees[j]);
    }
  }
  std::size_t failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = dist[i * n + j];
      if ((dij == 0.0) != (i == j)) ++failures;
      if (dij != dist[j * n + i]) ++failures;
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i * n + k] > dij + dist[j * n + k]) ++failures;
      }
    }
  }
  const auto p = [](const char* s) { return parse_derivation(s); };
  const bool hand = tree_edit_distance(p("a"), p("a")) == 0.0 &&
                    tree_edit_distance(p("(a b)"), p("(a c)")) == 1.0 &&
                    tree_edit_distance(p("a"), p("(a b)")) == 1.0 &&
                    tree_edit_distance(p("(a b)"), p("(b a)")) == 2.0;
  std::ostringstream d;
  d << n << " trees, " << failures << " axiom failures, hand values "
    << (hand ? "match" : "differ");
  return {failures == 0 && hand, d.str()};
}

// Scales every representation and table entry by the same positive factor.
std::pair<Dataset, PrimitiveTable> rescale(const Dataset& data,
                                           const PrimitiveTable& table,
                                           double factor) {
  const auto scaled = [factor](const Representation& r) {
    std::vector<double> v(r.values().begin(), r.values().end());
    for (double& x : v) x *= factor;
    return Representation(r.shape(), std::move(v));
  };
  std::vector<Record> records;
  for (const auto& r : data.records()) {
    records.push_back(Record{r.id, scaled(r.repr), r.derivation});
  }
  PrimitiveTable out(table.shape());
  for (const auto& [sym, value] : table.entries()) out.set(sym, scaled(value));
  return {Dataset(data.shape(), std::move(records)), std::move(out)};
}

Outcome distance_bound() {
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenSpec spec;
    spec.num_primitives = 6;
    spec.shape = Shape::vector(8);
    spec.num_records = 30;
    spec.noise_sigma = 0.1;
    spec.seed = 100 + seed;
    const Dataset data = generate_compositional(spec).first;
    FitConfig config;
    config.distance = Distance::l1;
    config.seed = seed;
    const TreReport report = fit(data, config);
    // Shrink so that every entry has l1 norm at most 1/2: both conditions
    // then hold.
    double largest = 0.0;
    for (const auto& [sym, value] : report.table.entries()) {
      largest = std::max(largest, l1_norm(value.values()));
    }
    const auto [sdata, stable] = rescale(data, report.table, 0.5 / largest);
    const BoundCheckReport check =
        bound_check(sdata, stable, Composition::additive(), Distance::l1);
    violations += check.violations.size();
  }

  // Norm and distance bounds for small trees under tables that satisfy
  // the conditions.
  const std::vector<std::string> names{"a", "b", "c"};
  const auto small = derivations_up_to(4, names);
  const auto lemma1_trees = derivations_up_to(5, names);
  std::size_t small_failures = 0;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    PrimitiveTable table(Shape::vector(3));
    for (const auto& name : names) {
      std::vector<double> v(3);
      for (double& x : v) x = normal(rng);
      const double norm = l1_norm(v);
      for (double& x : v) x *= 0.5 / norm;
      table.set(Symbol(name), Representation::vector(std::move(v)));
    }
    const auto comp = Composition::additive();
    for (const auto& e : lemma1_trees) {
      const auto r = eval_compositional(table, comp, e);
      if (l1_norm(r.values()) > static_cast<double>(e.size()) + 1e-12) {
        ++small_failures;
      }
    }
    std::vector<Representation> reps;
    for (const auto& e : small) reps.push_back(eval_compositional(table, comp, e));
    for (std::size_t i = 0; i < small.size(); ++i) {
      for (std::size_t j = 0; j < small.size(); ++j) {
        const double lhs = distance(Distance::l1, reps[i], reps[j]);
        if (lhs > tree_edit_distance(small[i], small[j]) + 1e-12) ++small_failures;
      }
    }
  }
  std::ostringstream d;
  d << violations << " bound violations over 50 datasets, " << small_failures
    << " small-tree failures";
  return {violations == 0 && small_failures == 0, d.str()};
}

double mean_fitted_tre(double noise, bool random) {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GenSpec spec = base_spec(seed, noise);
    const Dataset data =
        random ? generate_random(spec) : generate_compositional(spec).first;
    FitConfig config;
    config.seed = seed;
    sum += fit(data, config).aggregate;
  }
  return sum / 10.0;
}

Outcome discrimination() {
  const double comp = mean_fitted_tre(0.1, false);
  const double rand = mean_fitted_tre(0.0, true);
  std::ostringstream d;
  d << "compositional " << comp << ", random " << rand << ", ratio "
    << rand / comp;
  return {rand / comp > 5.0, d.str()};
}

Outcome noise_monotonicity() {
  std::vector<double> means;
  std::ostringstream d;
  for (double sigma : {0.0, 0.1, 0.3, 1.0}) {
    means.push_back(mean_fitted_tre(sigma, false));
    d << "sigma " << sigma << ": " << means.back() << "; ";
  }
  bool increasing = true;
  for (std::size_t i = 1; i < means.size(); ++i) {
    increasing = increasing && means[i] > means[i - 1];
  }
  return {increasing, d.str()};
}

Outcome language_fragments() {
  const auto dir = std::filesystem::temp_directory_path() / "tre_acceptance_fig5";
  std::filesystem::create_directories(dir);
  const auto [a, b] = fig5_languages();
  std::ostringstream d;
  bool ok = true;
  for (const auto* lang : {&a, &b}) {
    const auto path = (dir / (lang->dataset[0].id.substr(0, 1) + ".jsonl")).string();
    io::write_dataset_file(path, lang->dataset, lang->alphabet);
    const io::DatasetFile file = io::read_dataset_file(path);
    FitConfig config;
    config.distance = Distance::l1;
    config.composition = Composition::linear_identity(kFig5MessageLength);
    config.learn_composition = true;
    const TreReport report = fit(file.dataset, config);
    ok = ok && file.dataset.size() == 8 && std::isfinite(report.aggregate);
    d << lang->dataset[0].id.substr(0, 1) << " TRE " << report.aggregate << "; ";
  }
  std::filesystem::remove_all(dir);
  return {ok, d.str()};
}

Outcome mutual_information() {
  const std::vector<std::string> labels{"w", "x", "y", "z"};
  const std::vector<Representation> constant(4, Representation::vector({1.0, 2.0}));
  const std::vector<Representation> distinct{
      Representation::vector({0.0}), Representation::vector({1.0}),
      Representation::vector({2.0}), Representation::vector({3.0})};
  const std::vector<std::string> halves{"a", "a", "b", "b"};
  const std::vector<Representation> two{
      Representation::vector({0.0}), Representation::vector({0.0}),
      Representation::vector({5.0}), Representation::vector({5.0})};
  const double zero = mutual_information_binned(labels, constant);
  const double full = mutual_information_binned(labels, distinct);
  const double one = mutual_information_binned(halves, two);
  std::ostringstream d;
  d << "constant " << zero << ", distinct " << full << ", 1-bit case " << one;
  return {std::abs(zero) < 1e-12 && std::abs(full - 2.0) < 1e-12 &&
              std::abs(one - 1.0) < 1e-12,
          d.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome cli_pipeline() {
  const auto dir = std::filesystem::temp_directory_path() / "tre_acceptance_cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto data = (dir / "data.jsonl").string();
  const auto report = (dir / "report.json").string();
  std::vector<std::string> datasets;
  std::vector<std::string> reports;
  std::vector<std::string> topo;
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    std::ostringstream out, err;
    ok = ok && cli::run({"gen", "--primitives", "5", "--dim", "6", "--records",
                         "25", "--noise", "0.1", "--seed", "9", "--out", data},
                        out, err) == 0;
    ok = ok && cli::run({"fit", data, "--distance", "l1", "--seed", "4", "--out",
                         report},
                        out, err) == 0;
    std::ostringstream topo_out;
    ok = ok && cli::run({"topo", data, "--rank"}, topo_out, err) == 0;
    reports.push_back(slurp(report));
    topo.push_back(topo_out.str());
    datasets.push_back(slurp(data));
  }
  std::filesystem::remove_all(dir);
  const bool identical = datasets[0] == datasets[1] &&
                         reports[0] == reports[1] && topo[0] == topo[1] &&
                         !reports[0].empty();
  return {ok && identical,
          std::string("exit codes ") + (ok ? "ok" : "nonzero") + ", reports " +
              (identical ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"noiseless additive data fits below 1e-3 within 10 s", noiseless_fit},
      {"optimizer matches closed-form least squares", oracle_equivalence},
      {"analytic gradients match finite differences", gradient_checks},
      {"tree edit distance is a metric", edit_distance_metric},
      {"distance bound holds on fitted data and small trees", distance_bound},
      {"compositional and random data are separated", discrimination},
      {"TRE increases with noise", noise_monotonicity},
      {"emergent-language fixtures fit", language_fragments},
      {"binned mutual information estimator", mutual_information},
      {"CLI pipeline is deterministic", cli_pipeline},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " "
              << criteria[i].first << " (" << o.detail << ")" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
