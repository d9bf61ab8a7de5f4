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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tre/analysis.hpp"
#include "tre/datagen.hpp"
#include "tre/error.hpp"
#include "tre/io.hpp"
#include "tre/solver.hpp"

namespace tre::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'", 0);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Composition make_composition(const std::string& kind, std::size_t rows) {
  if (kind == "additive") return Composition::additive();
  if (kind == "linear") return Composition::linear_identity(rows);
  throw ConfigError("unknown composition '" + kind + "'");
}

struct FitOptions {
  std::string dataset;
  std::string distance = "squared_l2";
  std::string composition = "additive";
  bool learn = false;
  double lr = 0.01;
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double init_scale = 0.01;
  std::optional<std::size_t> restarts;
  std::string out;
};

int cmd_fit(const FitOptions& o, std::ostream& out) {
  const io::DatasetFile file = io::read_dataset_file(o.dataset);
  FitConfig config;
  config.distance = parse_distance(o.distance);
  config.composition = make_composition(o.composition, file.dataset.shape().rows());
  config.learn_composition = o.learn;
  config.learning_rate = o.lr;
  config.steps = o.steps;
  config.seed = o.seed;
  config.convergence_tol = o.tol;
  config.init_scale = o.init_scale;
  config.restarts = o.restarts;
  const TreReport report = fit(file.dataset, config);
  const std::string text = io::format_report(report, config, o.dataset);
  if (o.out.empty()) {
    out << text;
  } else {
    write_text(o.out, text);
    out << "aggregate TRE " << report.aggregate << " over "
        << report.per_datum.size() << " records -> " << o.out << '\n';
  }
  return kOk;
}

int cmd_eval(const std::string& report_path, const std::string& dataset_path,
             std::ostream& out) {
  const io::LoadedReport loaded = io::parse_report(read_text(report_path));
  const io::DatasetFile file = io::read_dataset_file(dataset_path);
  FitConfig config;
  config.distance = loaded.distance;
  config.composition = loaded.composition;
  ordered_json j;
  ordered_json per = ordered_json::object();
  double sum = 0.0;
  for (const auto& r : file.dataset.records()) {
    const double t = tre_datum(loaded.table, config, r);
    per[r.id] = t;
    sum += t;
  }
  j["aggregate"] = sum / static_cast<double>(file.dataset.size());
  j["per_datum"] = std::move(per);
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_editdist(const std::string& a, const std::string& b, std::ostream& out) {
  out << tree_edit_distance(parse_derivation(a), parse_derivation(b)) << '\n';
  return kOk;
}

int cmd_topo(const std::string& dataset_path, const std::string& distance,
             bool rank, std::ostream& out) {
  const io::DatasetFile file = io::read_dataset_file(dataset_path);
  const CorrelationResult r =
      topographic_similarity(file.dataset, parse_distance(distance), rank);
  ordered_json j;
  j["method"] = rank ? "spearman" : "pearson";
  j["distance"] = distance;
  j["coefficient"] = r.coefficient;
  j["p_value"] = r.p_value;
  j["n"] = r.n;
  out << j.dump(2) << '\n';
  return kOk;
}

struct GenOptions {
  std::string kind = "compositional";
  std::size_t primitives = 8;
  std::size_t dim = 16;
  std::size_t length = 0;
  std::size_t vocab = 0;
  std::size_t min_depth = 1;
  std::size_t max_depth = 3;
  std::size_t records = 60;
  double noise = 0.0;
  std::string composition = "additive";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  if (o.kind == "fig5") {
    if (o.out.empty()) throw ConfigError("--kind fig5 needs --out DIRECTORY");
    std::filesystem::create_directories(o.out);
    const auto [a, b] = fig5_languages();
    const auto path_a = (std::filesystem::path(o.out) / "language_A.jsonl").string();
    const auto path_b = (std::filesystem::path(o.out) / "language_B.jsonl").string();
    io::write_dataset_file(path_a, a.dataset, a.alphabet);
    io::write_dataset_file(path_b, b.dataset, b.alphabet);
    out << path_a << '\n' << path_b << '\n';
    return kOk;
  }
  if (o.kind != "compositional" && o.kind != "random") {
    throw ConfigError("unknown --kind '" + o.kind + "'");
  }
  if ((o.length == 0) != (o.vocab == 0)) {
    throw ConfigError("--length and --vocab must be given together");
  }
  GenSpec spec;
  spec.num_primitives = o.primitives;
  spec.shape = o.length > 0 ? Shape::code_matrix(o.length, o.vocab)
                            : Shape::vector(o.dim);
  spec.min_depth = o.min_depth;
  spec.max_depth = o.max_depth;
  spec.num_records = o.records;
  spec.noise_sigma = o.noise;
  spec.seed = o.seed;
  if (o.composition == "linear") {
    spec.composition =
        Composition::linear(random_linear_params(spec.shape.rows(), o.seed, 0.1));
  } else if (o.composition != "additive") {
    throw ConfigError("unknown composition '" + o.composition + "'");
  }
  const Dataset data = o.kind == "random" ? generate_random(spec)
                                          : generate_compositional(spec).first;
  if (o.out.empty()) {
    io::write_dataset(out, data);
  } else {
    io::write_dataset_file(o.out, data);
  }
  return kOk;
}

int cmd_gradcheck(const std::string& composition, const std::string& distance,
                  std::size_t trials, std::uint64_t seed, double threshold,
                  std::ostream& out) {
  GenSpec spec;
  spec.num_primitives = 5;
  spec.shape = Shape::vector(4);
  spec.num_records = 12;
  spec.noise_sigma = 0.5;
  spec.seed = seed;
  const Dataset data = generate_compositional(spec).first;
  FitConfig config;
  config.distance = parse_distance(distance);
  config.composition = make_composition(composition, spec.shape.rows());
  config.learn_composition = config.composition.kind() == Composition::Kind::linear;
  config.seed = seed;
  const double worst = gradient_check(data, config, trials);
  out << worst << '\n';
  return worst < threshold ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Tree reconstruction error: graded compositionality scores"};
  app.require_subcommand(1);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "Fit primitives and report TRE");
  fit_cmd->add_option("dataset", fit_opts.dataset, "Dataset file")->required();
  fit_cmd->add_option("--distance", fit_opts.distance, "cosine | l1 | squared_l2")
      ->capture_default_str();
  fit_cmd->add_option("--composition", fit_opts.composition, "additive | linear")
      ->capture_default_str();
  fit_cmd->add_flag("--learn-composition", fit_opts.learn,
                    "Fit the linear composition matrices");
  fit_cmd->add_option("--lr", fit_opts.lr, "Learning rate")->capture_default_str();
  fit_cmd->add_option("--steps", fit_opts.steps, "Maximum optimizer steps")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_opts.seed, "Initialization seed")
      ->capture_default_str();
  fit_cmd->add_option("--tol", fit_opts.tol, "Relative convergence tolerance")
      ->capture_default_str();
  fit_cmd->add_option("--init-scale", fit_opts.init_scale,
                      "Std. dev. of initial primitive entries")
      ->capture_default_str();
  fit_cmd->add_option("--restarts", fit_opts.restarts,
                      "Random restarts (default 1, or 5 with --learn-composition)");
  fit_cmd->add_option("--out", fit_opts.out, "Report path (stdout if omitted)");

  std::string report_path;
  std::string eval_dataset;
  auto* eval_cmd =
      app.add_subcommand("eval", "Re-evaluate a saved report on a dataset");
  eval_cmd->add_option("report", report_path, "Report file")->required();
  eval_cmd->add_option("dataset", eval_dataset, "Dataset file")->required();

  std::string deriv_a;
  std::string deriv_b;
  auto* edit_cmd =
      app.add_subcommand("editdist", "Tree edit distance between derivations");
  edit_cmd->add_option("first", deriv_a)->required();
  edit_cmd->add_option("second", deriv_b)->required();

  std::string topo_dataset;
  std::string topo_distance = "l1";
  bool topo_rank = false;
  auto* topo_cmd = app.add_subcommand("topo", "Topographic similarity");
  topo_cmd->add_option("dataset", topo_dataset, "Dataset file")->required();
  topo_cmd->add_option("--distance", topo_distance, "cosine | l1 | squared_l2")
      ->capture_default_str();
  topo_cmd->add_flag("--rank", topo_rank, "Spearman instead of Pearson");

  GenOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a dataset");
  gen_cmd->add_option("--kind", gen_opts.kind, "compositional | random | fig5")
      ->capture_default_str();
  gen_cmd->add_option("--primitives", gen_opts.primitives)->capture_default_str();
  gen_cmd->add_option("--dim", gen_opts.dim, "Vector dimension")
      ->capture_default_str();
  gen_cmd->add_option("--length", gen_opts.length, "Code length (code shape)");
  gen_cmd->add_option("--vocab", gen_opts.vocab, "Code vocabulary (code shape)");
  gen_cmd->add_option("--min-depth", gen_opts.min_depth)->capture_default_str();
  gen_cmd->add_option("--max-depth", gen_opts.max_depth)->capture_default_str();
  gen_cmd->add_option("--records", gen_opts.records)->capture_default_str();
  gen_cmd->add_option("--noise", gen_opts.noise, "Gaussian noise std. dev.")
      ->capture_default_str();
  gen_cmd->add_option("--composition", gen_opts.composition, "additive | linear")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_opts.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen_opts.out,
                      "Output file (directory for fig5; stdout if omitted)");

  std::string gc_composition = "additive";
  std::string gc_distance = "squared_l2";
  std::size_t gc_trials = 100;
  std::uint64_t gc_seed = 0;
  double gc_threshold = 1e-4;
  auto* gc_cmd = app.add_subcommand(
      "gradcheck", "Compare analytic gradients with finite differences");
  gc_cmd->add_option("--composition", gc_composition)->capture_default_str();
  gc_cmd->add_option("--distance", gc_distance)->capture_default_str();
  gc_cmd->add_option("--trials", gc_trials)->capture_default_str();
  gc_cmd->add_option("--seed", gc_seed)->capture_default_str();
  gc_cmd->add_option("--threshold", gc_threshold)->capture_default_str();

  std::vector<const char*> argv{"tre"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_opts, out);
    if (*eval_cmd) return cmd_eval(report_path, eval_dataset, out);
    if (*edit_cmd) return cmd_editdist(deriv_a, deriv_b, out);
    if (*topo_cmd) return cmd_topo(topo_dataset, topo_distance, topo_rank, out);
    if (*gen_cmd) return cmd_gen(gen_opts, out);
    if (*gc_cmd) {
      return cmd_gradcheck(gc_composition, gc_distance, gc_trials, gc_seed,
                           gc_threshold, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace tre::cli
