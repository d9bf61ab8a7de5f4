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

#include "tre/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tre/datagen.hpp"
#include "tre/error.hpp"

namespace tre::io {
namespace {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

struct Header {
  Shape shape;
  std::optional<std::string> alphabet;
};

[[noreturn]] void fail(const std::string& what, std::size_t line) {
  throw ParseError("line " + std::to_string(line) + ": " + what, 0, line);
}

template <typename Json>
std::size_t positive_field(const Json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned() ||
      obj[key].template get<std::uint64_t>() == 0) {
    fail(std::string("header field '") + key + "' must be a positive integer",
         line);
  }
  return obj[key].template get<std::size_t>();
}

template <typename Json>
Header parse_header(const Json& j, std::size_t line) {
  if (!j.is_object() || !j.contains("shape") || !j["shape"].is_object()) {
    fail("header must be an object with a 'shape' object", line);
  }
  const Json& s = j["shape"];
  if (s.contains("dim")) {
    return {Shape::vector(positive_field(s, "dim", line)), std::nullopt};
  }
  const std::size_t length = positive_field(s, "length", line);
  const std::size_t vocab = positive_field(s, "vocab", line);
  std::optional<std::string> alphabet;
  if (s.contains("alphabet")) {
    if (!s["alphabet"].is_string()) fail("'alphabet' must be a string", line);
    alphabet = s["alphabet"].template get<std::string>();
    if (alphabet->size() != vocab) {
      fail("alphabet has " + std::to_string(alphabet->size()) +
               " symbols, vocab is " + std::to_string(vocab),
           line);
    }
    if (std::unordered_set<char>(alphabet->begin(), alphabet->end()).size() !=
        alphabet->size()) {
      fail("alphabet repeats a symbol", line);
    }
  }
  return {Shape::code_matrix(length, vocab), alphabet};
}

Record parse_record(const json& j, const Header& header, std::size_t line) {
  if (!j.is_object()) fail("record must be a JSON object", line);
  if (!j.contains("id") || !j["id"].is_string()) {
    fail("record needs a string 'id'", line);
  }
  if (!j.contains("derivation") || !j["derivation"].is_string()) {
    fail("record needs a string 'derivation'", line);
  }
  const bool has_repr = j.contains("repr");
  const bool has_tokens = j.contains("tokens");
  if (has_repr == has_tokens) {
    fail("record needs exactly one of 'repr' or 'tokens'", line);
  }

  std::optional<Derivation> derivation;
  try {
    derivation = parse_derivation(j["derivation"].get<std::string>());
  } catch (const ParseError& e) {
    fail(std::string("bad derivation: ") + e.what() + " at offset " +
             std::to_string(e.offset()),
         line);
  }

  std::optional<Representation> repr;
  if (has_repr) {
    const json& values = j["repr"];
    if (!values.is_array()) fail("'repr' must be an array of numbers", line);
    std::vector<double> v;
    v.reserve(values.size());
    for (const auto& x : values) {
      if (!x.is_number()) fail("'repr' must be an array of numbers", line);
      v.push_back(x.get<double>());
    }
    if (v.size() != header.shape.size()) {
      fail("'repr' has " + std::to_string(v.size()) + " values, shape " +
               header.shape.to_string() + " needs " +
               std::to_string(header.shape.size()),
           line);
    }
    try {
      repr.emplace(header.shape, std::move(v));
    } catch (const Error& e) {
      fail(e.what(), line);
    }
  } else {
    if (header.shape.kind() != Shape::Kind::code_matrix || !header.alphabet) {
      fail("'tokens' requires a code shape with an alphabet", line);
    }
    if (!j["tokens"].is_string()) fail("'tokens' must be a string", line);
    try {
      repr = encode_message(j["tokens"].get<std::string>(), *header.alphabet,
                            header.shape.rows());
    } catch (const ParseError& e) {
      fail(e.what(), line);
    }
  }
  return Record{j["id"].get<std::string>(), *std::move(repr), *std::move(derivation)};
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

ordered_json shape_json(const Shape& shape,
                        const std::optional<std::string>& alphabet) {
  ordered_json s;
  if (shape.kind() == Shape::Kind::vector) {
    s["dim"] = shape.rows();
  } else {
    s["length"] = shape.rows();
    s["vocab"] = shape.cols();
    if (alphabet) s["alphabet"] = *alphabet;
  }
  return s;
}

std::optional<std::string> as_tokens(const Representation& r,
                                     const std::string& alphabet) {
  std::string tokens;
  for (std::size_t row = 0; row < r.shape().rows(); ++row) {
    std::optional<std::size_t> hot;
    for (std::size_t col = 0; col < r.shape().cols(); ++col) {
      const double v = r.at(row, col);
      if (v == 1.0 && !hot) {
        hot = col;
      } else if (v != 0.0) {
        return std::nullopt;
      }
    }
    if (!hot) return std::nullopt;
    tokens += alphabet[*hot];
  }
  return tokens;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const ordered_json& j, std::size_t n) {
  Matrix m = Matrix::zeros(n, n);
  if (!j.is_array() || j.size() != n) {
    throw ParseError("composition matrix must be " + std::to_string(n) + "x" +
                         std::to_string(n),
                     0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) {
      throw ParseError("composition matrix row " + std::to_string(i) +
                           " has the wrong length",
                       0);
    }
    for (std::size_t k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

}  // namespace

DatasetFile read_dataset(std::istream& in) {
  std::optional<Header> header;
  std::vector<Record> records;
  std::unordered_set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (is_blank(text)) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what(), line);
    }
    if (!header) {
      header = parse_header(j, line);
      continue;
    }
    Record r = parse_record(j, *header, line);
    if (!ids.insert(r.id).second) fail("duplicate record id '" + r.id + "'", line);
    records.push_back(std::move(r));
  }
  if (!header) fail("dataset file has no header line", line + 1);
  if (records.empty()) fail("dataset file has no records", line + 1);
  return {Dataset(header->shape, std::move(records)), header->alphabet};
}

DatasetFile read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file '" + path + "'", 0);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& dataset,
                   const std::optional<std::string>& alphabet) {
  if (alphabet && alphabet->size() != dataset.shape().cols()) {
    throw ShapeError("alphabet size does not match the vocabulary");
  }
  ordered_json header;
  header["shape"] = shape_json(dataset.shape(), alphabet);
  out << header.dump() << '\n';
  const bool code = dataset.shape().kind() == Shape::Kind::code_matrix;
  for (const auto& r : dataset.records()) {
    ordered_json j;
    j["id"] = r.id;
    j["derivation"] = format_derivation(r.derivation);
    std::optional<std::string> tokens;
    if (code && alphabet) tokens = as_tokens(r.repr, *alphabet);
    if (tokens) {
      j["tokens"] = *tokens;
    } else {
      j["repr"] = std::vector<double>(r.repr.values().begin(), r.repr.values().end());
    }
    out << j.dump() << '\n';
  }
}

void write_dataset_file(const std::string& path, const Dataset& dataset,
                        const std::optional<std::string>& alphabet) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_dataset(out, dataset, alphabet);
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string format_report(const TreReport& report, const FitConfig& config,
                          std::string_view dataset_path) {
  ordered_json j;
  ordered_json cfg;
  cfg["dataset"] = std::string(dataset_path);
  cfg["distance"] = std::string(distance_name(config.distance));
  cfg["composition"] = std::string(composition_name(config.composition.kind()));
  cfg["learn_composition"] = config.learn_composition;
  cfg["learning_rate"] = config.learning_rate;
  cfg["steps"] = config.steps;
  cfg["seed"] = config.seed;
  cfg["init_scale"] = config.init_scale;
  cfg["convergence_tol"] = config.convergence_tol;
  cfg["restarts"] = config.effective_restarts();
  j["config"] = std::move(cfg);

  j["aggregate"] = report.aggregate;
  ordered_json per = ordered_json::object();
  for (const auto& [id, value] : report.per_datum) per[id] = value;
  j["per_datum"] = std::move(per);

  j["shape"] = shape_json(report.table.shape(), std::nullopt);
  ordered_json prims = ordered_json::object();
  for (const auto& [symbol, value] : report.table.entries()) {
    prims[symbol.name()] =
        std::vector<double>(value.values().begin(), value.values().end());
  }
  j["primitives"] = std::move(prims);

  ordered_json comp;
  comp["kind"] = std::string(composition_name(report.composition.kind()));
  if (report.composition.kind() == Composition::Kind::linear) {
    comp["learned"] = report.table.composition_params().has_value();
    comp["a"] = matrix_json(report.composition.linear_params().a);
    comp["b"] = matrix_json(report.composition.linear_params().b);
  }
  j["composition"] = std::move(comp);

  ordered_json diag;
  diag["steps_run"] = report.steps_run;
  diag["final_objective"] = report.final_objective;
  diag["converged"] = report.converged;
  diag["best_restart"] = report.best_restart;
  ordered_json trace = ordered_json::array();
  for (const auto& [step, obj] : report.objective_trace) {
    trace.push_back(ordered_json::array({step, obj}));
  }
  diag["objective_trace"] = std::move(trace);
  diag["messages"] = report.diagnostics;
  j["diagnostics"] = std::move(diag);
  return j.dump(2) + "\n";
}

LoadedReport parse_report(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what(), e.byte);
  }
  try {
    const Header header = parse_header(j, 0);
    PrimitiveTable table(header.shape);
    for (const auto& [name, values] : j.at("primitives").items()) {
      table.set(Symbol(name),
                Representation(header.shape, values.get<std::vector<double>>()));
    }
    const ordered_json& comp = j.at("composition");
    const std::string kind = comp.at("kind").get<std::string>();
    Composition composition = Composition::additive();
    if (kind == "linear") {
      LinearParams params{matrix_from_json(comp.at("a"), header.shape.rows()),
                          matrix_from_json(comp.at("b"), header.shape.rows())};
      if (comp.value("learned", false)) table.set_composition_params(params);
      composition = Composition::linear(std::move(params));
    } else if (kind != "additive") {
      throw ParseError("report composition '" + kind + "' cannot be reloaded", 0);
    }
    std::vector<std::pair<std::string, double>> per;
    for (const auto& [id, value] : j.at("per_datum").items()) {
      per.emplace_back(id, value.get<double>());
    }
    return {std::move(table), std::move(composition),
            parse_distance(j.at("config").at("distance").get<std::string>()),
            j.at("aggregate").get<double>(), std::move(per)};
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0);
  }
}

}  // namespace tre::io
