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

#ifndef TRE_IO_HPP_
#define TRE_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tre/dataset.hpp"
#include "tre/solver.hpp"
#include "tre/space.hpp"

// Line-delimited dataset files and JSON fit reports.
//
// Dataset file: the first non-blank line is a header object
//   {"shape": {"dim": 16}}
//   {"shape": {"length": 4, "vocab": 16, "alphabet": "jopabc..."}}
// and every following line is one record
//   {"id": "r0", "derivation": "(a b)", "repr": [0.1, ...]}
//   {"id": "r0", "derivation": "(a b)", "tokens": "jjjj"}
// with exactly one of "repr" (flattened row-major) or "tokens" (code shapes
// with an alphabet only).
namespace tre::io {

struct DatasetFile {
  Dataset dataset;
  std::optional<std::string> alphabet;
};

// Throws ParseError with the 1-based line number.
DatasetFile read_dataset(std::istream& in);
DatasetFile read_dataset_file(const std::string& path);

// Records whose code matrix is one-hot are written as tokens when an
// alphabet is supplied; everything else is written as "repr".
void write_dataset(std::ostream& out, const Dataset& dataset,
                   const std::optional<std::string>& alphabet = std::nullopt);
void write_dataset_file(const std::string& path, const Dataset& dataset,
                        const std::optional<std::string>& alphabet = std::nullopt);

// Pretty-printed JSON: config echo, aggregate, per-datum scores, learned
// primitives, composition parameters and optimizer diagnostics. Numbers are
// written in shortest round-trip form.
std::string format_report(const TreReport& report, const FitConfig& config,
                          std::string_view dataset_path);

struct LoadedReport {
  PrimitiveTable table;
  Composition composition;
  Distance distance;
  double aggregate;
  std::vector<std::pair<std::string, double>> per_datum;
};

// Throws ParseError.
LoadedReport parse_report(std::string_view text);

}  // namespace tre::io

#endif  // TRE_IO_HPP_
